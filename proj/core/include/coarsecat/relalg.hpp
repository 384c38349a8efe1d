#pragma once

// Finite relation algebra over a fixed, ordered carrier. Relations are dense
// bit matrices indexed by carrier position; every operation is pure.

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "coarsecat/bits.hpp"

namespace coarsecat {

using Pair = std::pair<std::size_t, std::size_t>;

// An ordered list of distinct point names. Two carriers are the same carrier
// iff they list the same names in the same order.
class Carrier {
 public:
  Carrier();
  explicit Carrier(std::vector<std::string> elements);

  // Carrier "0", "1", ..., "n-1".
  static Carrier range(std::size_t n);

  std::size_t size() const noexcept;
  bool empty() const noexcept { return size() == 0; }
  const std::string& name(std::size_t i) const;
  std::span<const std::string> elements() const noexcept;

  bool contains(std::string_view name) const;
  // Throws InvalidArgument for unknown names.
  std::size_t index(std::string_view name) const;

  friend bool operator==(const Carrier& a, const Carrier& b);

 private:
  struct Data;
  std::shared_ptr<const Data> data_;
};

// Cartesian product; points are named "(a,b,...)" and ordered
// lexicographically (last factor fastest). The empty product is the single
// point "()".
Carrier product_carrier(std::span<const Carrier> factors);
// Decodes a product point index into one index per factor.
std::vector<std::size_t> product_coordinates(std::span<const Carrier> factors, std::size_t index);
// Disjoint union; the point x of summand i is named "i:x".
Carrier coproduct_carrier(std::span<const Carrier> summands);

// Throws CarrierMismatch unless `a == b`.
void require_same_carrier(const Carrier& a, const Carrier& b, std::string_view op);

class PointSet {
 public:
  PointSet();
  explicit PointSet(Carrier carrier);
  PointSet(Carrier carrier, BitVector members);
  PointSet(Carrier carrier, std::initializer_list<std::size_t> members);

  static PointSet full(Carrier carrier);
  static PointSet from_names(Carrier carrier, std::span<const std::string> names);

  const Carrier& carrier() const noexcept { return carrier_; }
  const BitVector& bits() const noexcept { return members_; }

  bool contains(std::size_t i) const noexcept { return members_.test(i); }
  void insert(std::size_t i) noexcept { members_.set(i); }
  void erase(std::size_t i) noexcept { members_.reset(i); }

  std::size_t size() const noexcept { return members_.count(); }
  bool empty() const noexcept { return members_.none(); }
  bool is_full() const noexcept { return members_.all(); }
  std::vector<std::size_t> indices() const { return members_.indices(); }
  std::vector<std::string> names() const;

  friend bool operator==(const PointSet& a, const PointSet& b);
  friend std::strong_ordering operator<=>(const PointSet& a, const PointSet& b);

 private:
  Carrier carrier_;
  BitVector members_;
};

class Relation {
 public:
  Relation();
  explicit Relation(Carrier carrier);
  Relation(Carrier carrier, std::span<const Pair> pairs);
  Relation(Carrier carrier, std::initializer_list<Pair> pairs);

  static Relation diagonal(Carrier carrier);
  static Relation full(Carrier carrier);
  // Full relation on `s` (all pairs of members of s).
  static Relation square(const PointSet& s);

  const Carrier& carrier() const noexcept { return carrier_; }
  std::size_t points() const noexcept { return n_; }

  bool contains(std::size_t x, std::size_t y) const noexcept {
    return (bits_[x * stride_ + y / kWordBits] >> (y % kWordBits)) & 1U;
  }
  void insert(std::size_t x, std::size_t y) noexcept {
    bits_[x * stride_ + y / kWordBits] |= Word{1} << (y % kWordBits);
  }
  void erase(std::size_t x, std::size_t y) noexcept {
    bits_[x * stride_ + y / kWordBits] &= ~(Word{1} << (y % kWordBits));
  }

  // {y : (x, y) in this}.
  BitVector row(std::size_t x) const;
  std::span<const Word> row_words(std::size_t x) const noexcept {
    return {bits_.data() + x * stride_, stride_};
  }
  std::span<Word> row_words(std::size_t x) noexcept { return {bits_.data() + x * stride_, stride_}; }

  std::size_t size() const noexcept;
  bool empty() const noexcept;
  std::vector<Pair> pairs() const;

  bool is_reflexive() const noexcept;
  bool is_symmetric() const noexcept;
  bool is_transitive() const;
  bool is_equivalence() const { return is_reflexive() && is_symmetric() && is_transitive(); }

  friend bool operator==(const Relation& a, const Relation& b);
  friend std::strong_ordering operator<=>(const Relation& a, const Relation& b);
  std::size_t hash() const noexcept;

 private:
  Carrier carrier_;
  std::size_t n_ = 0;
  std::size_t stride_ = 0;
  std::vector<Word> bits_;
};

struct RelationHash {
  std::size_t operator()(const Relation& r) const noexcept { return r.hash(); }
};

// {(x,y) : (y,x) in U}
Relation inverse(const Relation& u);
// {(x,y) : exists z, (x,z) in U and (z,y) in V}
Relation compose(const Relation& u, const Relation& v);
// U[B] = {x : exists b in B, (x,b) in U}
PointSet thicken(const Relation& u, const PointSet& b);
// Smallest equivalence relation containing every generator.
Relation equivalence_closure(const Carrier& carrier, std::span<const Relation> generators);

Relation unite(const Relation& a, const Relation& b);
Relation intersect(const Relation& a, const Relation& b);
bool is_subset(const Relation& a, const Relation& b);

PointSet unite(const PointSet& a, const PointSet& b);
PointSet intersect(const PointSet& a, const PointSet& b);
PointSet difference(const PointSet& a, const PointSet& b);
PointSet complement(const PointSet& a);
bool is_subset(const PointSet& a, const PointSet& b);

// Carrier made of the members of `s`, in carrier order.
Carrier sub_carrier(const PointSet& s);
// R ∩ (S×S), re-indexed over sub_carrier(S).
Relation restrict(const Relation& r, const PointSet& s);

// A total function between two carriers.
class SetMap {
 public:
  SetMap() = default;
  SetMap(Carrier dom, Carrier cod, std::vector<std::size_t> images);

  static SetMap identity(const Carrier& c);
  // sub_carrier(s) -> s.carrier()
  static SetMap inclusion(const PointSet& s);
  static SetMap constant(const Carrier& dom, const Carrier& cod, std::size_t value);

  const Carrier& dom() const noexcept { return dom_; }
  const Carrier& cod() const noexcept { return cod_; }
  std::size_t operator()(std::size_t x) const noexcept { return images_[x]; }
  std::span<const std::size_t> images() const noexcept { return images_; }

  bool is_injective() const;
  bool is_surjective() const;
  bool is_bijective() const { return is_injective() && is_surjective(); }

  friend bool operator==(const SetMap& a, const SetMap& b);

 private:
  Carrier dom_;
  Carrier cod_;
  std::vector<std::size_t> images_;
};

// g ∘ f
SetMap compose(const SetMap& g, const SetMap& f);
// Inverse of a bijection; throws InvalidArgument otherwise.
SetMap inverse(const SetMap& f);

PointSet image(const SetMap& f, const PointSet& s);
PointSet preimage(const SetMap& f, const PointSet& s);
// (f×f)(U)
Relation image(const SetMap& f, const Relation& u);
// (f×f)^{-1}(V)
Relation preimage(const SetMap& f, const Relation& v);

}  // namespace coarsecat
