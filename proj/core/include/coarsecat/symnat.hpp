#pragma once

// Structures on the carrier ℕ from a closed catalog, eventually affine maps
// between them, and the colimit questions the catalog can decide.
//
// Bornologies: Fin (finite sets), All (every set), Triv ({∅}), FinCap(F)
// (subsets of a finite F). Coarse structures: Diag (subsets of Δ), Full
// (every relation), Band (generated by U_r = {|x-y| < r}), FinGen(R)
// (generated by a finite relation R; its maximal entourage is the
// equivalence closure E_R of R, which differs from Δ on finitely many points).

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "coarsecat/diagram.hpp"
#include "coarsecat/semilinear.hpp"

namespace coarsecat {

enum class BornTag { Fin, All, Triv, FinCap };
enum class CoarseTag { Diag, Full, Band, FinGen };

const char* to_string(BornTag t);
const char* to_string(CoarseTag t);

using NatPair = std::pair<Nat, Nat>;

class SymSpace {
 public:
  // Canonicalizes FinCap(∅) to Triv and FinGen with no off-diagonal pairs
  // to Diag, then checks the pair against the compatibility table
  // (IncompatibleStructures otherwise).
  SymSpace(BornTag bornology, CoarseTag coarse, std::vector<Nat> f = {}, std::vector<NatPair> r = {});

  BornTag bornology() const noexcept { return born_; }
  CoarseTag coarse() const noexcept { return coarse_; }
  // FinCap region, ascending.
  const std::vector<Nat>& f() const noexcept { return f_; }
  // Off-diagonal pairs of E_R, sorted.
  const std::vector<NatPair>& r() const noexcept { return r_; }
  // Classes of E_R with more than one point.
  const std::vector<std::vector<Nat>>& classes() const noexcept { return classes_; }

  bool classical() const noexcept { return born_ == BornTag::Fin || born_ == BornTag::All; }
  bool is_bounded(const SemilinearSet& s) const;
  // E_R[S]; only meaningful for FinGen.
  SemilinearSet thicken_fingen(const SemilinearSet& s) const;
  // Largest point mentioned by F or R, plus one.
  Nat support_bound() const;

  // "(Fin, Band)", "(FinCap{0,1}, FinGen{(0,1)})".
  std::string describe() const;

  friend bool operator==(const SymSpace& a, const SymSpace& b) = default;

 private:
  BornTag born_;
  CoarseTag coarse_;
  std::vector<Nat> f_;
  std::vector<NatPair> r_;
  std::vector<std::vector<Nat>> classes_;
};

// Table on [0, N) followed by x ↦ slope·x + offset for x >= N.
class SymMap {
 public:
  SymMap() = default;
  SymMap(std::vector<Nat> exceptions, Nat slope, std::int64_t offset);

  static SymMap identity() { return SymMap({}, 1, 0); }
  static SymMap constant(Nat value) { return SymMap({}, 0, static_cast<std::int64_t>(value)); }

  Nat operator()(Nat x) const;
  Nat threshold() const noexcept { return exceptions_.size(); }
  const std::vector<Nat>& exceptions() const noexcept { return exceptions_; }
  Nat slope() const noexcept { return slope_; }
  std::int64_t offset() const noexcept { return offset_; }

  bool is_identity() const noexcept { return exceptions_.empty() && slope_ == 1 && offset_ == 0; }
  // Permutation of [0, N) followed by the identity.
  bool is_eventual_identity_permutation() const;

  SemilinearSet image(const SemilinearSet& s) const;
  SemilinearSet preimage(const SemilinearSet& s) const;

  friend bool operator==(const SymMap& a, const SymMap& b) = default;

 private:
  std::vector<Nat> exceptions_;
  Nat slope_ = 1;
  std::int64_t offset_ = 0;
};

struct SymMorphismVerdict {
  bool proper = false;
  bool controlled = false;
  std::string reason;
  bool ok() const noexcept { return proper && controlled; }
};
SymMorphismVerdict validate_sym_morphism(const SymSpace& dom, const SymSpace& cod, const SymMap& f);

struct SymArrow {
  std::size_t src = 0;
  std::size_t dst = 0;
  SymMap map;
};

class SymDiagram {
 public:
  SymDiagram() = default;
  // Every arrow must validate (NotAMorphism otherwise).
  SymDiagram(std::vector<SymSpace> objects, std::vector<SymArrow> arrows,
             std::vector<std::string> names = {});

  std::size_t size() const noexcept { return objects_.size(); }
  const std::vector<SymSpace>& objects() const noexcept { return objects_; }
  const SymSpace& object(std::size_t i) const { return objects_.at(i); }
  const std::vector<SymArrow>& arrows() const noexcept { return arrows_; }
  const std::vector<std::string>& names() const noexcept { return names_; }
  bool connected() const;

 private:
  std::vector<SymSpace> objects_;
  std::vector<SymArrow> arrows_;
  std::vector<std::string> names_;
};

// Colimit of a connected diagram whose arrows are all the identity of ℕ:
// the join of the coarse structures with the largest bornology making every
// identity leg proper. UnsupportedCombination for other diagrams.
SymSpace sym_pushout(const SymDiagram& d);

struct SymAdmissibilityWitness {
  // Point of the set colimit.
  Nat point = 0;
  std::size_t object = 0;
  std::vector<std::size_t> chain;
  // Pre-image in object `object` of the thickened set.
  SemilinearSet preimage;
};

struct SymAdmissibility {
  bool admissible = true;
  std::optional<SymAdmissibilityWitness> witness;
};
// Evaluates the admissibility criterion for connected diagrams whose arrows
// are permutations of an initial segment followed by the identity
// (UnsupportedDiagram otherwise). Thickenings are taken over all entourages
// at once: Diag fixes a set, FinGen adds E_R-classes, Band and Full reach
// everything from a nonempty set, and only Full can produce an infinite set
// from a finite one.
SymAdmissibility sym_admissible(const SymDiagram& d);

// Restriction to the carrier {0, ..., n}. Band and Full become the full
// relation, FinGen the restriction of E_R, Fin and All the full region.
GBCSpace truncate(const SymSpace& x, Nat n);
// Throws InvalidArgument when the map leaves {0, ..., m}.
SetMap truncate(const SymMap& f, Nat n, Nat m);
Diagram truncate(const SymDiagram& d, Nat n);

// The span ℕ_max,max ← ℕ_min,max → ℕ_min,min of identity maps, which has no
// pushout among classical spaces.
SymDiagram exa_N();
// The same span, whose generalized pushout is ℕ_max,∅.
SymDiagram ex_PO();
SymSpace n_min_max();
SymSpace n_max_max();
SymSpace n_min_min();
SymSpace n_max_empty();

}  // namespace coarsecat
