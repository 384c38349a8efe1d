#pragma once

// Ultimately periodic subsets of ℕ.
//
// Canonical form: a finite part below a threshold T and a residue set modulo
// a period p describing membership of every x >= T. Both T and p are
// minimal, so equal sets have equal representations.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace coarsecat {

using Nat = std::uint64_t;

class SemilinearSet {
 public:
  // The empty set.
  SemilinearSet();

  static SemilinearSet all();
  static SemilinearSet finite(const std::vector<Nat>& members);
  // {start, start + period, start + 2·period, ...}; period 0 means {start}.
  static SemilinearSet progression(Nat start, Nat period);
  // [lo, hi)
  static SemilinearSet interval(Nat lo, Nat hi);
  // {x >= lo}
  static SemilinearSet at_least(Nat lo);
  // The set whose membership is given by `member`, which must be periodic
  // with the given period from `threshold` on.
  static SemilinearSet from_predicate(Nat threshold, Nat period,
                                      const std::function<bool(Nat)>& member);

  bool contains(Nat x) const;
  bool empty() const noexcept { return finite_.empty() && !tail_nonempty(); }
  bool is_finite() const noexcept { return !tail_nonempty(); }
  bool is_all() const;
  std::optional<Nat> min() const;
  // Largest member of a finite set.
  std::optional<Nat> max() const;
  // Members below `bound`, ascending.
  std::vector<Nat> members_below(Nat bound) const;

  Nat threshold() const noexcept { return threshold_; }
  Nat period() const noexcept { return period_; }
  const std::vector<Nat>& finite_part() const noexcept { return finite_; }
  // Residues r < period with every x >= threshold, x ≡ r, a member.
  std::vector<Nat> residues() const;

  friend SemilinearSet unite(const SemilinearSet& a, const SemilinearSet& b);
  friend SemilinearSet intersect(const SemilinearSet& a, const SemilinearSet& b);
  friend SemilinearSet difference(const SemilinearSet& a, const SemilinearSet& b);
  friend SemilinearSet complement(const SemilinearSet& a);
  friend bool is_subset(const SemilinearSet& a, const SemilinearSet& b);
  friend bool operator==(const SemilinearSet& a, const SemilinearSet& b) = default;

  // "∅", "ℕ", "{0,3}", "{1} ∪ {x ≥ 4 : x ≡ 0,2 mod 3}".
  std::string to_string() const;

 private:
  bool tail_nonempty() const noexcept;

  Nat threshold_ = 0;
  Nat period_ = 1;
  // Members below the threshold, ascending.
  std::vector<Nat> finite_;
  // residues_[r] for r < period.
  std::vector<bool> residue_mask_;
};

// Preimage and image under x ↦ slope·x + offset, restricted to x >= from.
SemilinearSet affine_preimage(const SemilinearSet& s, Nat from, Nat slope, std::int64_t offset);
SemilinearSet affine_image(const SemilinearSet& s, Nat from, Nat slope, std::int64_t offset);

}  // namespace coarsecat
