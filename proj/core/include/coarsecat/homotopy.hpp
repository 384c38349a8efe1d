#pragma once

// Closeness, coarse equivalences, flasqueness, big families and excision.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "coarsecat/space.hpp"

namespace coarsecat {

inline constexpr std::size_t kDefaultSearchCap = 5;

// (f(x), g(x)) ∈ E_cod for every x.
bool are_close(const Morphism& f, const Morphism& g);
// The map h(0,x) = f(x), h(1,x) = g(x) on {0,1}_max,max ⊗ dom is a morphism.
bool glued_map_validates(const Morphism& f, const Morphism& g);

struct EquivalenceVerdict {
  bool equivalence = false;
  std::optional<Morphism> inverse;
};
// Searches Hom(cod, dom) for a morphism inverse up to closeness. Throws
// CapExceeded when either carrier has more than `search_cap` points.
EquivalenceVerdict is_equivalence(const Morphism& f, std::size_t search_cap = kDefaultSearchCap);

struct FlasqueVerdict {
  bool flasque = false;
  std::optional<Morphism> witness;
  // First violated condition (1, 2 or 3) of the given witness; 0 otherwise.
  int failed_condition = 0;
  // Smallest k with f^k(X) disjoint from the bounded region.
  std::size_t k = 0;
};
// Conditions on f: close to the identity; the union of (f^k x f^k)(E) is an
// entourage; some iterate image avoids the bounded region. Without a witness
// every self-morphism is tried in lexicographic order (|X| <= search_cap).
FlasqueVerdict is_flasque(const GBCSpace& x, const std::optional<Morphism>& witness = {},
                          std::size_t search_cap = kDefaultSearchCap);

struct BigFamily {
  GBCSpace space;
  std::vector<PointSet> members;
};

struct FamilyVerdict {
  bool ok = false;
  std::string reason;
  // Indices of the members involved in the failure.
  std::vector<std::size_t> members;
};
// Members invariant, filtered, and E[Y_i] contained in some member.
FamilyVerdict validate_big_family(const BigFamily& family);
// Z invariant, the family big, and Z ∪ Y_i = X for some i.
FamilyVerdict validate_complementary_pair(const PointSet& z, const BigFamily& family);

enum class Quantification {
  // Only the maximal entourage E.
  Fast,
  // Every invariant entourage containing the diagonal.
  Exhaustive,
};

// Invariant entourages U with Δ ⊆ U ⊆ E. Throws CapExceeded when E∖Δ splits
// into more than `orbit_cap` pair orbits.
std::vector<Relation> invariant_reflexive_entourages(const GBCSpace& x, std::size_t orbit_cap = 20);

struct NiceVerdict {
  bool nice = false;
  // Entourage U for which A -> U[A] is not a coarse equivalence.
  std::optional<Relation> failing_entourage;
  // For the fast path, a retraction E[A] -> A inverse up to closeness.
  std::optional<SetMap> retraction;
};
// The inclusion A -> U[A] is a coarse equivalence for every invariant
// entourage U ⊇ Δ. Requires A invariant (NonInvariantGenerator).
NiceVerdict is_nice(const GBCSpace& x, const PointSet& a, Quantification q = Quantification::Fast,
                    std::size_t search_cap = kDefaultSearchCap);

struct ExcisionVerdict {
  bool excisive = false;
  // First failing condition (1 cover, 2 thickening, 3 niceness); 0 otherwise.
  int failed_condition = 0;
  // A point violating condition 1 or 2.
  std::optional<std::size_t> point;
  // The entourage U at which condition 2 failed.
  std::optional<Relation> entourage;
};
// Conditions: Y ∪ Z = X; for every U some V with U[Y] ∩ U[Z] ⊆ V[Y∩Z];
// E[Y] ∩ Z nice. Requires Y and Z invariant.
ExcisionVerdict is_coarsely_excisive(const GBCSpace& x, const PointSet& y, const PointSet& z,
                                     Quantification q = Quantification::Fast,
                                     std::size_t search_cap = kDefaultSearchCap);

}  // namespace coarsecat
