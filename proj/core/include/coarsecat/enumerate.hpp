#pragma once

// Exhaustive enumeration of small spaces, morphisms and actions.

#include <cstddef>
#include <functional>
#include <vector>

#include "coarsecat/space.hpp"

namespace coarsecat {

inline constexpr std::size_t kDefaultSpaceCap = 4;
inline constexpr std::size_t kDefaultMorphismCap = std::size_t{1} << 22;

// Every equivalence relation on the carrier, in restricted-growth-string
// order.
std::vector<Relation> enumerate_partitions(const Carrier& c);

// Every E-saturated subset, ordered by the bitmask of chosen classes.
std::vector<PointSet> saturated_regions(const Relation& e);

// All normal-form spaces on `c`: each partition with each saturated region.
std::vector<GBCSpace> enumerate_spaces(const Carrier& c, std::size_t cap = kDefaultSpaceCap);
// Same on Carrier::range(n).
std::vector<GBCSpace> enumerate_spaces(std::size_t n, std::size_t cap = kDefaultSpaceCap);
// Sizes 0..n concatenated.
std::vector<GBCSpace> enumerate_spaces_up_to(std::size_t n, std::size_t cap = kDefaultSpaceCap);

// Calls `visit` with the image vector of every morphism dom -> cod, in
// lexicographic order of images. Returning false from `visit` stops the walk.
// Throws CapExceeded when |cod|^|dom| exceeds `cap`.
void for_each_morphism(const GBCSpace& dom, const GBCSpace& cod,
                       const std::function<bool(const std::vector<std::size_t>&)>& visit,
                       std::size_t cap = kDefaultMorphismCap);

std::vector<Morphism> enumerate_morphisms(const GBCSpace& dom, const GBCSpace& cod,
                                          std::size_t cap = kDefaultMorphismCap);
std::size_t count_morphisms(const GBCSpace& dom, const GBCSpace& cod,
                            std::size_t cap = kDefaultMorphismCap);

// Automorphisms of the underlying space ignoring any action: permutations
// preserving E and Xb.
std::vector<SetMap> automorphisms(const GBCSpace& x);

// The space together with every one-generator action by its automorphisms
// (including the trivial one).
std::vector<GBCSpace> with_cyclic_actions(const GBCSpace& x);

}  // namespace coarsecat
