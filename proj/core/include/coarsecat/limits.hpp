#pragma once

// Limits and colimits of finite diagrams, existence in the classical
// subcategory, and the colimit admissibility criterion.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "coarsecat/diagram.hpp"

namespace coarsecat {

struct LimitResult {
  GBCSpace space;
  Cone cone;
};

struct ColimitResult {
  GBCSpace space;
  Cocone cocone;
};

enum class Side { Limit, Colimit };

// Carrier: cartesian product. E: componentwise. Xb: points with at least one
// bounded coordinate. The empty product is one unbounded point.
LimitResult product(std::span<const GBCSpace> factors);
// Carrier: disjoint union, E and Xb blockwise.
ColimitResult coproduct(std::span<const GBCSpace> summands);

// Subspace {x : f(x) = g(x)} of the common domain.
LimitResult equalizer(const Morphism& f, const Morphism& g);
// Quotient of the codomain by the relation generated by f(x) ~ g(x).
ColimitResult coequalizer(const Morphism& f, const Morphism& g);

// Commuting tuples inside the product, with the subspace structure.
LimitResult limit(const Diagram& d);
// Set colimit (classes named by their least member of the coproduct) with
// E generated by the leg images and Xb = {q : g_j^{-1}(E[q]) ⊆ Xb_j for all j}.
ColimitResult colimit(const Diagram& d);

// Quotient of `y` by an equivalence relation on its carrier. E is generated
// by the image of E_y; a class is bounded when the preimage of its E-class is.
// Classes are named by their least member.
struct Quotient {
  GBCSpace space;
  Morphism projection;
};
Quotient quotient(const GBCSpace& y, const Relation& identify);

// The unique set-level mediator into a constructed limit / out of a
// constructed colimit, or nothing if the cone does not factor through the
// underlying sets. The result is not validated as a morphism.
std::optional<SetMap> limit_mediator(const LimitResult& l, const Cone& c);
std::optional<SetMap> colimit_mediator(const ColimitResult& l, const Cocone& c);

struct ClassicalExistence {
  bool exists = false;
  // The (co)limit computed in the generalized category.
  GBCSpace object;
  // Unbounded points of `object` when it is not locally bounded.
  std::vector<std::size_t> unbounded_points;
};
// A diagram of classical spaces has a (co)limit in the classical category
// exactly when its generalized (co)limit is locally bounded. Throws
// NonClassicalInput when some object is not classical.
ClassicalExistence exists_in_classical(const Diagram& d, Side side);

struct AdmissibilityWitness {
  // Point of the set colimit whose thickening escapes.
  std::size_t point = 0;
  // Object whose leg pulls the thickening back to an unbounded set.
  std::size_t object = 0;
  // Objects whose maximal entourages were used, in application order.
  std::vector<std::size_t> chain;
  // f_k^{-1} of the thickened set, in the carrier of object k.
  PointSet preimage;
  // An unbounded point of object k inside the preimage.
  std::size_t escaping = 0;
};

struct Admissibility {
  bool admissible = true;
  std::optional<AdmissibilityWitness> witness;
  // Carrier of the set colimit the criterion was evaluated on.
  Carrier colimit_carrier;
  // Largest number of thickening rounds needed before stabilizing.
  std::size_t rounds = 0;
};
// Evaluates the criterion on the set colimit X with legs f_i: for every b in
// X and every object k, f_k^{-1} of the union of all iterated thickenings of
// {b} by (f_i x f_i)(E_i) must be bounded in object k.
Admissibility admissible(const Diagram& d);

struct PreservationVerdict {
  bool ok = false;
  std::string reason;
};
// For a classical diagram whose classical (co)limit exists, checks that the
// comparison between the classical (co)limit and the generalized one is an
// isomorphism, and that the classical candidate is universal among classical
// test objects of size <= test_cap.
PreservationVerdict preservation_test(const Diagram& d, Side side, std::size_t test_cap = 3);

}  // namespace coarsecat
