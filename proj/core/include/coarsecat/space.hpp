#pragma once

// Finite generalized (equivariant) bornological coarse spaces in normal form.
//
// On a finite carrier every coarse structure is the family of subrelations of
// one equivalence relation E (the maximal entourage), and every generalized
// bornology is the powerset of one region Xb (the bounded points). The pair
// (E, Xb) is therefore a complete description, and membership questions
// reduce to containment. Compatibility is exactly "Xb is a union of
// E-classes".

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "coarsecat/relalg.hpp"

namespace coarsecat {

// A group acting on a carrier, presented by generating permutations.
class GroupAction {
 public:
  GroupAction() = default;
  GroupAction(Carrier carrier, std::vector<SetMap> generators);
  GroupAction(Carrier carrier, const std::vector<std::vector<std::size_t>>& generators);

  // Action with `count` identity generators.
  static GroupAction trivial(const Carrier& carrier, std::size_t count);

  const Carrier& carrier() const noexcept { return carrier_; }
  std::size_t generator_count() const noexcept { return generators_.size(); }
  std::span<const SetMap> generators() const noexcept { return generators_; }

  bool preserves(const PointSet& s) const;
  bool preserves(const Relation& u) const;

  // The Γ-orbit ΓB of a set.
  PointSet orbit(const PointSet& s) const;
  // Orbit partition of the carrier.
  std::vector<PointSet> orbits() const;
  // Orbits of the pairs in `within` under the diagonal action; `within`
  // must be invariant.
  std::vector<Relation> pair_orbits(const Relation& within) const;

  // Every group element, as a permutation, in breadth-first word order.
  // Throws CapExceeded once more than `cap` elements are found.
  std::vector<SetMap> elements(std::size_t cap = 100000) const;

  // Restriction to an invariant subset, over sub_carrier(s).
  GroupAction restrict_to(const PointSet& s) const;

  friend bool operator==(const GroupAction& a, const GroupAction& b);

 private:
  Carrier carrier_;
  std::vector<SetMap> generators_;
};

class GBCSpace {
 public:
  // The empty space.
  GBCSpace();
  // Validates the normal form: E an equivalence relation (InvalidArgument),
  // Xb a union of E-classes (IncompatibleStructures), and the action
  // preserving both (NonInvariantGenerator).
  GBCSpace(Relation max_entourage, PointSet bounded, std::optional<GroupAction> action = {});

  const Carrier& carrier() const noexcept;
  std::size_t size() const noexcept { return carrier().size(); }
  const Relation& max_entourage() const noexcept;
  const PointSet& bounded_region() const noexcept;
  PointSet unbounded_region() const { return complement(bounded_region()); }
  const std::optional<GroupAction>& action() const noexcept;

  // Locally bounded: every point is bounded.
  bool classical() const noexcept { return bounded_region().is_full(); }

  friend bool operator==(const GBCSpace& a, const GBCSpace& b);

 private:
  struct Data;
  std::shared_ptr<const Data> data_;
};

std::string describe(const GBCSpace& x);

GBCSpace from_generators(const Carrier& carrier, std::span<const Relation> coarse_generators,
                         std::span<const PointSet> bounded_generators, bool classical,
                         std::optional<GroupAction> action = {});

// U ∈ C_X, i.e. U ⊆ E.
bool entourage_member(const GBCSpace& x, const Relation& u);
// B ∈ B_X, i.e. B ⊆ Xb.
bool bounded_member(const GBCSpace& x, const PointSet& b);

// Throws NonInvariantGenerator when an action is present and does not
// preserve `s`.
void require_invariant(const GBCSpace& x, const PointSet& s, std::string_view what);

// ---------------------------------------------------------------------------
// Morphisms

struct Violation {
  enum class Kind { NotProper, NotControlled, NotEquivariant };
  Kind kind;
  // NotProper: `point` is an unbounded domain point mapped to the bounded
  // codomain point `image`.
  // NotControlled: (point, other) ∈ E_dom but (f(point), f(other)) ∉ E_cod.
  // NotEquivariant: f(g·point) ≠ g·f(point) for generator `generator`.
  std::size_t point = 0;
  std::size_t other = 0;
  std::size_t image = 0;
  std::size_t generator = 0;

  std::string describe(const GBCSpace& dom, const GBCSpace& cod) const;
};

const char* to_string(Violation::Kind k);

struct MorphismCheck;

class Morphism {
 public:
  const GBCSpace& dom() const noexcept { return dom_; }
  const GBCSpace& cod() const noexcept { return cod_; }
  const SetMap& map() const noexcept { return map_; }
  std::size_t operator()(std::size_t x) const noexcept { return map_(x); }
  // Both ends carry actions and the map commutes with them.
  bool equivariant() const noexcept { return equivariant_; }

  friend bool operator==(const Morphism& a, const Morphism& b) {
    return a.map_ == b.map_ && a.dom_ == b.dom_ && a.cod_ == b.cod_;
  }

 private:
  friend MorphismCheck validate_morphism(const GBCSpace&, const GBCSpace&, SetMap);
  Morphism(GBCSpace dom, GBCSpace cod, SetMap map, bool equivariant)
      : dom_(std::move(dom)), cod_(std::move(cod)), map_(std::move(map)), equivariant_(equivariant) {}

  GBCSpace dom_;
  GBCSpace cod_;
  SetMap map_;
  bool equivariant_ = false;
};

struct MorphismCheck {
  std::optional<Morphism> morphism;
  std::vector<Violation> violations;
  bool ok() const noexcept { return violations.empty(); }
};

// Checks properness (f^{-1}(Xb_cod) ⊆ Xb_dom), controlledness
// ((f×f)(E_dom) ⊆ E_cod) and, when both spaces carry actions, equivariance
// on generators. Reports every violation found.
MorphismCheck validate_morphism(const GBCSpace& dom, const GBCSpace& cod, SetMap map);
// Throws NotAMorphism with the first violation.
Morphism make_morphism(const GBCSpace& dom, const GBCSpace& cod, SetMap map);
// Fast yes/no variant of validate_morphism.
bool is_morphism(const GBCSpace& dom, const GBCSpace& cod, const SetMap& map);

Morphism identity(const GBCSpace& x);
// g ∘ f
Morphism compose(const Morphism& g, const Morphism& f);
// Bijective with a morphism inverse.
bool is_isomorphism(const Morphism& f);

// ---------------------------------------------------------------------------
// Constructors

GBCSpace min_min(const Carrier& c);
// Same as min_min on a finite carrier: minimal and maximal bornology agree.
GBCSpace min_max(const Carrier& c);
GBCSpace max_max(const Carrier& c);
// Maximal coarse structure, trivial bornology {∅}.
GBCSpace max_empty(const Carrier& c);
// One bounded point; the tensor unit.
GBCSpace unit_point();
// One unbounded point; the final object.
GBCSpace final_point();

// Structure induced by an extended metric: points at finite distance are
// coarsely related, every ball is bounded. `distance[i][j] < 0` encodes an
// infinite distance.
GBCSpace metric_space(const Carrier& c, const std::vector<std::vector<double>>& distance);

// E_Y = (f×f)^{-1}(E_X), Xb_Y = f^{-1}(Xb_X). With an action on Y, f must be
// equivariant against X's action.
GBCSpace pullback_structure(const SetMap& f, const GBCSpace& x,
                            std::optional<GroupAction> action = {});
// Subspace structure on A with the restricted action.
GBCSpace subspace(const GBCSpace& x, const PointSet& a);
Morphism subspace_inclusion(const GBCSpace& x, const PointSet& a);

// Tensor product: E componentwise, Xb = Xb_X × Xb_Y, actions componentwise.
GBCSpace tensor(const GBCSpace& x, const GBCSpace& y);

// Componentwise action on product_carrier of the factors' carriers; factors
// without an action are acted on trivially. Empty when no factor has one.
std::optional<GroupAction> product_action(std::span<const GBCSpace> factors, const Carrier& carrier);

struct Components {
  std::vector<PointSet> classes;
  std::size_t count() const noexcept { return classes.size(); }
  bool connected() const noexcept { return classes.size() == 1; }
};
Components components(const GBCSpace& x);

// X_U: same bornology, coarse structure generated by U. Requires U ⊆ E
// (NotAnEntourage) and U invariant when an action is present.
GBCSpace restrict_entourage(const GBCSpace& x, const Relation& u);

// X ≅ X_b ⨿ X_h.
struct Split {
  GBCSpace bounded_part;
  GBCSpace unbounded_part;
  GBCSpace coproduct;
  Morphism to_coproduct;
  Morphism from_coproduct;
};
Split split(const GBCSpace& x);

}  // namespace coarsecat
