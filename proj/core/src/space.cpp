#include "coarsecat/space.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <sstream>

#include "coarsecat/errors.hpp"

namespace coarsecat {

// ---------------------------------------------------------------------------
// GroupAction

GroupAction::GroupAction(Carrier carrier, std::vector<SetMap> generators)
    : carrier_(std::move(carrier)), generators_(std::move(generators)) {
  for (const SetMap& g : generators_) {
    require_same_carrier(carrier_, g.dom(), "group action");
    require_same_carrier(carrier_, g.cod(), "group action");
    if (!g.is_bijective()) throw InvalidArgument("action generator is not a permutation");
  }
}

GroupAction::GroupAction(Carrier carrier, const std::vector<std::vector<std::size_t>>& generators)
    : carrier_(std::move(carrier)) {
  for (const auto& g : generators) generators_.emplace_back(carrier_, carrier_, g);
  for (const SetMap& g : generators_) {
    if (!g.is_bijective()) throw InvalidArgument("action generator is not a permutation");
  }
}

GroupAction GroupAction::trivial(const Carrier& carrier, std::size_t count) {
  return GroupAction(carrier, std::vector<SetMap>(count, SetMap::identity(carrier)));
}

bool GroupAction::preserves(const PointSet& s) const {
  // Permutations of a finite set: g(S) ⊆ S already forces g(S) = S.
  return std::all_of(generators_.begin(), generators_.end(),
                     [&](const SetMap& g) { return is_subset(image(g, s), s); });
}

bool GroupAction::preserves(const Relation& u) const {
  return std::all_of(generators_.begin(), generators_.end(),
                     [&](const SetMap& g) { return is_subset(image(g, u), u); });
}

PointSet GroupAction::orbit(const PointSet& s) const {
  require_same_carrier(carrier_, s.carrier(), "orbit");
  PointSet out = s;
  std::deque<std::size_t> queue;
  s.bits().for_each([&](std::size_t x) { queue.push_back(x); });
  while (!queue.empty()) {
    const std::size_t x = queue.front();
    queue.pop_front();
    for (const SetMap& g : generators_) {
      const std::size_t y = g(x);
      if (!out.contains(y)) {
        out.insert(y);
        queue.push_back(y);
      }
    }
  }
  return out;
}

std::vector<PointSet> GroupAction::orbits() const {
  std::vector<PointSet> out;
  PointSet seen(carrier_);
  for (std::size_t x = 0; x < carrier_.size(); ++x) {
    if (seen.contains(x)) continue;
    PointSet o = orbit(PointSet(carrier_, {x}));
    seen = unite(seen, o);
    out.push_back(std::move(o));
  }
  return out;
}

std::vector<Relation> GroupAction::pair_orbits(const Relation& within) const {
  require_same_carrier(carrier_, within.carrier(), "pair_orbits");
  std::vector<Relation> out;
  Relation seen(carrier_);
  for (const Pair& p : within.pairs()) {
    if (seen.contains(p.first, p.second)) continue;
    Relation o(carrier_);
    std::deque<Pair> queue{p};
    o.insert(p.first, p.second);
    while (!queue.empty()) {
      const auto [x, y] = queue.front();
      queue.pop_front();
      for (const SetMap& g : generators_) {
        const std::size_t gx = g(x), gy = g(y);
        if (!o.contains(gx, gy)) {
          o.insert(gx, gy);
          queue.emplace_back(gx, gy);
        }
      }
    }
    seen = unite(seen, o);
    out.push_back(std::move(o));
  }
  return out;
}

std::vector<SetMap> GroupAction::elements(std::size_t cap) const {
  std::vector<SetMap> out{SetMap::identity(carrier_)};
  std::set<std::vector<std::size_t>> seen;
  seen.insert(std::vector<std::size_t>(out[0].images().begin(), out[0].images().end()));
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (const SetMap& g : generators_) {
      SetMap h = compose(g, out[i]);
      std::vector<std::size_t> key(h.images().begin(), h.images().end());
      if (seen.insert(std::move(key)).second) {
        if (out.size() >= cap) {
          throw CapExceeded("group has more than " + std::to_string(cap) + " elements", cap,
                            "--search-cap");
        }
        out.push_back(std::move(h));
      }
    }
  }
  return out;
}

GroupAction GroupAction::restrict_to(const PointSet& s) const {
  if (!preserves(s)) throw NonInvariantGenerator("subset is not invariant under the action");
  const Carrier sub = sub_carrier(s);
  std::vector<std::size_t> position(carrier_.size(), 0);
  const auto idx = s.indices();
  for (std::size_t i = 0; i < idx.size(); ++i) position[idx[i]] = i;
  std::vector<SetMap> gens;
  for (const SetMap& g : generators_) {
    std::vector<std::size_t> img(idx.size());
    for (std::size_t i = 0; i < idx.size(); ++i) img[i] = position[g(idx[i])];
    gens.emplace_back(sub, sub, std::move(img));
  }
  return GroupAction(sub, std::move(gens));
}

bool operator==(const GroupAction& a, const GroupAction& b) {
  return a.carrier_ == b.carrier_ && a.generators_ == b.generators_;
}

// ---------------------------------------------------------------------------
// GBCSpace

struct GBCSpace::Data {
  Relation entourage;
  PointSet bounded;
  std::optional<GroupAction> action;
};

namespace {

// First bounded point whose class leaves the bounded region.
std::optional<IncompatibilityWitness> find_incompatibility(const Relation& e, const PointSet& xb) {
  const Carrier& c = e.carrier();
  for (std::size_t b : xb.indices()) {
    const BitVector cls = e.row(b);
    const BitVector escaping = cls - xb.bits();
    if (escaping.any()) {
      IncompatibilityWitness w;
      cls.for_each([&](std::size_t i) { w.coarse_class.push_back(c.name(i)); });
      w.bounded_point = c.name(b);
      w.escaping_point = c.name(escaping.first());
      return w;
    }
  }
  return std::nullopt;
}

}  // namespace

GBCSpace::GBCSpace() {
  static const auto empty = std::make_shared<const Data>(
      Data{Relation(Carrier()), PointSet(Carrier()), std::nullopt});
  data_ = empty;
}

GBCSpace::GBCSpace(Relation max_entourage, PointSet bounded, std::optional<GroupAction> action) {
  require_same_carrier(max_entourage.carrier(), bounded.carrier(), "space");
  if (!max_entourage.is_equivalence()) {
    throw InvalidArgument("maximal entourage is not an equivalence relation");
  }
  if (auto w = find_incompatibility(max_entourage, bounded)) {
    throw IncompatibleStructures("bounded point '" + w->bounded_point +
                                     "' has coarse neighbour '" + w->escaping_point +
                                     "' outside the bounded region",
                                 std::move(*w));
  }
  if (action) {
    require_same_carrier(max_entourage.carrier(), action->carrier(), "space action");
    if (!action->preserves(max_entourage)) {
      throw NonInvariantGenerator("action does not preserve the coarse structure");
    }
    if (!action->preserves(bounded)) {
      throw NonInvariantGenerator("action does not preserve the bounded region");
    }
  }
  data_ = std::make_shared<const Data>(
      Data{std::move(max_entourage), std::move(bounded), std::move(action)});
}

const Carrier& GBCSpace::carrier() const noexcept { return data_->entourage.carrier(); }
const Relation& GBCSpace::max_entourage() const noexcept { return data_->entourage; }
const PointSet& GBCSpace::bounded_region() const noexcept { return data_->bounded; }
const std::optional<GroupAction>& GBCSpace::action() const noexcept { return data_->action; }

bool operator==(const GBCSpace& a, const GBCSpace& b) {
  if (a.data_ == b.data_) return true;
  return a.max_entourage() == b.max_entourage() && a.bounded_region() == b.bounded_region() &&
         a.action() == b.action();
}

std::string describe(const GBCSpace& x) {
  std::ostringstream os;
  os << "{classes: [";
  bool first = true;
  for (const PointSet& cls : components(x).classes) {
    os << (first ? "" : ", ") << '{';
    first = false;
    bool inner = true;
    for (const auto& n : cls.names()) {
      os << (inner ? "" : ",") << n;
      inner = false;
    }
    os << '}';
  }
  os << "], bounded: {";
  bool inner = true;
  for (const auto& n : x.bounded_region().names()) {
    os << (inner ? "" : ",") << n;
    inner = false;
  }
  os << "}}";
  return os.str();
}

GBCSpace from_generators(const Carrier& carrier, std::span<const Relation> coarse_generators,
                         std::span<const PointSet> bounded_generators, bool classical,
                         std::optional<GroupAction> action) {
  Relation e = equivalence_closure(carrier, coarse_generators);
  PointSet xb = classical ? PointSet::full(carrier) : PointSet(carrier);
  for (const PointSet& b : bounded_generators) {
    require_same_carrier(carrier, b.carrier(), "from_generators");
    xb = unite(xb, b);
  }
  if (action) {
    // Each generated structure must already be invariant; the generators
    // themselves need not be.
    if (!action->preserves(e)) {
      throw NonInvariantGenerator("closure of the coarse generators is not action-invariant");
    }
    if (!action->preserves(xb)) {
      throw NonInvariantGenerator("bounded generators are not action-invariant");
    }
  }
  return GBCSpace(std::move(e), std::move(xb), std::move(action));
}

bool entourage_member(const GBCSpace& x, const Relation& u) {
  return is_subset(u, x.max_entourage());
}

bool bounded_member(const GBCSpace& x, const PointSet& b) {
  return is_subset(b, x.bounded_region());
}

void require_invariant(const GBCSpace& x, const PointSet& s, std::string_view what) {
  if (x.action() && !x.action()->preserves(s)) {
    throw NonInvariantGenerator(std::string(what) + " is not invariant under the action");
  }
}

// ---------------------------------------------------------------------------
// Morphisms

const char* to_string(Violation::Kind k) {
  switch (k) {
    case Violation::Kind::NotProper:
      return "not_proper";
    case Violation::Kind::NotControlled:
      return "not_controlled";
    case Violation::Kind::NotEquivariant:
      return "not_equivariant";
  }
  return "unknown";
}

std::string Violation::describe(const GBCSpace& dom, const GBCSpace& cod) const {
  switch (kind) {
    case Kind::NotProper:
      return "unbounded point '" + dom.carrier().name(point) + "' maps to bounded point '" +
             cod.carrier().name(image) + "'";
    case Kind::NotControlled:
      return "pair ('" + dom.carrier().name(point) + "','" + dom.carrier().name(other) +
             "') is mapped outside the codomain's coarse structure";
    case Kind::NotEquivariant:
      return "map does not commute with action generator " + std::to_string(generator) +
             " at '" + dom.carrier().name(point) + "'";
  }
  return {};
}

namespace {

bool both_acted(const GBCSpace& dom, const GBCSpace& cod) {
  if (!dom.action() || !cod.action()) return false;
  if (dom.action()->generator_count() != cod.action()->generator_count()) {
    throw InvalidArgument("spaces are acted on by differently presented groups");
  }
  return true;
}

}  // namespace

MorphismCheck validate_morphism(const GBCSpace& dom, const GBCSpace& cod, SetMap map) {
  require_same_carrier(dom.carrier(), map.dom(), "validate_morphism");
  require_same_carrier(cod.carrier(), map.cod(), "validate_morphism");
  MorphismCheck out;
  const std::size_t n = dom.size();
  const PointSet& xb_dom = dom.bounded_region();
  const PointSet& xb_cod = cod.bounded_region();
  for (std::size_t x = 0; x < n; ++x) {
    if (xb_cod.contains(map(x)) && !xb_dom.contains(x)) {
      out.violations.push_back({Violation::Kind::NotProper, x, 0, map(x), 0});
    }
  }
  const Relation& e_dom = dom.max_entourage();
  const Relation& e_cod = cod.max_entourage();
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = x + 1; y < n; ++y) {
      if (e_dom.contains(x, y) && !e_cod.contains(map(x), map(y))) {
        out.violations.push_back({Violation::Kind::NotControlled, x, y, 0, 0});
      }
    }
  }
  const bool acted = both_acted(dom, cod);
  if (acted) {
    const auto gd = dom.action()->generators();
    const auto gc = cod.action()->generators();
    for (std::size_t g = 0; g < gd.size(); ++g) {
      for (std::size_t x = 0; x < n; ++x) {
        if (map(gd[g](x)) != gc[g](map(x))) {
          out.violations.push_back({Violation::Kind::NotEquivariant, x, 0, 0, g});
          break;
        }
      }
    }
  }
  if (out.violations.empty()) out.morphism = Morphism(dom, cod, std::move(map), acted);
  return out;
}

Morphism make_morphism(const GBCSpace& dom, const GBCSpace& cod, SetMap map) {
  MorphismCheck check = validate_morphism(dom, cod, std::move(map));
  if (!check.ok()) throw NotAMorphism(check.violations.front().describe(dom, cod));
  return std::move(*check.morphism);
}

bool is_morphism(const GBCSpace& dom, const GBCSpace& cod, const SetMap& map) {
  const std::size_t n = dom.size();
  const PointSet& xb_dom = dom.bounded_region();
  const PointSet& xb_cod = cod.bounded_region();
  for (std::size_t x = 0; x < n; ++x) {
    if (xb_cod.contains(map(x)) && !xb_dom.contains(x)) return false;
  }
  const Relation& e_dom = dom.max_entourage();
  const Relation& e_cod = cod.max_entourage();
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = x + 1; y < n; ++y) {
      if (e_dom.contains(x, y) && !e_cod.contains(map(x), map(y))) return false;
    }
  }
  if (both_acted(dom, cod)) {
    const auto gd = dom.action()->generators();
    const auto gc = cod.action()->generators();
    for (std::size_t g = 0; g < gd.size(); ++g) {
      for (std::size_t x = 0; x < n; ++x) {
        if (map(gd[g](x)) != gc[g](map(x))) return false;
      }
    }
  }
  return true;
}

Morphism identity(const GBCSpace& x) { return make_morphism(x, x, SetMap::identity(x.carrier())); }

Morphism compose(const Morphism& g, const Morphism& f) {
  if (!(f.cod() == g.dom())) throw InvalidArgument("morphisms are not composable");
  return make_morphism(f.dom(), g.cod(), compose(g.map(), f.map()));
}

bool is_isomorphism(const Morphism& f) {
  if (!f.map().is_bijective()) return false;
  return is_morphism(f.cod(), f.dom(), inverse(f.map()));
}

// ---------------------------------------------------------------------------
// Constructors

GBCSpace min_min(const Carrier& c) { return GBCSpace(Relation::diagonal(c), PointSet::full(c)); }

GBCSpace min_max(const Carrier& c) { return min_min(c); }

GBCSpace max_max(const Carrier& c) { return GBCSpace(Relation::full(c), PointSet::full(c)); }

GBCSpace max_empty(const Carrier& c) { return GBCSpace(Relation::full(c), PointSet(c)); }

GBCSpace unit_point() { return max_max(Carrier({"*"})); }

GBCSpace final_point() { return max_empty(Carrier({"*"})); }

GBCSpace metric_space(const Carrier& c, const std::vector<std::vector<double>>& distance) {
  const std::size_t n = c.size();
  if (distance.size() != n) throw InvalidArgument("distance matrix has the wrong size");
  Relation finite(c);
  for (std::size_t x = 0; x < n; ++x) {
    if (distance[x].size() != n) throw InvalidArgument("distance matrix has the wrong size");
    for (std::size_t y = 0; y < n; ++y) {
      const double d = distance[x][y];
      if (d >= 0 && d != distance[y][x]) throw InvalidArgument("distance is not symmetric");
      if (x == y && d != 0) throw InvalidArgument("distance of a point to itself must be 0");
      if (d >= 0) finite.insert(x, y);
    }
  }
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      if (distance[x][y] < 0) continue;
      for (std::size_t z = 0; z < n; ++z) {
        if (distance[y][z] < 0) continue;
        const double d = distance[x][z];
        if (d < 0 || d > distance[x][y] + distance[y][z]) {
          throw InvalidArgument("distance violates the triangle inequality at (" + c.name(x) + ", " +
                                c.name(y) + ", " + c.name(z) + ")");
        }
      }
    }
  }
  return GBCSpace(finite, PointSet::full(c));
}

GBCSpace pullback_structure(const SetMap& f, const GBCSpace& x, std::optional<GroupAction> action) {
  require_same_carrier(f.cod(), x.carrier(), "pullback_structure");
  if (action) {
    require_same_carrier(f.dom(), action->carrier(), "pullback_structure");
    if (x.action()) {
      if (action->generator_count() != x.action()->generator_count()) {
        throw NonInvariantGenerator("pullback action presents a different group");
      }
      const auto gy = action->generators();
      const auto gx = x.action()->generators();
      for (std::size_t g = 0; g < gy.size(); ++g) {
        for (std::size_t y = 0; y < f.dom().size(); ++y) {
          if (f(gy[g](y)) != gx[g](f(y))) {
            throw NonInvariantGenerator("pullback map is not equivariant");
          }
        }
      }
    }
  }
  return GBCSpace(preimage(f, x.max_entourage()), preimage(f, x.bounded_region()),
                  std::move(action));
}

GBCSpace subspace(const GBCSpace& x, const PointSet& a) {
  require_same_carrier(x.carrier(), a.carrier(), "subspace");
  std::optional<GroupAction> action;
  if (x.action()) action = x.action()->restrict_to(a);
  return pullback_structure(SetMap::inclusion(a), x, std::move(action));
}

Morphism subspace_inclusion(const GBCSpace& x, const PointSet& a) {
  return make_morphism(subspace(x, a), x, SetMap::inclusion(a));
}

std::optional<GroupAction> product_action(std::span<const GBCSpace> factors, const Carrier& carrier) {
  std::size_t count = 0;
  bool any = false;
  for (const GBCSpace& f : factors) {
    if (!f.action()) continue;
    if (any && f.action()->generator_count() != count) {
      throw InvalidArgument("factors are acted on by differently presented groups");
    }
    count = f.action()->generator_count();
    any = true;
  }
  if (!any) return std::nullopt;
  std::vector<Carrier> carriers;
  for (const GBCSpace& f : factors) carriers.push_back(f.carrier());
  std::vector<SetMap> gens;
  for (std::size_t g = 0; g < count; ++g) {
    std::vector<std::size_t> img(carrier.size());
    for (std::size_t p = 0; p < carrier.size(); ++p) {
      auto coords = product_coordinates(carriers, p);
      std::size_t index = 0;
      for (std::size_t j = 0; j < factors.size(); ++j) {
        const std::size_t c =
            factors[j].action() ? factors[j].action()->generators()[g](coords[j]) : coords[j];
        index = index * carriers[j].size() + c;
      }
      img[p] = index;
    }
    gens.emplace_back(carrier, carrier, std::move(img));
  }
  return GroupAction(carrier, std::move(gens));
}

GBCSpace tensor(const GBCSpace& x, const GBCSpace& y) {
  const std::vector<Carrier> carriers{x.carrier(), y.carrier()};
  const Carrier c = product_carrier(carriers);
  const std::size_t ny = y.size();
  Relation e(c);
  PointSet xb(c);
  for (std::size_t p = 0; p < c.size(); ++p) {
    const std::size_t px = p / ny, py = p % ny;
    if (x.bounded_region().contains(px) && y.bounded_region().contains(py)) xb.insert(p);
    for (std::size_t q = 0; q < c.size(); ++q) {
      if (x.max_entourage().contains(px, q / ny) && y.max_entourage().contains(py, q % ny)) {
        e.insert(p, q);
      }
    }
  }
  const std::vector<GBCSpace> factors{x, y};
  return GBCSpace(std::move(e), std::move(xb), product_action(factors, c));
}

Components components(const GBCSpace& x) {
  Components out;
  PointSet seen(x.carrier());
  for (std::size_t p = 0; p < x.size(); ++p) {
    if (seen.contains(p)) continue;
    PointSet cls(x.carrier(), x.max_entourage().row(p));
    seen = unite(seen, cls);
    out.classes.push_back(std::move(cls));
  }
  return out;
}

GBCSpace restrict_entourage(const GBCSpace& x, const Relation& u) {
  if (!entourage_member(x, u)) throw NotAnEntourage("relation is not an entourage of the space");
  if (x.action() && !x.action()->preserves(u)) {
    throw NonInvariantGenerator("entourage is not action-invariant");
  }
  return GBCSpace(equivalence_closure(x.carrier(), std::span<const Relation>(&u, 1)),
                  x.bounded_region(), x.action());
}

}  // namespace coarsecat
