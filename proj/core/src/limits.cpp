#include "coarsecat/limits.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

#include "coarsecat/errors.hpp"
#include "coarsecat/oracle.hpp"

namespace coarsecat {

namespace {

std::vector<Carrier> carriers_of(std::span<const GBCSpace> spaces) {
  std::vector<Carrier> out;
  out.reserve(spaces.size());
  for (const GBCSpace& x : spaces) out.push_back(x.carrier());
  return out;
}

// Least member of each class of an equivalence relation.
std::vector<std::size_t> least_members(const Relation& e) {
  std::vector<std::size_t> rep(e.points());
  for (std::size_t x = 0; x < e.points(); ++x) rep[x] = e.row(x).first();
  return rep;
}

}  // namespace

LimitResult product(std::span<const GBCSpace> factors) {
  if (factors.empty()) {
    const GBCSpace pt = final_point();
    return {pt, Cone{pt, {}}};
  }
  const std::vector<Carrier> carriers = carriers_of(factors);
  const Carrier c = product_carrier(carriers);
  const std::size_t n = c.size();
  std::vector<std::vector<std::size_t>> coords(n);
  for (std::size_t p = 0; p < n; ++p) coords[p] = product_coordinates(carriers, p);

  Relation e(c);
  PointSet xb(c);
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t j = 0; j < factors.size(); ++j) {
      if (factors[j].bounded_region().contains(coords[p][j])) {
        xb.insert(p);
        break;
      }
    }
    for (std::size_t q = 0; q < n; ++q) {
      bool related = true;
      for (std::size_t j = 0; j < factors.size() && related; ++j) {
        related = factors[j].max_entourage().contains(coords[p][j], coords[q][j]);
      }
      if (related) e.insert(p, q);
    }
  }
  GBCSpace apex(std::move(e), std::move(xb), product_action(factors, c));
  std::vector<Morphism> legs;
  for (std::size_t j = 0; j < factors.size(); ++j) {
    std::vector<std::size_t> img(n);
    for (std::size_t p = 0; p < n; ++p) img[p] = coords[p][j];
    legs.push_back(make_morphism(apex, factors[j], SetMap(c, carriers[j], std::move(img))));
  }
  return {apex, Cone{apex, std::move(legs)}};
}

ColimitResult coproduct(std::span<const GBCSpace> summands) {
  const std::vector<Carrier> carriers = carriers_of(summands);
  const Carrier c = coproduct_carrier(carriers);
  Relation e(c);
  PointSet xb(c);
  std::vector<std::size_t> offset(summands.size() + 1, 0);
  for (std::size_t i = 0; i < summands.size(); ++i) offset[i + 1] = offset[i] + summands[i].size();
  for (std::size_t i = 0; i < summands.size(); ++i) {
    const GBCSpace& s = summands[i];
    for (std::size_t x = 0; x < s.size(); ++x) {
      if (s.bounded_region().contains(x)) xb.insert(offset[i] + x);
      for (std::size_t y = 0; y < s.size(); ++y) {
        if (s.max_entourage().contains(x, y)) e.insert(offset[i] + x, offset[i] + y);
      }
    }
  }

  std::optional<GroupAction> action;
  const bool any_action = std::any_of(summands.begin(), summands.end(),
                                      [](const GBCSpace& s) { return s.action().has_value(); });
  if (any_action) {
    std::size_t count = 0;
    for (const GBCSpace& s : summands) {
      if (s.action()) count = s.action()->generator_count();
    }
    std::vector<SetMap> gens;
    for (std::size_t g = 0; g < count; ++g) {
      std::vector<std::size_t> img(c.size());
      for (std::size_t i = 0; i < summands.size(); ++i) {
        const GBCSpace& s = summands[i];
        if (s.action() && s.action()->generator_count() != count) {
          throw InvalidArgument("summands are acted on by differently presented groups");
        }
        for (std::size_t x = 0; x < s.size(); ++x) {
          img[offset[i] + x] = offset[i] + (s.action() ? s.action()->generators()[g](x) : x);
        }
      }
      gens.emplace_back(c, c, std::move(img));
    }
    action = GroupAction(c, std::move(gens));
  }

  GBCSpace apex(std::move(e), std::move(xb), std::move(action));
  std::vector<Morphism> legs;
  for (std::size_t i = 0; i < summands.size(); ++i) {
    std::vector<std::size_t> img(summands[i].size());
    std::iota(img.begin(), img.end(), offset[i]);
    legs.push_back(make_morphism(summands[i], apex, SetMap(carriers[i], c, std::move(img))));
  }
  return {apex, Cocone{apex, std::move(legs)}};
}

Quotient quotient(const GBCSpace& y, const Relation& identify) {
  require_same_carrier(y.carrier(), identify.carrier(), "quotient");
  const Relation classes = equivalence_closure(y.carrier(), std::span<const Relation>(&identify, 1));
  const std::vector<std::size_t> rep = least_members(classes);

  std::vector<std::string> names;
  std::vector<std::size_t> position(y.size(), 0);
  for (std::size_t x = 0; x < y.size(); ++x) {
    if (rep[x] == x) {
      position[x] = names.size();
      names.push_back(y.carrier().name(x));
    }
  }
  const Carrier q(std::move(names));
  std::vector<std::size_t> img(y.size());
  for (std::size_t x = 0; x < y.size(); ++x) img[x] = position[rep[x]];
  const SetMap pi(y.carrier(), q, std::move(img));

  const Relation pushed = image(pi, y.max_entourage());
  Relation e = equivalence_closure(q, std::span<const Relation>(&pushed, 1));
  PointSet xb(q);
  for (std::size_t p = 0; p < q.size(); ++p) {
    const PointSet cls(q, e.row(p));
    if (is_subset(preimage(pi, cls), y.bounded_region())) xb.insert(p);
  }

  std::optional<GroupAction> action;
  if (y.action()) {
    std::vector<SetMap> gens;
    for (const SetMap& s : y.action()->generators()) {
      std::vector<std::size_t> induced(q.size(), q.size());
      for (std::size_t x = 0; x < y.size(); ++x) {
        std::size_t& slot = induced[pi(x)];
        const std::size_t value = pi(s(x));
        if (slot != q.size() && slot != value) {
          throw NonInvariantGenerator("identification is not compatible with the action");
        }
        slot = value;
      }
      gens.emplace_back(q, q, std::move(induced));
    }
    action = GroupAction(q, std::move(gens));
  }

  GBCSpace space(std::move(e), std::move(xb), std::move(action));
  Morphism projection = make_morphism(y, space, pi);
  return {space, projection};
}

LimitResult equalizer(const Morphism& f, const Morphism& g) {
  if (!(f.dom() == g.dom()) || !(f.cod() == g.cod())) {
    throw InvalidArgument("equalizer needs parallel morphisms");
  }
  PointSet agree(f.dom().carrier());
  for (std::size_t x = 0; x < f.dom().size(); ++x) {
    if (f(x) == g(x)) agree.insert(x);
  }
  Morphism inclusion = subspace_inclusion(f.dom(), agree);
  Morphism through_cod = compose(f, inclusion);
  GBCSpace apex = inclusion.dom();
  return {apex, Cone{apex, {inclusion, through_cod}}};
}

ColimitResult coequalizer(const Morphism& f, const Morphism& g) {
  if (!(f.dom() == g.dom()) || !(f.cod() == g.cod())) {
    throw InvalidArgument("coequalizer needs parallel morphisms");
  }
  Relation identify(f.cod().carrier());
  for (std::size_t x = 0; x < f.dom().size(); ++x) identify.insert(f(x), g(x));
  Quotient q = quotient(f.cod(), identify);
  Morphism from_dom = compose(q.projection, f);
  return {q.space, Cocone{q.space, {from_dom, q.projection}}};
}

LimitResult limit(const Diagram& d) {
  LimitResult p = product(d.objects());
  PointSet commuting(p.space.carrier());
  for (std::size_t t = 0; t < p.space.size(); ++t) {
    bool ok = true;
    for (const Arrow& a : d.arrows()) {
      if (a.map(p.cone.legs[a.src](t)) != p.cone.legs[a.dst](t)) {
        ok = false;
        break;
      }
    }
    if (ok) commuting.insert(t);
  }
  if (commuting.is_full()) return p;
  Morphism inclusion = subspace_inclusion(p.space, commuting);
  std::vector<Morphism> legs;
  for (const Morphism& leg : p.cone.legs) legs.push_back(compose(leg, inclusion));
  GBCSpace apex = inclusion.dom();
  return {apex, Cone{apex, std::move(legs)}};
}

ColimitResult colimit(const Diagram& d) {
  ColimitResult c = coproduct(d.objects());
  Relation identify(c.space.carrier());
  for (const Arrow& a : d.arrows()) {
    for (std::size_t x = 0; x < d.object(a.src).size(); ++x) {
      identify.insert(c.cocone.legs[a.src](x), c.cocone.legs[a.dst](a.map(x)));
    }
  }
  Quotient q = quotient(c.space, identify);
  std::vector<Morphism> legs;
  for (const Morphism& leg : c.cocone.legs) legs.push_back(compose(q.projection, leg));
  return {q.space, Cocone{q.space, std::move(legs)}};
}

std::optional<SetMap> limit_mediator(const LimitResult& l, const Cone& c) {
  if (c.legs.size() != l.cone.legs.size()) return std::nullopt;
  std::map<std::vector<std::size_t>, std::size_t> tuples;
  for (std::size_t p = 0; p < l.space.size(); ++p) {
    std::vector<std::size_t> key;
    for (const Morphism& leg : l.cone.legs) key.push_back(leg(p));
    tuples.emplace(std::move(key), p);
  }
  std::vector<std::size_t> img(c.apex.size());
  for (std::size_t t = 0; t < c.apex.size(); ++t) {
    std::vector<std::size_t> key;
    for (const Morphism& leg : c.legs) key.push_back(leg(t));
    auto it = tuples.find(key);
    if (it == tuples.end()) return std::nullopt;
    img[t] = it->second;
  }
  return SetMap(c.apex.carrier(), l.space.carrier(), std::move(img));
}

std::optional<SetMap> colimit_mediator(const ColimitResult& l, const Cocone& c) {
  if (c.legs.size() != l.cocone.legs.size()) return std::nullopt;
  const std::size_t unset = c.apex.size();
  std::vector<std::size_t> img(l.space.size(), unset);
  for (std::size_t j = 0; j < c.legs.size(); ++j) {
    for (std::size_t x = 0; x < c.legs[j].dom().size(); ++x) {
      std::size_t& slot = img[l.cocone.legs[j](x)];
      if (slot != unset && slot != c.legs[j](x)) return std::nullopt;
      slot = c.legs[j](x);
    }
  }
  for (std::size_t v : img) {
    if (v == unset) return std::nullopt;
  }
  return SetMap(l.space.carrier(), c.apex.carrier(), std::move(img));
}

ClassicalExistence exists_in_classical(const Diagram& d, Side side) {
  for (std::size_t j = 0; j < d.size(); ++j) {
    if (!d.object(j).classical()) {
      throw NonClassicalInput("object " + d.names()[j] + " has unbounded points");
    }
  }
  ClassicalExistence out;
  out.object = side == Side::Limit ? limit(d).space : colimit(d).space;
  out.unbounded_points = out.object.unbounded_region().indices();
  out.exists = out.unbounded_points.empty();
  return out;
}

Admissibility admissible(const Diagram& d) {
  const ColimitResult c = colimit(d);
  const Carrier& x = c.space.carrier();
  const std::size_t n = x.size();
  std::vector<Relation> pushed;
  for (std::size_t i = 0; i < d.size(); ++i) {
    pushed.push_back(image(c.cocone.legs[i].map(), d.object(i).max_entourage()));
  }

  Admissibility out;
  out.colimit_carrier = x;
  for (std::size_t b = 0; b < n; ++b) {
    // Breadth-first rounds; each new point remembers the point and object
    // whose thickening reached it first.
    const std::size_t none = n;
    std::vector<std::size_t> parent(n, none), via(n, d.size());
    PointSet reached(x, {b});
    PointSet frontier = reached;
    std::size_t rounds = 0;
    while (!frontier.empty()) {
      if (++rounds > n + 1) throw std::logic_error("thickening chain failed to stabilize");
      PointSet next(x);
      for (std::size_t i = 0; i < d.size(); ++i) {
        for (std::size_t r : frontier.indices()) {
          pushed[i].row(r).for_each([&](std::size_t y) {
            if (reached.contains(y) || next.contains(y)) return;
            next.insert(y);
            parent[y] = r;
            via[y] = i;
          });
        }
      }
      reached = unite(reached, next);
      frontier = std::move(next);
    }
    out.rounds = std::max(out.rounds, rounds);

    for (std::size_t k = 0; k < d.size(); ++k) {
      const GBCSpace& obj = d.object(k);
      const PointSet pre = preimage(c.cocone.legs[k].map(), reached);
      const PointSet escaping = difference(pre, obj.bounded_region());
      if (escaping.empty()) continue;
      AdmissibilityWitness w;
      w.point = b;
      w.object = k;
      w.escaping = escaping.indices().front();
      for (std::size_t q = c.cocone.legs[k](w.escaping); q != b; q = parent[q]) {
        w.chain.push_back(via[q]);
      }
      std::reverse(w.chain.begin(), w.chain.end());
      PointSet thick(x, {b});
      for (std::size_t i : w.chain) thick = thicken(pushed[i], thick);
      w.preimage = preimage(c.cocone.legs[k].map(), thick);
      out.admissible = false;
      out.witness = std::move(w);
      return out;
    }
  }
  return out;
}

PreservationVerdict preservation_test(const Diagram& d, Side side, std::size_t test_cap) {
  const ClassicalExistence ex = exists_in_classical(d, side);
  if (!ex.exists) return {false, "the classical category has no such (co)limit"};

  OracleOptions options;
  options.test_cap = test_cap;
  options.classical_tests_only = true;

  if (side == Side::Limit) {
    const LimitResult g = limit(d);
    // Classical candidate: the set limit with the coarse structure generated
    // by the pulled-back entourages and every point bounded.
    std::vector<Relation> gens;
    for (const Morphism& leg : g.cone.legs) gens.push_back(preimage(leg.map(), leg.cod().max_entourage()));
    Relation e = Relation::full(g.space.carrier());
    for (const Relation& r : gens) e = intersect(e, r);
    const GBCSpace cl(e, PointSet::full(g.space.carrier()));
    std::vector<Morphism> legs;
    for (const Morphism& leg : g.cone.legs) {
      MorphismCheck check = validate_morphism(cl, leg.cod(), leg.map());
      if (!check.ok()) return {false, "classical candidate leg is not a morphism"};
      legs.push_back(*check.morphism);
    }
    const Cone cone{cl, legs};
    const auto comparison = limit_mediator(g, cone);
    if (!comparison) return {false, "classical cone does not factor through the limit"};
    MorphismCheck m = validate_morphism(cl, g.space, *comparison);
    if (!m.ok() || !is_isomorphism(*m.morphism)) return {false, "comparison is not an isomorphism"};
    const Verdict v = universal_property_check(cone, d, options);
    if (!v.pass) return {false, "classical candidate is not universal: " + v.reason};
    return {true, {}};
  }

  const ColimitResult g = colimit(d);
  std::vector<Relation> gens;
  for (const Morphism& leg : g.cocone.legs) gens.push_back(image(leg.map(), leg.dom().max_entourage()));
  const GBCSpace cl(equivalence_closure(g.space.carrier(), gens), PointSet::full(g.space.carrier()));
  std::vector<Morphism> legs;
  for (const Morphism& leg : g.cocone.legs) {
    MorphismCheck check = validate_morphism(leg.dom(), cl, leg.map());
    if (!check.ok()) return {false, "classical candidate leg is not a morphism"};
    legs.push_back(*check.morphism);
  }
  const Cocone cocone{cl, legs};
  const auto comparison = colimit_mediator(g, cocone);
  if (!comparison) return {false, "colimit does not factor through the classical cocone"};
  MorphismCheck m = validate_morphism(g.space, cl, *comparison);
  if (!m.ok() || !is_isomorphism(*m.morphism)) return {false, "comparison is not an isomorphism"};
  const Verdict v = universal_property_check(cocone, d, options);
  if (!v.pass) return {false, "classical candidate is not universal: " + v.reason};
  return {true, {}};
}

}  // namespace coarsecat
