#include "coarsecat/homotopy.hpp"

#include <deque>
#include <set>
#include <stdexcept>

#include "coarsecat/enumerate.hpp"
#include "coarsecat/errors.hpp"

namespace coarsecat {

namespace {

void require_parallel(const Morphism& f, const Morphism& g) {
  if (!(f.dom() == g.dom()) || !(f.cod() == g.cod())) {
    throw InvalidArgument("morphisms are not parallel");
  }
}

void require_search_cap(std::size_t n, std::size_t cap) {
  if (n > cap) {
    throw CapExceeded("search over maps of a " + std::to_string(n) + "-point space exceeds the cap of " +
                          std::to_string(cap),
                      cap, "--search-cap");
  }
}

// Position of each member of `s` inside sub_carrier(s).
std::vector<std::size_t> positions(const PointSet& s) {
  std::vector<std::size_t> pos(s.carrier().size(), 0);
  const auto idx = s.indices();
  for (std::size_t i = 0; i < idx.size(); ++i) pos[idx[i]] = i;
  return pos;
}

}  // namespace

bool are_close(const Morphism& f, const Morphism& g) {
  require_parallel(f, g);
  const Relation& e = f.cod().max_entourage();
  for (std::size_t x = 0; x < f.dom().size(); ++x) {
    if (!e.contains(f(x), g(x))) return false;
  }
  return true;
}

bool glued_map_validates(const Morphism& f, const Morphism& g) {
  require_parallel(f, g);
  const GBCSpace interval = max_max(Carrier({"0", "1"}));
  const GBCSpace cylinder = tensor(interval, f.dom());
  const std::size_t n = f.dom().size();
  std::vector<std::size_t> img(2 * n);
  for (std::size_t x = 0; x < n; ++x) {
    img[x] = f(x);
    img[n + x] = g(x);
  }
  return is_morphism(cylinder, f.cod(), SetMap(cylinder.carrier(), f.cod().carrier(), std::move(img)));
}

EquivalenceVerdict is_equivalence(const Morphism& f, std::size_t search_cap) {
  const GBCSpace& x = f.dom();
  const GBCSpace& y = f.cod();
  require_search_cap(x.size(), search_cap);
  require_search_cap(y.size(), search_cap);
  EquivalenceVerdict out;
  const Relation& ex = x.max_entourage();
  const Relation& ey = y.max_entourage();
  for_each_morphism(y, x, [&](const std::vector<std::size_t>& g) {
    for (std::size_t p = 0; p < y.size(); ++p) {
      if (!ey.contains(f(g[p]), p)) return true;
    }
    for (std::size_t p = 0; p < x.size(); ++p) {
      if (!ex.contains(g[f(p)], p)) return true;
    }
    out.equivalence = true;
    out.inverse = make_morphism(y, x, SetMap(y.carrier(), x.carrier(), g));
    return false;
  });
  return out;
}

namespace {

// Checks the three flasqueness conditions for a self-morphism.
FlasqueVerdict check_flasque(const GBCSpace& x, const Morphism& f) {
  FlasqueVerdict out;
  out.witness = f;
  const Relation& e = x.max_entourage();
  const std::size_t n = x.size();
  for (std::size_t p = 0; p < n; ++p) {
    if (!e.contains(f(p), p)) {
      out.failed_condition = 1;
      return out;
    }
  }

  // f^k for k = 0, 1, ... until the sequence of powers repeats.
  std::set<std::vector<std::size_t>> seen;
  std::vector<std::size_t> power(n);
  for (std::size_t p = 0; p < n; ++p) power[p] = p;
  Relation orbit_union(x.carrier());
  while (seen.insert(power).second) {
    orbit_union = unite(orbit_union, image(SetMap(x.carrier(), x.carrier(), power), e));
    for (std::size_t p = 0; p < n; ++p) power[p] = f(power[p]);
  }
  if (!is_subset(orbit_union, e)) {
    out.failed_condition = 2;
    return out;
  }

  const PointSet bounded =
      x.action() ? x.action()->orbit(x.bounded_region()) : x.bounded_region();
  PointSet img = PointSet::full(x.carrier());
  for (std::size_t k = 0; k <= n; ++k) {
    if (intersect(img, bounded).empty()) {
      out.flasque = true;
      out.k = k;
      return out;
    }
    img = image(f.map(), img);
  }
  out.failed_condition = 3;
  return out;
}

}  // namespace

FlasqueVerdict is_flasque(const GBCSpace& x, const std::optional<Morphism>& witness,
                          std::size_t search_cap) {
  if (witness) {
    if (!(witness->dom() == x) || !(witness->cod() == x)) {
      throw InvalidArgument("flasqueness witness is not a self-morphism of the space");
    }
    return check_flasque(x, *witness);
  }
  require_search_cap(x.size(), search_cap);
  FlasqueVerdict out;
  for_each_morphism(x, x, [&](const std::vector<std::size_t>& img) {
    FlasqueVerdict v = check_flasque(x, make_morphism(x, x, SetMap(x.carrier(), x.carrier(), img)));
    if (!v.flasque) return true;
    out = std::move(v);
    return false;
  });
  return out;
}

FamilyVerdict validate_big_family(const BigFamily& family) {
  const GBCSpace& x = family.space;
  const auto& ys = family.members;
  if (ys.empty()) return {false, "a big family needs at least one member", {}};
  for (std::size_t i = 0; i < ys.size(); ++i) {
    require_same_carrier(x.carrier(), ys[i].carrier(), "big family");
    if (x.action() && !x.action()->preserves(ys[i])) {
      return {false, "member is not invariant", {i}};
    }
  }
  for (std::size_t i = 0; i < ys.size(); ++i) {
    for (std::size_t j = i + 1; j < ys.size(); ++j) {
      const PointSet both = unite(ys[i], ys[j]);
      bool bounded_above = false;
      for (const PointSet& y : ys) bounded_above = bounded_above || is_subset(both, y);
      if (!bounded_above) return {false, "members have no common upper bound", {i, j}};
    }
  }
  for (std::size_t i = 0; i < ys.size(); ++i) {
    const PointSet thick = thicken(x.max_entourage(), ys[i]);
    bool absorbed = false;
    for (const PointSet& y : ys) absorbed = absorbed || is_subset(thick, y);
    if (!absorbed) return {false, "thickening of a member lies in no member", {i}};
  }
  return {true, {}, {}};
}

FamilyVerdict validate_complementary_pair(const PointSet& z, const BigFamily& family) {
  require_same_carrier(family.space.carrier(), z.carrier(), "complementary pair");
  if (family.space.action() && !family.space.action()->preserves(z)) {
    return {false, "Z is not invariant", {}};
  }
  FamilyVerdict v = validate_big_family(family);
  if (!v.ok) return v;
  for (std::size_t i = 0; i < family.members.size(); ++i) {
    if (unite(z, family.members[i]).is_full()) return {true, {}, {i}};
  }
  return {false, "Z together with any member misses a point", {}};
}

std::vector<Relation> invariant_reflexive_entourages(const GBCSpace& x, std::size_t orbit_cap) {
  Relation off = x.max_entourage();
  for (std::size_t p = 0; p < x.size(); ++p) off.erase(p, p);
  std::vector<Relation> orbits;
  if (x.action()) {
    orbits = x.action()->pair_orbits(off);
  } else {
    for (const Pair& p : off.pairs()) orbits.emplace_back(x.carrier(), std::initializer_list<Pair>{p});
  }
  if (orbits.size() > orbit_cap) {
    throw CapExceeded("entourage enumeration over " + std::to_string(orbits.size()) +
                          " pair orbits exceeds the cap of " + std::to_string(orbit_cap),
                      orbit_cap, "--search-cap");
  }
  std::vector<Relation> out;
  const Relation diag = Relation::diagonal(x.carrier());
  for (std::size_t mask = 0; mask < (std::size_t{1} << orbits.size()); ++mask) {
    Relation u = diag;
    for (std::size_t i = 0; i < orbits.size(); ++i) {
      if ((mask >> i) & 1U) u = unite(u, orbits[i]);
    }
    out.push_back(std::move(u));
  }
  return out;
}

namespace {

Morphism subset_inclusion(const GBCSpace& x, const PointSet& a, const PointSet& b) {
  const auto pos = positions(b);
  std::vector<std::size_t> img;
  for (std::size_t p : a.indices()) img.push_back(pos[p]);
  return make_morphism(subspace(x, a), subspace(x, b),
                       SetMap(sub_carrier(a), sub_carrier(b), std::move(img)));
}

// An equivariant map g: E[A] -> A with (g(y), y) ∈ E, built orbit by orbit.
std::optional<SetMap> equivariant_retraction(const GBCSpace& x, const PointSet& a) {
  const Relation& e = x.max_entourage();
  const PointSet b = thicken(e, a);
  const std::size_t n = x.size();
  const std::size_t unset = n;
  std::vector<std::size_t> g(n, unset);
  std::vector<SetMap> gens;
  if (x.action()) gens.assign(x.action()->generators().begin(), x.action()->generators().end());

  for (std::size_t y : b.indices()) {
    if (g[y] != unset) continue;
    std::vector<std::size_t> candidates;
    if (a.contains(y)) candidates.push_back(y);
    for (std::size_t c : intersect(a, PointSet(x.carrier(), e.row(y))).indices()) {
      if (c != y) candidates.push_back(c);
    }
    bool placed = false;
    for (std::size_t c : candidates) {
      std::vector<std::size_t> trial = g;
      trial[y] = c;
      std::deque<std::size_t> queue{y};
      bool ok = true;
      while (!queue.empty() && ok) {
        const std::size_t z = queue.front();
        queue.pop_front();
        for (const SetMap& s : gens) {
          const std::size_t sz = s(z), value = s(trial[z]);
          if (trial[sz] == unset) {
            trial[sz] = value;
            queue.push_back(sz);
          } else if (trial[sz] != value) {
            ok = false;
            break;
          }
        }
      }
      if (ok) {
        g = std::move(trial);
        placed = true;
        break;
      }
    }
    if (!placed) return std::nullopt;
  }
  const auto pos = positions(a);
  std::vector<std::size_t> img;
  for (std::size_t y : b.indices()) img.push_back(pos[g[y]]);
  return SetMap(sub_carrier(b), sub_carrier(a), std::move(img));
}

}  // namespace

NiceVerdict is_nice(const GBCSpace& x, const PointSet& a, Quantification q, std::size_t search_cap) {
  require_same_carrier(x.carrier(), a.carrier(), "is_nice");
  require_invariant(x, a, "subset");
  NiceVerdict out;
  if (q == Quantification::Fast) {
    const PointSet b = thicken(x.max_entourage(), a);
    std::optional<SetMap> g = equivariant_retraction(x, a);
    if (!g) {
      out.failing_entourage = x.max_entourage();
      return out;
    }
    // The retraction must be an inverse of the inclusion up to closeness.
    const Morphism incl = subset_inclusion(x, a, b);
    const GBCSpace& sa = incl.dom();
    const GBCSpace& sb = incl.cod();
    const Morphism back = make_morphism(sb, sa, *g);
    if (!are_close(compose(incl, back), identity(sb)) || !are_close(compose(back, incl), identity(sa))) {
      throw std::logic_error("retraction is not an inverse up to closeness");
    }
    out.nice = true;
    out.retraction = std::move(g);
    return out;
  }
  for (const Relation& u : invariant_reflexive_entourages(x)) {
    const PointSet b = thicken(u, a);
    if (!is_equivalence(subset_inclusion(x, a, b), search_cap).equivalence) {
      out.failing_entourage = u;
      return out;
    }
  }
  out.nice = true;
  return out;
}

ExcisionVerdict is_coarsely_excisive(const GBCSpace& x, const PointSet& y, const PointSet& z,
                                     Quantification q, std::size_t search_cap) {
  require_same_carrier(x.carrier(), y.carrier(), "is_coarsely_excisive");
  require_same_carrier(x.carrier(), z.carrier(), "is_coarsely_excisive");
  require_invariant(x, y, "Y");
  require_invariant(x, z, "Z");
  ExcisionVerdict out;

  const PointSet cover = unite(y, z);
  if (!cover.is_full()) {
    out.failed_condition = 1;
    out.point = complement(cover).indices().front();
    return out;
  }

  const Relation& e = x.max_entourage();
  const PointSet meet = intersect(y, z);
  if (q == Quantification::Fast) {
    const PointSet lhs = intersect(thicken(e, y), thicken(e, z));
    const PointSet bad = difference(lhs, thicken(e, meet));
    if (!bad.empty()) {
      out.failed_condition = 2;
      out.point = bad.indices().front();
      out.entourage = e;
      return out;
    }
  } else {
    const std::vector<Relation> us = invariant_reflexive_entourages(x);
    for (const Relation& u : us) {
      const PointSet lhs = intersect(thicken(u, y), thicken(u, z));
      bool covered = false;
      for (const Relation& v : us) {
        if (is_subset(lhs, thicken(v, meet))) {
          covered = true;
          break;
        }
      }
      if (!covered) {
        out.failed_condition = 2;
        out.point = difference(lhs, thicken(e, meet)).indices().front();
        out.entourage = u;
        return out;
      }
    }
  }

  if (!is_nice(x, intersect(thicken(e, y), z), q, search_cap).nice) {
    out.failed_condition = 3;
    return out;
  }
  out.excisive = true;
  return out;
}

}  // namespace coarsecat
