#include "coarsecat/oracle.hpp"

#include <map>
#include <mutex>

#include "coarsecat/enumerate.hpp"
#include "coarsecat/errors.hpp"

namespace coarsecat {

namespace {

using Images = std::vector<std::size_t>;

std::vector<Images> hom_images(const GBCSpace& dom, const GBCSpace& cod) {
  std::vector<Images> out;
  for_each_morphism(dom, cod, [&](const Images& img) {
    out.push_back(img);
    return true;
  });
  return out;
}

// Counts maps dom -> cod drawn pointwise from `candidates` that are
// morphisms, stopping at two.
std::size_t count_mediators(const GBCSpace& dom, const GBCSpace& cod,
                            const std::vector<std::vector<std::size_t>>& candidates) {
  const std::size_t n = dom.size();
  for (const auto& c : candidates) {
    if (c.empty()) return 0;
  }
  std::vector<std::size_t> pick(n, 0);
  std::size_t found = 0;
  while (true) {
    Images img(n);
    for (std::size_t t = 0; t < n; ++t) img[t] = candidates[t][pick[t]];
    if (is_morphism(dom, cod, SetMap(dom.carrier(), cod.carrier(), std::move(img)))) {
      if (++found == 2) return found;
    }
    std::size_t t = 0;
    while (t < n && ++pick[t] == candidates[t].size()) pick[t++] = 0;
    if (t == n) return found;
  }
}

struct Search {
  const GBCSpace& apex;
  std::span<const SetMap> legs;
  const Diagram& d;
  Side side;

  // Arrows to check once object j has been assigned.
  std::vector<std::vector<std::size_t>> arrows_at;
  // Limit: apex points by leg tuple.
  std::map<Images, std::vector<std::size_t>> by_tuple;
  // Colimit: (object, point) pairs hitting each apex point.
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> hits;

  Search(const GBCSpace& a, std::span<const SetMap> l, const Diagram& dg, Side s)
      : apex(a), legs(l), d(dg), side(s), arrows_at(dg.size()) {
    for (std::size_t i = 0; i < d.arrows().size(); ++i) {
      const Arrow& ar = d.arrows()[i];
      arrows_at[std::max(ar.src, ar.dst)].push_back(i);
    }
    if (side == Side::Limit) {
      for (std::size_t p = 0; p < apex.size(); ++p) {
        Images key;
        for (const SetMap& leg : legs) key.push_back(leg(p));
        by_tuple[key].push_back(p);
      }
    } else {
      hits.resize(apex.size());
      for (std::size_t j = 0; j < legs.size(); ++j) {
        for (std::size_t x = 0; x < legs[j].dom().size(); ++x) hits[legs[j](x)].emplace_back(j, x);
      }
    }
  }

  bool commutes(std::size_t arrow, const std::vector<const Images*>& cone, std::size_t test_size) const {
    const Arrow& a = d.arrows()[arrow];
    if (side == Side::Limit) {
      for (std::size_t t = 0; t < test_size; ++t) {
        if (a.map((*cone[a.src])[t]) != (*cone[a.dst])[t]) return false;
      }
    } else {
      for (std::size_t x = 0; x < d.object(a.src).size(); ++x) {
        if ((*cone[a.dst])[a.map(x)] != (*cone[a.src])[x]) return false;
      }
    }
    return true;
  }

  std::size_t mediators(const GBCSpace& test, const std::vector<const Images*>& cone) const {
    std::vector<std::vector<std::size_t>> candidates;
    if (side == Side::Limit) {
      candidates.resize(test.size());
      for (std::size_t t = 0; t < test.size(); ++t) {
        Images key;
        for (const Images* c : cone) key.push_back((*c)[t]);
        auto it = by_tuple.find(key);
        if (it != by_tuple.end()) candidates[t] = it->second;
      }
      return count_mediators(test, apex, candidates);
    }
    candidates.resize(apex.size());
    for (std::size_t q = 0; q < apex.size(); ++q) {
      if (hits[q].empty()) {
        for (std::size_t t = 0; t < test.size(); ++t) candidates[q].push_back(t);
        continue;
      }
      const std::size_t v = (*cone[hits[q][0].first])[hits[q][0].second];
      bool consistent = true;
      for (const auto& [j, x] : hits[q]) consistent = consistent && (*cone[j])[x] == v;
      if (consistent) candidates[q].push_back(v);
    }
    return count_mediators(apex, test, candidates);
  }
};

}  // namespace

const std::vector<GBCSpace>& test_objects(std::size_t cap, bool classical_only) {
  static std::mutex mutex;
  static std::map<std::pair<std::size_t, bool>, std::vector<GBCSpace>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find({cap, classical_only});
  if (it != cache.end()) return it->second;
  std::vector<GBCSpace> spaces;
  for (GBCSpace& x : enumerate_spaces_up_to(cap)) {
    if (!classical_only || x.classical()) spaces.push_back(std::move(x));
  }
  return cache.emplace(std::make_pair(cap, classical_only), std::move(spaces)).first->second;
}

Verdict universal_property_check(const GBCSpace& apex, std::span<const SetMap> legs,
                                 const Diagram& d, Side side, const OracleOptions& options) {
  if (d.equivariant()) throw UnsupportedDiagram("the oracle only handles diagrams without actions");
  if (options.test_cap > kDefaultSpaceCap) {
    throw CapExceeded("oracle test objects are limited to " + std::to_string(kDefaultSpaceCap) +
                          " points",
                      kDefaultSpaceCap, "--test-cap");
  }
  Verdict out;
  if (legs.size() != d.size()) {
    out.reason = "candidate has " + std::to_string(legs.size()) + " legs for " +
                 std::to_string(d.size()) + " objects";
    return out;
  }
  for (std::size_t j = 0; j < d.size(); ++j) {
    const GBCSpace& dom = side == Side::Limit ? apex : d.object(j);
    const GBCSpace& cod = side == Side::Limit ? d.object(j) : apex;
    if (!(legs[j].dom() == dom.carrier()) || !(legs[j].cod() == cod.carrier())) {
      out.reason = "leg " + d.names()[j] + " has the wrong carriers";
      return out;
    }
    const MorphismCheck check = validate_morphism(dom, cod, legs[j]);
    if (!check.ok()) {
      out.reason = "leg " + d.names()[j] + " is not a morphism: " +
                   check.violations.front().describe(dom, cod);
      return out;
    }
  }

  Search search(apex, legs, d, side);
  {
    std::vector<Images> own;
    for (const SetMap& leg : legs) own.emplace_back(leg.images().begin(), leg.images().end());
    std::vector<const Images*> cone;
    for (const Images& i : own) cone.push_back(&i);
    for (std::size_t a = 0; a < d.arrows().size(); ++a) {
      if (!search.commutes(a, cone, apex.size())) {
        out.reason = "candidate legs do not commute with the diagram";
        return out;
      }
    }
  }

  for (const GBCSpace& test : test_objects(options.test_cap, options.classical_tests_only)) {
    ++out.tests;
    std::vector<std::vector<Images>> homs;
    for (std::size_t j = 0; j < d.size(); ++j) {
      homs.push_back(side == Side::Limit ? hom_images(test, d.object(j))
                                         : hom_images(d.object(j), test));
    }
    // Depth-first over one hom element per object, pruning on arrows whose
    // endpoints are both assigned.
    std::vector<const Images*> cone(d.size(), nullptr);
    std::vector<std::size_t> pick(d.size(), 0);
    std::size_t depth = 0;
    bool done = d.size() == 0;
    if (done) {
      ++out.cones;
      const std::size_t m = search.mediators(test, cone);
      if (m != 1) {
        out.reason = m == 0 ? "no mediating morphism" : "mediating morphism is not unique";
        out.counterexample = Counterexample{test, {}, m};
        return out;
      }
      continue;
    }
    while (!done) {
      if (pick[depth] == homs[depth].size()) {
        pick[depth] = 0;
        if (depth == 0) break;
        --depth;
        continue;
      }
      cone[depth] = &homs[depth][pick[depth]++];
      bool ok = true;
      for (std::size_t a : search.arrows_at[depth]) {
        if (!search.commutes(a, cone, test.size())) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      if (depth + 1 < d.size()) {
        ++depth;
        continue;
      }
      ++out.cones;
      const std::size_t m = search.mediators(test, cone);
      if (m != 1) {
        Counterexample ce{test, {}, m};
        for (std::size_t j = 0; j < d.size(); ++j) {
          ce.legs.push_back(side == Side::Limit
                                ? SetMap(test.carrier(), d.object(j).carrier(), *cone[j])
                                : SetMap(d.object(j).carrier(), test.carrier(), *cone[j]));
        }
        out.reason = m == 0 ? "no mediating morphism" : "mediating morphism is not unique";
        out.counterexample = std::move(ce);
        return out;
      }
    }
  }
  out.pass = true;
  return out;
}

Verdict universal_property_check(const Cone& candidate, const Diagram& d,
                                 const OracleOptions& options) {
  std::vector<SetMap> legs;
  for (const Morphism& m : candidate.legs) legs.push_back(m.map());
  return universal_property_check(candidate.apex, legs, d, Side::Limit, options);
}

Verdict universal_property_check(const Cocone& candidate, const Diagram& d,
                                 const OracleOptions& options) {
  std::vector<SetMap> legs;
  for (const Morphism& m : candidate.legs) legs.push_back(m.map());
  return universal_property_check(candidate.apex, legs, d, Side::Colimit, options);
}

}  // namespace coarsecat
