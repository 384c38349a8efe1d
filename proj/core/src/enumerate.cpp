#include "coarsecat/enumerate.hpp"

#include <algorithm>
#include <numeric>

#include "coarsecat/errors.hpp"

namespace coarsecat {

namespace {

void require_cap(std::size_t n, std::size_t cap) {
  if (n > cap) {
    throw CapExceeded("space enumeration on " + std::to_string(n) + " points exceeds the cap of " +
                          std::to_string(cap),
                      cap, "--test-cap");
  }
}

}  // namespace

std::vector<Relation> enumerate_partitions(const Carrier& c) {
  const std::size_t n = c.size();
  std::vector<Relation> out;
  if (n == 0) {
    out.emplace_back(c);
    return out;
  }
  std::vector<std::size_t> rgs(n, 0);
  std::vector<std::size_t> max_before(n, 0);
  while (true) {
    Relation e(c);
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = 0; y < n; ++y) {
        if (rgs[x] == rgs[y]) e.insert(x, y);
      }
    }
    out.push_back(std::move(e));
    // Next restricted growth string: rgs[i] <= 1 + max(rgs[0..i)).
    std::size_t i = n;
    while (i-- > 1) {
      if (rgs[i] <= max_before[i]) break;
    }
    if (i == 0) break;
    ++rgs[i];
    for (std::size_t j = i + 1; j < n; ++j) {
      rgs[j] = 0;
      max_before[j] = std::max(max_before[j - 1], rgs[j - 1]);
    }
  }
  return out;
}

std::vector<PointSet> saturated_regions(const Relation& e) {
  const Carrier& c = e.carrier();
  std::vector<BitVector> classes;
  BitVector seen(c.size());
  for (std::size_t x = 0; x < c.size(); ++x) {
    if (seen.test(x)) continue;
    BitVector cls = e.row(x);
    seen |= cls;
    classes.push_back(std::move(cls));
  }
  std::vector<PointSet> out;
  const std::size_t k = classes.size();
  out.reserve(std::size_t{1} << k);
  for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
    BitVector region(c.size());
    for (std::size_t i = 0; i < k; ++i) {
      if ((mask >> i) & 1U) region |= classes[i];
    }
    out.emplace_back(c, std::move(region));
  }
  return out;
}

std::vector<GBCSpace> enumerate_spaces(const Carrier& c, std::size_t cap) {
  require_cap(c.size(), cap);
  std::vector<GBCSpace> out;
  for (const Relation& e : enumerate_partitions(c)) {
    for (PointSet& xb : saturated_regions(e)) out.emplace_back(e, std::move(xb));
  }
  return out;
}

std::vector<GBCSpace> enumerate_spaces(std::size_t n, std::size_t cap) {
  require_cap(n, cap);
  return enumerate_spaces(Carrier::range(n), cap);
}

std::vector<GBCSpace> enumerate_spaces_up_to(std::size_t n, std::size_t cap) {
  std::vector<GBCSpace> out;
  for (std::size_t k = 0; k <= n; ++k) {
    auto spaces = enumerate_spaces(k, cap);
    out.insert(out.end(), spaces.begin(), spaces.end());
  }
  return out;
}

void for_each_morphism(const GBCSpace& dom, const GBCSpace& cod,
                       const std::function<bool(const std::vector<std::size_t>&)>& visit,
                       std::size_t cap) {
  const std::size_t n = dom.size(), m = cod.size();
  std::size_t total = 1;
  for (std::size_t i = 0; i < n && total <= cap; ++i) total *= m;
  if (total > cap) {
    throw CapExceeded("hom-set enumeration exceeds the cap of " + std::to_string(cap) + " maps",
                      cap, "--search-cap");
  }
  if (n == 0) {
    visit({});
    return;
  }
  if (m == 0) return;

  const Relation& ed = dom.max_entourage();
  const Relation& ec = cod.max_entourage();
  const PointSet& bd = dom.bounded_region();
  const PointSet& bc = cod.bounded_region();
  const bool acted = dom.action() && cod.action();

  // Depth-first over images with properness and controlledness checked as
  // soon as both ends of a condition are assigned.
  std::vector<std::size_t> img(n, 0);
  std::size_t depth = 0;
  std::vector<std::size_t> next(n, 0);
  bool keep_going = true;
  while (keep_going) {
    if (next[depth] == m) {
      next[depth] = 0;
      if (depth == 0) break;
      --depth;
      continue;
    }
    const std::size_t y = next[depth]++;
    if (bc.contains(y) && !bd.contains(depth)) continue;
    bool ok = true;
    for (std::size_t x = 0; x < depth && ok; ++x) {
      if (ed.contains(depth, x) && !ec.contains(y, img[x])) ok = false;
    }
    if (!ok) continue;
    img[depth] = y;
    if (depth + 1 < n) {
      ++depth;
      continue;
    }
    if (acted) {
      const auto gd = dom.action()->generators();
      const auto gc = cod.action()->generators();
      bool eq = gd.size() == gc.size();
      for (std::size_t g = 0; g < gd.size() && eq; ++g) {
        for (std::size_t x = 0; x < n && eq; ++x) eq = img[gd[g](x)] == gc[g](img[x]);
      }
      if (!eq) continue;
    }
    keep_going = visit(img);
  }
}

std::vector<Morphism> enumerate_morphisms(const GBCSpace& dom, const GBCSpace& cod,
                                          std::size_t cap) {
  std::vector<Morphism> out;
  for_each_morphism(
      dom, cod,
      [&](const std::vector<std::size_t>& img) {
        out.push_back(make_morphism(dom, cod, SetMap(dom.carrier(), cod.carrier(), img)));
        return true;
      },
      cap);
  return out;
}

std::size_t count_morphisms(const GBCSpace& dom, const GBCSpace& cod, std::size_t cap) {
  std::size_t count = 0;
  for_each_morphism(
      dom, cod,
      [&](const std::vector<std::size_t>&) {
        ++count;
        return true;
      },
      cap);
  return count;
}

std::vector<SetMap> automorphisms(const GBCSpace& x) {
  std::vector<std::size_t> perm(x.size());
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::vector<SetMap> out;
  const GBCSpace plain(x.max_entourage(), x.bounded_region());
  do {
    SetMap f(x.carrier(), x.carrier(), perm);
    if (is_morphism(plain, plain, f) && is_morphism(plain, plain, inverse(f))) {
      out.push_back(std::move(f));
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

std::vector<GBCSpace> with_cyclic_actions(const GBCSpace& x) {
  std::vector<GBCSpace> out;
  for (const SetMap& g : automorphisms(x)) {
    out.emplace_back(x.max_entourage(), x.bounded_region(),
                     GroupAction(x.carrier(), std::vector<SetMap>{g}));
  }
  return out;
}

}  // namespace coarsecat
