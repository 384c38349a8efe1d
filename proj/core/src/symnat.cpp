#include "coarsecat/symnat.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "coarsecat/errors.hpp"

namespace coarsecat {

const char* to_string(BornTag t) {
  switch (t) {
    case BornTag::Fin:
      return "Fin";
    case BornTag::All:
      return "All";
    case BornTag::Triv:
      return "Triv";
    case BornTag::FinCap:
      return "FinCap";
  }
  return "?";
}

const char* to_string(CoarseTag t) {
  switch (t) {
    case CoarseTag::Diag:
      return "Diag";
    case CoarseTag::Full:
      return "Full";
    case CoarseTag::Band:
      return "Band";
    case CoarseTag::FinGen:
      return "FinGen";
  }
  return "?";
}

namespace {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<std::size_t> parent_;
};

[[noreturn]] void incompatible(const std::string& what, std::vector<std::string> cls, Nat bounded,
                               Nat escaping) {
  IncompatibilityWitness w{std::move(cls), std::to_string(bounded), std::to_string(escaping)};
  throw IncompatibleStructures(what, std::move(w));
}

Nat first_missing(const std::vector<Nat>& sorted) {
  Nat x = 0;
  for (Nat v : sorted) {
    if (v != x) break;
    ++x;
  }
  return x;
}

}  // namespace

SymSpace::SymSpace(BornTag bornology, CoarseTag coarse, std::vector<Nat> f, std::vector<NatPair> r)
    : born_(bornology), coarse_(coarse) {
  if (born_ == BornTag::FinCap) {
    f_ = std::move(f);
    std::sort(f_.begin(), f_.end());
    f_.erase(std::unique(f_.begin(), f_.end()), f_.end());
    if (f_.empty()) born_ = BornTag::Triv;
  }
  if (coarse_ == CoarseTag::FinGen) {
    std::vector<Nat> points;
    for (const auto& [x, y] : r) {
      points.push_back(x);
      points.push_back(y);
    }
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());
    auto at = [&](Nat x) {
      return static_cast<std::size_t>(std::lower_bound(points.begin(), points.end(), x) - points.begin());
    };
    UnionFind uf(points.size());
    for (const auto& [x, y] : r) uf.unite(at(x), at(y));
    std::map<std::size_t, std::vector<Nat>> groups;
    for (std::size_t i = 0; i < points.size(); ++i) groups[uf.find(i)].push_back(points[i]);
    for (auto& [root, members] : groups) {
      if (members.size() > 1) classes_.push_back(std::move(members));
    }
    std::sort(classes_.begin(), classes_.end());
    for (const auto& cls : classes_) {
      for (Nat x : cls) {
        for (Nat y : cls) {
          if (x != y) r_.emplace_back(x, y);
        }
      }
    }
    std::sort(r_.begin(), r_.end());
    if (classes_.empty()) coarse_ = CoarseTag::Diag;
  }

  switch (coarse_) {
    case CoarseTag::Diag:
      break;
    case CoarseTag::Full:
      if (born_ == BornTag::Fin) incompatible("ℕ×ℕ thickens the bounded set {0} to ℕ", {"ℕ"}, 0, 1);
      if (born_ == BornTag::FinCap) {
        incompatible("ℕ×ℕ thickens a nonempty bounded set to ℕ", {"ℕ"}, f_.front(), first_missing(f_));
      }
      break;
    case CoarseTag::Band:
      if (born_ == BornTag::FinCap) {
        incompatible("band thickenings of a nonempty set are unbounded", {"ℕ"}, f_.back(),
                     f_.back() + 1);
      }
      break;
    case CoarseTag::FinGen:
      if (born_ == BornTag::FinCap) {
        for (const auto& cls : classes_) {
          const bool meets = std::any_of(cls.begin(), cls.end(), [&](Nat x) {
            return std::binary_search(f_.begin(), f_.end(), x);
          });
          if (!meets) continue;
          for (Nat x : cls) {
            if (!std::binary_search(f_.begin(), f_.end(), x)) {
              std::vector<std::string> names;
              for (Nat y : cls) names.push_back(std::to_string(y));
              const Nat inside = *std::find_if(cls.begin(), cls.end(), [&](Nat y) {
                return std::binary_search(f_.begin(), f_.end(), y);
              });
              incompatible("an E_R-class meets F without lying in it", std::move(names), inside, x);
            }
          }
        }
      }
      break;
  }
}

bool SymSpace::is_bounded(const SemilinearSet& s) const {
  switch (born_) {
    case BornTag::Fin:
      return s.is_finite();
    case BornTag::All:
      return true;
    case BornTag::Triv:
      return s.empty();
    case BornTag::FinCap:
      return is_subset(s, SemilinearSet::finite(f_));
  }
  return false;
}

SemilinearSet SymSpace::thicken_fingen(const SemilinearSet& s) const {
  SemilinearSet out = s;
  for (const auto& cls : classes_) {
    if (std::any_of(cls.begin(), cls.end(), [&](Nat x) { return s.contains(x); })) {
      out = unite(out, SemilinearSet::finite(cls));
    }
  }
  return out;
}

Nat SymSpace::support_bound() const {
  Nat b = 0;
  for (Nat x : f_) b = std::max(b, x + 1);
  for (const auto& [x, y] : r_) b = std::max({b, x + 1, y + 1});
  return b;
}

std::string SymSpace::describe() const {
  std::ostringstream os;
  os << '(' << to_string(born_);
  if (born_ == BornTag::FinCap) {
    os << '{';
    for (std::size_t i = 0; i < f_.size(); ++i) os << (i ? "," : "") << f_[i];
    os << '}';
  }
  os << ", " << to_string(coarse_);
  if (coarse_ == CoarseTag::FinGen) {
    os << '{';
    bool first = true;
    for (const auto& [x, y] : r_) {
      if (x > y) continue;
      os << (first ? "" : ",") << '(' << x << ',' << y << ')';
      first = false;
    }
    os << '}';
  }
  os << ')';
  return os.str();
}

// ---------------------------------------------------------------------------
// SymMap

SymMap::SymMap(std::vector<Nat> exceptions, Nat slope, std::int64_t offset)
    : exceptions_(std::move(exceptions)), slope_(slope), offset_(offset) {
  const std::int64_t at_threshold = static_cast<std::int64_t>(slope_ * exceptions_.size()) + offset_;
  if (at_threshold < 0) throw InvalidArgument("map tail takes negative values");
  while (!exceptions_.empty()) {
    const std::int64_t tail =
        static_cast<std::int64_t>(slope_ * (exceptions_.size() - 1)) + offset_;
    if (tail < 0 || static_cast<Nat>(tail) != exceptions_.back()) break;
    exceptions_.pop_back();
  }
}

Nat SymMap::operator()(Nat x) const {
  if (x < exceptions_.size()) return exceptions_[x];
  return static_cast<Nat>(static_cast<std::int64_t>(slope_ * x) + offset_);
}

bool SymMap::is_eventual_identity_permutation() const {
  if (slope_ != 1 || offset_ != 0) return false;
  std::vector<Nat> sorted = exceptions_;
  std::sort(sorted.begin(), sorted.end());
  for (Nat i = 0; i < sorted.size(); ++i) {
    if (sorted[i] != i) return false;
  }
  return true;
}

SemilinearSet SymMap::image(const SemilinearSet& s) const {
  std::vector<Nat> points;
  for (Nat x = 0; x < exceptions_.size(); ++x) {
    if (s.contains(x)) points.push_back(exceptions_[x]);
  }
  return unite(SemilinearSet::finite(points), affine_image(s, threshold(), slope_, offset_));
}

SemilinearSet SymMap::preimage(const SemilinearSet& s) const {
  std::vector<Nat> points;
  for (Nat x = 0; x < exceptions_.size(); ++x) {
    if (s.contains(exceptions_[x])) points.push_back(x);
  }
  return unite(SemilinearSet::finite(points), affine_preimage(s, threshold(), slope_, offset_));
}

// ---------------------------------------------------------------------------
// Morphisms

namespace {

// Image inside one E_R-class (or a single point).
bool within_one_class(const SymSpace& cod, const SemilinearSet& im) {
  if (!im.is_finite()) return false;
  const auto& pts = im.finite_part();
  if (pts.size() <= 1) return true;
  for (const auto& cls : cod.classes()) {
    if (std::all_of(pts.begin(), pts.end(),
                    [&](Nat x) { return std::binary_search(cls.begin(), cls.end(), x); })) {
      return true;
    }
  }
  return false;
}

bool related(const SymSpace& x, Nat a, Nat b) {
  return a == b || std::binary_search(x.r().begin(), x.r().end(), NatPair{a, b});
}

}  // namespace

SymMorphismVerdict validate_sym_morphism(const SymSpace& dom, const SymSpace& cod, const SymMap& f) {
  SymMorphismVerdict v;
  const SemilinearSet everything = SemilinearSet::all();

  switch (cod.bornology()) {
    case BornTag::Triv:
      v.proper = true;
      break;
    case BornTag::All:
      v.proper = dom.bornology() == BornTag::All;
      if (!v.proper) v.reason = "the preimage of ℕ is ℕ, which is unbounded in the domain";
      break;
    case BornTag::Fin:
      switch (dom.bornology()) {
        case BornTag::All:
          v.proper = true;
          break;
        case BornTag::Fin:
          v.proper = f.slope() >= 1;
          if (!v.proper) {
            v.reason = "the preimage of {" + std::to_string(f(f.threshold())) + "} is infinite";
          }
          break;
        case BornTag::Triv:
          v.reason = "the preimage of {" + std::to_string(f(0)) + "} is nonempty";
          break;
        case BornTag::FinCap: {
          const Nat x = first_missing(dom.f());
          v.reason = "the preimage of {" + std::to_string(f(x)) + "} contains the unbounded point " +
                     std::to_string(x);
          break;
        }
      }
      break;
    case BornTag::FinCap: {
      const SemilinearSet pre = f.preimage(SemilinearSet::finite(cod.f()));
      v.proper = dom.is_bounded(pre);
      if (!v.proper) v.reason = "the preimage " + pre.to_string() + " of the bounded region is unbounded";
      break;
    }
  }

  const SemilinearSet im = f.image(everything);
  if (dom.coarse() == CoarseTag::Diag || cod.coarse() == CoarseTag::Full) {
    v.controlled = true;
  } else if (dom.coarse() == CoarseTag::Full || dom.coarse() == CoarseTag::Band) {
    switch (cod.coarse()) {
      case CoarseTag::Diag:
        v.controlled = im.is_finite() && im.finite_part().size() <= 1;
        break;
      case CoarseTag::Band:
        v.controlled = dom.coarse() == CoarseTag::Band || im.is_finite();
        break;
      case CoarseTag::FinGen:
        v.controlled = within_one_class(cod, im);
        break;
      case CoarseTag::Full:
        v.controlled = true;
        break;
    }
    if (!v.controlled && v.reason.empty()) {
      v.reason = "the image " + im.to_string() + " of a connected domain is not controlled";
    }
  } else {
    v.controlled = true;
    for (const auto& [x, y] : dom.r()) {
      const bool ok = cod.coarse() == CoarseTag::Band || cod.coarse() == CoarseTag::Full ||
                      (cod.coarse() == CoarseTag::Diag ? f(x) == f(y) : related(cod, f(x), f(y)));
      if (!ok) {
        v.controlled = false;
        if (v.reason.empty()) {
          v.reason = "the pair (" + std::to_string(x) + "," + std::to_string(y) +
                     ") is mapped outside the codomain's coarse structure";
        }
        break;
      }
    }
  }
  return v;
}

// ---------------------------------------------------------------------------
// Diagrams

SymDiagram::SymDiagram(std::vector<SymSpace> objects, std::vector<SymArrow> arrows,
                       std::vector<std::string> names)
    : objects_(std::move(objects)), arrows_(std::move(arrows)), names_(std::move(names)) {
  if (names_.empty()) {
    for (std::size_t i = 0; i < objects_.size(); ++i) names_.push_back(std::to_string(i));
  }
  if (names_.size() != objects_.size()) throw InvalidArgument("diagram needs one name per object");
  for (const SymArrow& a : arrows_) {
    if (a.src >= objects_.size() || a.dst >= objects_.size()) {
      throw InvalidArgument("arrow endpoint out of range");
    }
    const SymMorphismVerdict v = validate_sym_morphism(objects_[a.src], objects_[a.dst], a.map);
    if (!v.ok()) {
      throw NotAMorphism("arrow " + names_[a.src] + " -> " + names_[a.dst] + ": " + v.reason);
    }
  }
}

bool SymDiagram::connected() const {
  if (objects_.empty()) return false;
  UnionFind uf(objects_.size());
  for (const SymArrow& a : arrows_) uf.unite(a.src, a.dst);
  for (std::size_t i = 0; i < objects_.size(); ++i) {
    if (uf.find(i) != 0) return false;
  }
  return true;
}

SymSpace sym_pushout(const SymDiagram& d) {
  if (!d.connected()) {
    throw UnsupportedCombination("symbolic colimits need a nonempty connected diagram");
  }
  for (const SymArrow& a : d.arrows()) {
    if (!a.map.is_identity()) {
      throw UnsupportedCombination("symbolic colimits need every arrow to be the identity of ℕ");
    }
  }

  // Join of the coarse structures.
  CoarseTag coarse = CoarseTag::Diag;
  std::vector<NatPair> r;
  auto rank = [](CoarseTag t) {
    switch (t) {
      case CoarseTag::Diag:
        return 0;
      case CoarseTag::FinGen:
        return 1;
      case CoarseTag::Band:
        return 2;
      case CoarseTag::Full:
        return 3;
    }
    return 0;
  };
  for (const SymSpace& x : d.objects()) {
    if (rank(x.coarse()) > rank(coarse)) coarse = x.coarse();
    r.insert(r.end(), x.r().begin(), x.r().end());
  }

  // Intersection of the bornologies.
  BornTag born = BornTag::All;
  std::vector<Nat> f;
  for (const SymSpace& x : d.objects()) {
    const BornTag t = x.bornology();
    if (born == BornTag::Triv || t == BornTag::Triv) {
      born = BornTag::Triv;
    } else if (t == BornTag::All) {
      continue;
    } else if (born == BornTag::All) {
      born = t;
      f = x.f();
    } else if (t == BornTag::FinCap) {
      if (born == BornTag::FinCap) {
        std::vector<Nat> both;
        std::set_intersection(f.begin(), f.end(), x.f().begin(), x.f().end(), std::back_inserter(both));
        f = std::move(both);
      } else {
        f = x.f();
      }
      born = BornTag::FinCap;
    }
  }

  // Largest bornology all of whose thickenings stay inside the intersection.
  switch (coarse) {
    case CoarseTag::Full:
      if (born != BornTag::All) born = BornTag::Triv;
      break;
    case CoarseTag::Diag:
      break;
    case CoarseTag::Band:
      if (born == BornTag::FinCap) born = BornTag::Triv;
      break;
    case CoarseTag::FinGen:
      if (born == BornTag::FinCap) {
        const SymSpace joined(BornTag::All, CoarseTag::FinGen, {}, r);
        std::vector<Nat> saturated;
        for (Nat x : f) {
          const SemilinearSet cls = joined.thicken_fingen(SemilinearSet::finite({x}));
          if (is_subset(cls, SemilinearSet::finite(f))) saturated.push_back(x);
        }
        f = std::move(saturated);
      }
      break;
  }
  return SymSpace(born, coarse, f, r);
}

// ---------------------------------------------------------------------------
// Admissibility

SymAdmissibility sym_admissible(const SymDiagram& d) {
  if (!d.connected()) {
    throw UnsupportedDiagram("symbolic admissibility needs a nonempty connected diagram");
  }
  Nat m = 0;
  for (const SymArrow& a : d.arrows()) {
    if (!a.map.is_eventual_identity_permutation()) {
      throw UnsupportedDiagram(
          "symbolic admissibility needs arrows permuting an initial segment and fixing the rest");
    }
    m = std::max(m, a.map.threshold());
  }

  // Set colimit: classes of the copies of [0, m), then the common tail.
  const std::size_t k = d.size();
  UnionFind uf(k * m);
  for (const SymArrow& a : d.arrows()) {
    for (Nat x = 0; x < m; ++x) uf.unite(a.src * m + x, a.dst * m + a.map(x));
  }
  std::map<std::size_t, Nat> class_index;
  for (Nat x = 0; x < m; ++x) {
    for (std::size_t j = 0; j < k; ++j) class_index.try_emplace(uf.find(j * m + x), class_index.size());
  }
  const Nat c = class_index.size();
  std::vector<SymMap> legs;
  for (std::size_t j = 0; j < k; ++j) {
    std::vector<Nat> table(m);
    for (Nat x = 0; x < m; ++x) table[x] = class_index.at(uf.find(j * m + x));
    legs.emplace_back(std::move(table), 1, static_cast<std::int64_t>(c) - static_cast<std::int64_t>(m));
  }

  Nat bound = m;
  for (const SymSpace& x : d.objects()) bound = std::max(bound, x.support_bound());
  const Nat last = bound - m + c;

  struct State {
    SemilinearSet set;
    bool finite;
    std::vector<std::size_t> chain;
  };

  SymAdmissibility out;
  for (Nat b = 0; b <= last; ++b) {
    std::deque<State> queue{State{SemilinearSet::finite({b}), true, {}}};
    std::set<std::pair<std::string, bool>> seen{{queue.front().set.to_string(), true}};
    while (!queue.empty()) {
      State s = std::move(queue.front());
      queue.pop_front();
      for (std::size_t j = 0; j < k; ++j) {
        const SymSpace& obj = d.object(j);
        const SemilinearSet pre = legs[j].preimage(s.set);
        const bool bounded = obj.bornology() == BornTag::Fin ? s.finite : obj.is_bounded(pre);
        if (!bounded) {
          out.admissible = false;
          out.witness = SymAdmissibilityWitness{b, j, s.chain, pre};
          return out;
        }
      }
      for (std::size_t i = 0; i < k; ++i) {
        const SymSpace& obj = d.object(i);
        State next{s.set, s.finite, s.chain};
        next.chain.push_back(i);
        switch (obj.coarse()) {
          case CoarseTag::Diag:
            break;
          case CoarseTag::Full:
            if (!s.set.empty()) {
              next.set = SemilinearSet::all();
              next.finite = false;
            }
            break;
          case CoarseTag::Band:
            if (!s.set.empty()) next.set = SemilinearSet::all();
            break;
          case CoarseTag::FinGen:
            next.set = legs[i].image(obj.thicken_fingen(legs[i].preimage(s.set)));
            break;
        }
        if (seen.emplace(next.set.to_string(), next.finite).second) queue.push_back(std::move(next));
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Truncation

GBCSpace truncate(const SymSpace& x, Nat n) {
  const Carrier c = Carrier::range(n + 1);
  Relation e(c);
  switch (x.coarse()) {
    case CoarseTag::Diag:
      e = Relation::diagonal(c);
      break;
    case CoarseTag::Full:
    case CoarseTag::Band:
      e = Relation::full(c);
      break;
    case CoarseTag::FinGen:
      e = Relation::diagonal(c);
      for (const auto& [a, b] : x.r()) {
        if (a <= n && b <= n) e.insert(a, b);
      }
      break;
  }
  PointSet xb(c);
  switch (x.bornology()) {
    case BornTag::Fin:
    case BornTag::All:
      xb = PointSet::full(c);
      break;
    case BornTag::Triv:
      break;
    case BornTag::FinCap:
      for (Nat v : x.f()) {
        if (v <= n) xb.insert(v);
      }
      break;
  }
  return GBCSpace(std::move(e), std::move(xb));
}

SetMap truncate(const SymMap& f, Nat n, Nat m) {
  std::vector<std::size_t> img(n + 1);
  for (Nat x = 0; x <= n; ++x) {
    img[x] = f(x);
    if (img[x] > m) {
      throw InvalidArgument("map sends " + std::to_string(x) + " beyond the truncation bound");
    }
  }
  return SetMap(Carrier::range(n + 1), Carrier::range(m + 1), std::move(img));
}

Diagram truncate(const SymDiagram& d, Nat n) {
  std::vector<GBCSpace> objects;
  for (const SymSpace& x : d.objects()) objects.push_back(truncate(x, n));
  std::vector<Arrow> arrows;
  for (const SymArrow& a : d.arrows()) {
    arrows.push_back(Arrow{a.src, a.dst, make_morphism(objects[a.src], objects[a.dst], truncate(a.map, n, n))});
  }
  return Diagram(std::move(objects), std::move(arrows), d.names());
}

// ---------------------------------------------------------------------------
// Fixtures

SymSpace n_min_max() { return SymSpace(BornTag::All, CoarseTag::Diag); }
SymSpace n_max_max() { return SymSpace(BornTag::All, CoarseTag::Full); }
SymSpace n_min_min() { return SymSpace(BornTag::Fin, CoarseTag::Diag); }
SymSpace n_max_empty() { return SymSpace(BornTag::Triv, CoarseTag::Full); }

SymDiagram exa_N() {
  return SymDiagram({n_min_max(), n_max_max(), n_min_min()},
                    {SymArrow{0, 1, SymMap::identity()}, SymArrow{0, 2, SymMap::identity()}},
                    {"N_min_max", "N_max_max", "N_min_min"});
}

SymDiagram ex_PO() { return exa_N(); }

}  // namespace coarsecat
