#include "coarsecat/semilinear.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "coarsecat/errors.hpp"

namespace coarsecat {

namespace {

// First x >= from with x ≡ r (mod p).
Nat align(Nat from, Nat r, Nat p) { return from + (r + p - from % p) % p; }

}  // namespace

SemilinearSet::SemilinearSet() : residue_mask_(1, false) {}

SemilinearSet SemilinearSet::all() {
  return from_predicate(0, 1, [](Nat) { return true; });
}

SemilinearSet SemilinearSet::finite(const std::vector<Nat>& members) {
  SemilinearSet s;
  s.finite_ = members;
  std::sort(s.finite_.begin(), s.finite_.end());
  s.finite_.erase(std::unique(s.finite_.begin(), s.finite_.end()), s.finite_.end());
  s.threshold_ = s.finite_.empty() ? 0 : s.finite_.back() + 1;
  return s;
}

SemilinearSet SemilinearSet::progression(Nat start, Nat period) {
  if (period == 0) return finite({start});
  return from_predicate(start, period, [=](Nat x) { return x >= start && (x - start) % period == 0; });
}

SemilinearSet SemilinearSet::interval(Nat lo, Nat hi) {
  std::vector<Nat> members;
  for (Nat x = lo; x < hi; ++x) members.push_back(x);
  return finite(members);
}

SemilinearSet SemilinearSet::at_least(Nat lo) {
  return from_predicate(lo, 1, [=](Nat x) { return x >= lo; });
}

SemilinearSet SemilinearSet::from_predicate(Nat threshold, Nat period,
                                            const std::function<bool(Nat)>& member) {
  if (period == 0) period = 1;
  SemilinearSet s;
  s.residue_mask_.assign(period, false);
  for (Nat r = 0; r < period; ++r) s.residue_mask_[r] = member(align(threshold, r, period));
  for (Nat x = 0; x < threshold; ++x) {
    if (member(x)) s.finite_.push_back(x);
  }
  s.threshold_ = threshold;
  s.period_ = period;

  if (!s.tail_nonempty()) {
    s.period_ = 1;
    s.residue_mask_.assign(1, false);
    s.threshold_ = s.finite_.empty() ? 0 : s.finite_.back() + 1;
    return s;
  }
  // Smallest period: the residue pattern must repeat with every divisor
  // tried, and eventual periods are closed under gcd.
  for (Nat d = 1; d <= period; ++d) {
    if (period % d != 0) continue;
    bool periodic = true;
    for (Nat r = 0; r < period && periodic; ++r) {
      periodic = s.residue_mask_[r] == s.residue_mask_[r % d];
    }
    if (periodic) {
      s.residue_mask_.resize(d);
      s.period_ = d;
      break;
    }
  }
  // Residues were sampled relative to the threshold; the mask is indexed by
  // x mod period, which align() already respects.
  while (s.threshold_ > 0) {
    const Nat x = s.threshold_ - 1;
    const bool in_finite = !s.finite_.empty() && s.finite_.back() == x;
    if (in_finite != static_cast<bool>(s.residue_mask_[x % s.period_])) break;
    if (in_finite) s.finite_.pop_back();
    --s.threshold_;
  }
  return s;
}

bool SemilinearSet::tail_nonempty() const noexcept {
  return std::find(residue_mask_.begin(), residue_mask_.end(), true) != residue_mask_.end();
}

bool SemilinearSet::contains(Nat x) const {
  if (x < threshold_) return std::binary_search(finite_.begin(), finite_.end(), x);
  return residue_mask_[x % period_];
}

bool SemilinearSet::is_all() const {
  return finite_.size() == threshold_ &&
         std::all_of(residue_mask_.begin(), residue_mask_.end(), [](bool b) { return b; });
}

std::optional<Nat> SemilinearSet::min() const {
  if (!finite_.empty()) return finite_.front();
  for (Nat x = threshold_; x < threshold_ + period_; ++x) {
    if (residue_mask_[x % period_]) return x;
  }
  return std::nullopt;
}

std::optional<Nat> SemilinearSet::max() const {
  if (tail_nonempty() || finite_.empty()) return std::nullopt;
  return finite_.back();
}

std::vector<Nat> SemilinearSet::members_below(Nat bound) const {
  std::vector<Nat> out;
  for (Nat x = 0; x < bound; ++x) {
    if (contains(x)) out.push_back(x);
  }
  return out;
}

std::vector<Nat> SemilinearSet::residues() const {
  std::vector<Nat> out;
  for (Nat r = 0; r < period_; ++r) {
    if (residue_mask_[r]) out.push_back(r);
  }
  return out;
}

namespace {

SemilinearSet combine(const SemilinearSet& a, const SemilinearSet& b,
                      const std::function<bool(bool, bool)>& op) {
  const Nat t = std::max(a.threshold(), b.threshold());
  const Nat p = std::lcm(a.period(), b.period());
  return SemilinearSet::from_predicate(t, p, [&](Nat x) { return op(a.contains(x), b.contains(x)); });
}

}  // namespace

SemilinearSet unite(const SemilinearSet& a, const SemilinearSet& b) {
  return combine(a, b, [](bool x, bool y) { return x || y; });
}

SemilinearSet intersect(const SemilinearSet& a, const SemilinearSet& b) {
  return combine(a, b, [](bool x, bool y) { return x && y; });
}

SemilinearSet difference(const SemilinearSet& a, const SemilinearSet& b) {
  return combine(a, b, [](bool x, bool y) { return x && !y; });
}

SemilinearSet complement(const SemilinearSet& a) {
  return SemilinearSet::from_predicate(a.threshold(), a.period(),
                                       [&](Nat x) { return !a.contains(x); });
}

bool is_subset(const SemilinearSet& a, const SemilinearSet& b) { return difference(a, b).empty(); }

std::string SemilinearSet::to_string() const {
  if (empty()) return "∅";
  if (is_all()) return "ℕ";
  std::ostringstream os;
  if (!finite_.empty()) {
    os << '{';
    for (std::size_t i = 0; i < finite_.size(); ++i) os << (i ? "," : "") << finite_[i];
    os << '}';
  }
  if (tail_nonempty()) {
    if (!finite_.empty()) os << " ∪ ";
    os << "{x ≥ " << threshold_;
    if (period_ > 1) {
      os << " : x ≡ ";
      bool first = true;
      for (Nat r : residues()) {
        os << (first ? "" : ",") << r;
        first = false;
      }
      os << " mod " << period_;
    }
    os << '}';
  }
  return os.str();
}

namespace {

Nat affine(Nat x, Nat slope, std::int64_t offset) {
  const std::int64_t v = static_cast<std::int64_t>(slope * x) + offset;
  if (v < 0) throw InvalidArgument("affine map leaves ℕ");
  return static_cast<Nat>(v);
}

}  // namespace

SemilinearSet affine_preimage(const SemilinearSet& s, Nat from, Nat slope, std::int64_t offset) {
  if (slope == 0) {
    return s.contains(affine(from, 0, offset)) ? SemilinearSet::at_least(from) : SemilinearSet();
  }
  // From t on, slope·x + offset >= s.threshold().
  const std::int64_t need = static_cast<std::int64_t>(s.threshold()) - offset;
  Nat t = from;
  if (need > 0) t = std::max<Nat>(t, (static_cast<Nat>(need) + slope - 1) / slope);
  return SemilinearSet::from_predicate(t, s.period(), [&](Nat x) {
    return x >= from && s.contains(affine(x, slope, offset));
  });
}

SemilinearSet affine_image(const SemilinearSet& s, Nat from, Nat slope, std::int64_t offset) {
  const Nat t = std::max(from, s.threshold());
  std::vector<Nat> points;
  for (Nat x : s.finite_part()) {
    if (x >= from) points.push_back(affine(x, slope, offset));
  }
  SemilinearSet out = SemilinearSet::finite(points);
  for (Nat r : s.residues()) {
    const Nat x0 = align(t, r, s.period());
    out = unite(out, SemilinearSet::progression(affine(x0, slope, offset), slope * s.period()));
  }
  return out;
}

}  // namespace coarsecat
