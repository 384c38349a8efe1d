#include "coarsecat/relalg.hpp"

#include <algorithm>
#include <unordered_map>

#include "coarsecat/errors.hpp"

namespace coarsecat {

struct Carrier::Data {
  std::vector<std::string> names;
  std::unordered_map<std::string, std::size_t> index;
};

Carrier::Carrier() {
  static const auto empty = std::make_shared<const Data>();
  data_ = empty;
}

Carrier::Carrier(std::vector<std::string> elements) {
  auto data = std::make_shared<Data>();
  data->index.reserve(elements.size());
  for (std::size_t i = 0; i < elements.size(); ++i) {
    if (!data->index.emplace(elements[i], i).second) {
      throw InvalidArgument("duplicate carrier element '" + elements[i] + "'");
    }
  }
  data->names = std::move(elements);
  data_ = std::move(data);
}

Carrier Carrier::range(std::size_t n) {
  std::vector<std::string> names;
  names.reserve(n);
  for (std::size_t i = 0; i < n; ++i) names.push_back(std::to_string(i));
  return Carrier(std::move(names));
}

std::size_t Carrier::size() const noexcept { return data_->names.size(); }

const std::string& Carrier::name(std::size_t i) const { return data_->names.at(i); }

std::span<const std::string> Carrier::elements() const noexcept { return data_->names; }

bool Carrier::contains(std::string_view name) const {
  return data_->index.count(std::string(name)) != 0;
}

std::size_t Carrier::index(std::string_view name) const {
  auto it = data_->index.find(std::string(name));
  if (it == data_->index.end()) {
    throw InvalidArgument("unknown point '" + std::string(name) + "'");
  }
  return it->second;
}

bool operator==(const Carrier& a, const Carrier& b) {
  return a.data_ == b.data_ || a.data_->names == b.data_->names;
}

Carrier product_carrier(std::span<const Carrier> factors) {
  std::size_t total = 1;
  for (const Carrier& f : factors) total *= f.size();
  std::vector<std::string> names;
  names.reserve(total);
  for (std::size_t i = 0; i < total; ++i) {
    const auto coords = product_coordinates(factors, i);
    std::string name = "(";
    for (std::size_t j = 0; j < coords.size(); ++j) {
      if (j != 0) name += ',';
      name += factors[j].name(coords[j]);
    }
    name += ')';
    names.push_back(std::move(name));
  }
  return Carrier(std::move(names));
}

std::vector<std::size_t> product_coordinates(std::span<const Carrier> factors, std::size_t index) {
  std::vector<std::size_t> coords(factors.size());
  for (std::size_t j = factors.size(); j-- > 0;) {
    coords[j] = index % factors[j].size();
    index /= factors[j].size();
  }
  return coords;
}

Carrier coproduct_carrier(std::span<const Carrier> summands) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < summands.size(); ++i) {
    for (const auto& x : summands[i].elements()) names.push_back(std::to_string(i) + ":" + x);
  }
  return Carrier(std::move(names));
}

void require_same_carrier(const Carrier& a, const Carrier& b, std::string_view op) {
  if (!(a == b)) {
    throw CarrierMismatch(std::string(op) + ": operands live on different carriers");
  }
}

// ---------------------------------------------------------------------------
// PointSet

PointSet::PointSet() = default;

PointSet::PointSet(Carrier carrier) : carrier_(std::move(carrier)), members_(carrier_.size()) {}

PointSet::PointSet(Carrier carrier, BitVector members)
    : carrier_(std::move(carrier)), members_(std::move(members)) {
  if (members_.size() != carrier_.size()) {
    throw InvalidArgument("point set width does not match its carrier");
  }
}

PointSet::PointSet(Carrier carrier, std::initializer_list<std::size_t> members)
    : PointSet(std::move(carrier)) {
  for (std::size_t i : members) {
    if (i >= carrier_.size()) throw InvalidArgument("point index out of range");
    insert(i);
  }
}

PointSet PointSet::full(Carrier carrier) {
  const std::size_t n = carrier.size();
  return PointSet(std::move(carrier), BitVector(n, true));
}

PointSet PointSet::from_names(Carrier carrier, std::span<const std::string> names) {
  PointSet s(std::move(carrier));
  for (const auto& n : names) s.insert(s.carrier().index(n));
  return s;
}

std::vector<std::string> PointSet::names() const {
  std::vector<std::string> out;
  members_.for_each([&](std::size_t i) { out.push_back(carrier_.name(i)); });
  return out;
}

bool operator==(const PointSet& a, const PointSet& b) {
  return a.members_ == b.members_ && a.carrier_ == b.carrier_;
}

std::strong_ordering operator<=>(const PointSet& a, const PointSet& b) {
  return a.members_ <=> b.members_;
}

// ---------------------------------------------------------------------------
// Relation

Relation::Relation() = default;

Relation::Relation(Carrier carrier)
    : carrier_(std::move(carrier)),
      n_(carrier_.size()),
      stride_(words_for(n_)),
      bits_(n_ * stride_, Word{0}) {}

Relation::Relation(Carrier carrier, std::span<const Pair> pairs) : Relation(std::move(carrier)) {
  for (auto [x, y] : pairs) {
    if (x >= n_ || y >= n_) throw InvalidArgument("relation pair out of range");
    insert(x, y);
  }
}

Relation::Relation(Carrier carrier, std::initializer_list<Pair> pairs)
    : Relation(std::move(carrier), std::span<const Pair>(pairs.begin(), pairs.size())) {}

Relation Relation::diagonal(Carrier carrier) {
  Relation r(std::move(carrier));
  for (std::size_t i = 0; i < r.n_; ++i) r.insert(i, i);
  return r;
}

Relation Relation::full(Carrier carrier) {
  return square(PointSet::full(std::move(carrier)));
}

Relation Relation::square(const PointSet& s) {
  Relation r(s.carrier());
  s.bits().for_each([&](std::size_t x) {
    auto row = r.row_words(x);
    std::copy(s.bits().words().begin(), s.bits().words().end(), row.begin());
  });
  return r;
}

BitVector Relation::row(std::size_t x) const {
  BitVector out(n_);
  auto src = row_words(x);
  std::copy(src.begin(), src.end(), out.words().begin());
  return out;
}

std::size_t Relation::size() const noexcept {
  std::size_t c = 0;
  for (Word w : bits_) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

bool Relation::empty() const noexcept {
  return std::all_of(bits_.begin(), bits_.end(), [](Word w) { return w == 0; });
}

std::vector<Pair> Relation::pairs() const {
  std::vector<Pair> out;
  for (std::size_t x = 0; x < n_; ++x) {
    for (std::size_t y = 0; y < n_; ++y) {
      if (contains(x, y)) out.emplace_back(x, y);
    }
  }
  return out;
}

bool Relation::is_reflexive() const noexcept {
  for (std::size_t i = 0; i < n_; ++i) {
    if (!contains(i, i)) return false;
  }
  return true;
}

bool Relation::is_symmetric() const noexcept {
  for (std::size_t x = 0; x < n_; ++x) {
    for (std::size_t y = x + 1; y < n_; ++y) {
      if (contains(x, y) != contains(y, x)) return false;
    }
  }
  return true;
}

bool Relation::is_transitive() const { return is_subset(compose(*this, *this), *this); }

bool operator==(const Relation& a, const Relation& b) {
  return a.bits_ == b.bits_ && a.carrier_ == b.carrier_;
}

std::strong_ordering operator<=>(const Relation& a, const Relation& b) {
  if (auto c = a.n_ <=> b.n_; c != 0) return c;
  // Row-major, lowest differing (x, y) decides.
  for (std::size_t i = 0; i < a.bits_.size(); ++i) {
    const Word diff = a.bits_[i] ^ b.bits_[i];
    if (diff != 0) {
      const Word low = diff & (~diff + 1);
      return (a.bits_[i] & low) != 0 ? std::strong_ordering::greater
                                     : std::strong_ordering::less;
    }
  }
  return std::strong_ordering::equal;
}

std::size_t Relation::hash() const noexcept {
  std::size_t h = n_;
  for (Word w : bits_) h ^= static_cast<std::size_t>(w) + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2);
  return h;
}

// ---------------------------------------------------------------------------
// Operations

Relation inverse(const Relation& u) {
  Relation out(u.carrier());
  const std::size_t n = u.points();
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      if (u.contains(x, y)) out.insert(y, x);
    }
  }
  return out;
}

Relation compose(const Relation& u, const Relation& v) {
  require_same_carrier(u.carrier(), v.carrier(), "compose");
  Relation out(u.carrier());
  const std::size_t n = u.points();
  for (std::size_t x = 0; x < n; ++x) {
    auto dst = out.row_words(x);
    auto mid = u.row_words(x);
    for (std::size_t w = 0; w < mid.size(); ++w) {
      Word bits = mid[w];
      while (bits != 0) {
        const std::size_t z = w * kWordBits + static_cast<std::size_t>(std::countr_zero(bits));
        bits &= bits - 1;
        auto src = v.row_words(z);
        for (std::size_t k = 0; k < dst.size(); ++k) dst[k] |= src[k];
      }
    }
  }
  return out;
}

PointSet thicken(const Relation& u, const PointSet& b) {
  require_same_carrier(u.carrier(), b.carrier(), "thicken");
  PointSet out(u.carrier());
  const auto target = b.bits().words();
  for (std::size_t x = 0; x < u.points(); ++x) {
    auto row = u.row_words(x);
    for (std::size_t k = 0; k < row.size(); ++k) {
      if ((row[k] & target[k]) != 0) {
        out.insert(x);
        break;
      }
    }
  }
  return out;
}

Relation equivalence_closure(const Carrier& carrier, std::span<const Relation> generators) {
  Relation r = Relation::diagonal(carrier);
  for (const Relation& g : generators) {
    require_same_carrier(carrier, g.carrier(), "equivalence_closure");
    r = unite(r, unite(g, inverse(g)));
  }
  // r is reflexive and symmetric; squaring reaches the transitive closure in
  // O(log n) rounds.
  while (true) {
    Relation next = compose(r, r);
    if (next == r) return r;
    r = std::move(next);
  }
}

Relation unite(const Relation& a, const Relation& b) {
  require_same_carrier(a.carrier(), b.carrier(), "union");
  Relation out = a;
  for (std::size_t x = 0; x < a.points(); ++x) {
    auto dst = out.row_words(x);
    auto src = b.row_words(x);
    for (std::size_t k = 0; k < dst.size(); ++k) dst[k] |= src[k];
  }
  return out;
}

Relation intersect(const Relation& a, const Relation& b) {
  require_same_carrier(a.carrier(), b.carrier(), "intersect");
  Relation out = a;
  for (std::size_t x = 0; x < a.points(); ++x) {
    auto dst = out.row_words(x);
    auto src = b.row_words(x);
    for (std::size_t k = 0; k < dst.size(); ++k) dst[k] &= src[k];
  }
  return out;
}

bool is_subset(const Relation& a, const Relation& b) {
  require_same_carrier(a.carrier(), b.carrier(), "is_subset");
  for (std::size_t x = 0; x < a.points(); ++x) {
    auto ra = a.row_words(x);
    auto rb = b.row_words(x);
    for (std::size_t k = 0; k < ra.size(); ++k) {
      if ((ra[k] & ~rb[k]) != 0) return false;
    }
  }
  return true;
}

PointSet unite(const PointSet& a, const PointSet& b) {
  require_same_carrier(a.carrier(), b.carrier(), "union");
  return PointSet(a.carrier(), a.bits() | b.bits());
}

PointSet intersect(const PointSet& a, const PointSet& b) {
  require_same_carrier(a.carrier(), b.carrier(), "intersect");
  return PointSet(a.carrier(), a.bits() & b.bits());
}

PointSet difference(const PointSet& a, const PointSet& b) {
  require_same_carrier(a.carrier(), b.carrier(), "difference");
  return PointSet(a.carrier(), a.bits() - b.bits());
}

PointSet complement(const PointSet& a) { return PointSet(a.carrier(), ~a.bits()); }

bool is_subset(const PointSet& a, const PointSet& b) {
  require_same_carrier(a.carrier(), b.carrier(), "is_subset");
  return a.bits().is_subset_of(b.bits());
}

Carrier sub_carrier(const PointSet& s) {
  if (s.is_full()) return s.carrier();
  return Carrier(s.names());
}

Relation restrict(const Relation& r, const PointSet& s) {
  require_same_carrier(r.carrier(), s.carrier(), "restrict");
  const auto idx = s.indices();
  Relation out(sub_carrier(s));
  for (std::size_t i = 0; i < idx.size(); ++i) {
    for (std::size_t j = 0; j < idx.size(); ++j) {
      if (r.contains(idx[i], idx[j])) out.insert(i, j);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// SetMap

SetMap::SetMap(Carrier dom, Carrier cod, std::vector<std::size_t> images)
    : dom_(std::move(dom)), cod_(std::move(cod)), images_(std::move(images)) {
  if (images_.size() != dom_.size()) {
    throw InvalidArgument("map is not total on its domain");
  }
  for (std::size_t y : images_) {
    if (y >= cod_.size()) throw InvalidArgument("map value outside codomain");
  }
}

SetMap SetMap::identity(const Carrier& c) {
  std::vector<std::size_t> img(c.size());
  for (std::size_t i = 0; i < img.size(); ++i) img[i] = i;
  return SetMap(c, c, std::move(img));
}

SetMap SetMap::inclusion(const PointSet& s) {
  return SetMap(sub_carrier(s), s.carrier(), s.indices());
}

SetMap SetMap::constant(const Carrier& dom, const Carrier& cod, std::size_t value) {
  return SetMap(dom, cod, std::vector<std::size_t>(dom.size(), value));
}

bool SetMap::is_injective() const {
  BitVector seen(cod_.size());
  for (std::size_t y : images_) {
    if (seen.test(y)) return false;
    seen.set(y);
  }
  return true;
}

bool SetMap::is_surjective() const {
  BitVector seen(cod_.size());
  for (std::size_t y : images_) seen.set(y);
  return seen.all();
}

bool operator==(const SetMap& a, const SetMap& b) {
  return a.images_ == b.images_ && a.dom_ == b.dom_ && a.cod_ == b.cod_;
}

SetMap compose(const SetMap& g, const SetMap& f) {
  require_same_carrier(f.cod(), g.dom(), "compose maps");
  std::vector<std::size_t> img(f.dom().size());
  for (std::size_t x = 0; x < img.size(); ++x) img[x] = g(f(x));
  return SetMap(f.dom(), g.cod(), std::move(img));
}

SetMap inverse(const SetMap& f) {
  if (!f.is_bijective()) throw InvalidArgument("map is not a bijection");
  std::vector<std::size_t> img(f.cod().size());
  for (std::size_t x = 0; x < f.dom().size(); ++x) img[f(x)] = x;
  return SetMap(f.cod(), f.dom(), std::move(img));
}

PointSet image(const SetMap& f, const PointSet& s) {
  require_same_carrier(f.dom(), s.carrier(), "image");
  PointSet out(f.cod());
  s.bits().for_each([&](std::size_t x) { out.insert(f(x)); });
  return out;
}

PointSet preimage(const SetMap& f, const PointSet& s) {
  require_same_carrier(f.cod(), s.carrier(), "preimage");
  PointSet out(f.dom());
  for (std::size_t x = 0; x < f.dom().size(); ++x) {
    if (s.contains(f(x))) out.insert(x);
  }
  return out;
}

Relation image(const SetMap& f, const Relation& u) {
  require_same_carrier(f.dom(), u.carrier(), "image");
  Relation out(f.cod());
  const std::size_t n = f.dom().size();
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      if (u.contains(x, y)) out.insert(f(x), f(y));
    }
  }
  return out;
}

Relation preimage(const SetMap& f, const Relation& v) {
  require_same_carrier(f.cod(), v.carrier(), "preimage");
  Relation out(f.dom());
  const std::size_t n = f.dom().size();
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      if (v.contains(f(x), f(y))) out.insert(x, y);
    }
  }
  return out;
}

}  // namespace coarsecat
