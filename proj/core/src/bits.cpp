#include "coarsecat/bits.hpp"

#include <algorithm>

namespace coarsecat {

BitVector::BitVector(std::size_t size, bool value)
    : size_(size), words_(words_for(size), value ? ~Word{0} : Word{0}) {
  trim();
}

void BitVector::trim() noexcept {
  if (const std::size_t rem = size_ % kWordBits; rem != 0 && !words_.empty()) {
    words_.back() &= (Word{1} << rem) - 1;
  }
}

void BitVector::set_all() noexcept {
  std::fill(words_.begin(), words_.end(), ~Word{0});
  trim();
}

void BitVector::clear() noexcept { std::fill(words_.begin(), words_.end(), Word{0}); }

std::size_t BitVector::count() const noexcept {
  std::size_t c = 0;
  for (Word w : words_) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

bool BitVector::any() const noexcept {
  return std::any_of(words_.begin(), words_.end(), [](Word w) { return w != 0; });
}

BitVector& BitVector::operator|=(const BitVector& o) noexcept {
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
  return *this;
}

BitVector& BitVector::operator&=(const BitVector& o) noexcept {
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
  return *this;
}

BitVector& BitVector::operator-=(const BitVector& o) noexcept {
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
  return *this;
}

BitVector BitVector::operator~() const {
  BitVector r = *this;
  for (Word& w : r.words_) w = ~w;
  r.trim();
  return r;
}

bool BitVector::is_subset_of(const BitVector& o) const noexcept {
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if ((words_[i] & ~o.words_[i]) != 0) return false;
  }
  return true;
}

bool BitVector::intersects(const BitVector& o) const noexcept {
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if ((words_[i] & o.words_[i]) != 0) return true;
  }
  return false;
}

std::size_t BitVector::next(std::size_t from) const noexcept {
  if (from >= size_) return size_;
  std::size_t w = from / kWordBits;
  Word bits = words_[w] & (~Word{0} << (from % kWordBits));
  while (true) {
    if (bits != 0) return w * kWordBits + static_cast<std::size_t>(std::countr_zero(bits));
    if (++w == words_.size()) return size_;
    bits = words_[w];
  }
}

std::vector<std::size_t> BitVector::indices() const {
  std::vector<std::size_t> out;
  out.reserve(count());
  for_each([&](std::size_t i) { out.push_back(i); });
  return out;
}

std::strong_ordering operator<=>(const BitVector& a, const BitVector& b) {
  if (auto c = a.size_ <=> b.size_; c != 0) return c;
  // Lexicographic by index: the lowest differing bit decides.
  for (std::size_t i = 0; i < a.words_.size(); ++i) {
    const Word diff = a.words_[i] ^ b.words_[i];
    if (diff != 0) {
      const Word low = diff & (~diff + 1);
      return (a.words_[i] & low) != 0 ? std::strong_ordering::greater
                                      : std::strong_ordering::less;
    }
  }
  return std::strong_ordering::equal;
}

std::size_t BitVector::hash() const noexcept {
  std::size_t h = size_ * 0x9E3779B97F4A7C15ULL;
  for (Word w : words_) {
    h ^= static_cast<std::size_t>(w) + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

}  // namespace coarsecat
