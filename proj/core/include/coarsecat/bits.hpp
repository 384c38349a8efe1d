#pragma once

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace coarsecat {

using Word = std::uint64_t;
inline constexpr std::size_t kWordBits = 64;

constexpr std::size_t words_for(std::size_t bits) {
  return (bits + kWordBits - 1) / kWordBits;
}

// Fixed-size dynamic bitset. Padding bits past size() are always zero, so
// word-wise comparison and hashing are exact.
class BitVector {
 public:
  BitVector() = default;
  explicit BitVector(std::size_t size, bool value = false);

  std::size_t size() const noexcept { return size_; }
  bool test(std::size_t i) const noexcept {
    return (words_[i / kWordBits] >> (i % kWordBits)) & 1U;
  }
  void set(std::size_t i) noexcept { words_[i / kWordBits] |= Word{1} << (i % kWordBits); }
  void reset(std::size_t i) noexcept { words_[i / kWordBits] &= ~(Word{1} << (i % kWordBits)); }
  void assign(std::size_t i, bool v) noexcept { v ? set(i) : reset(i); }

  void set_all() noexcept;
  void clear() noexcept;

  std::size_t count() const noexcept;
  bool any() const noexcept;
  bool none() const noexcept { return !any(); }
  bool all() const noexcept { return count() == size_; }

  BitVector& operator|=(const BitVector& o) noexcept;
  BitVector& operator&=(const BitVector& o) noexcept;
  // Set difference.
  BitVector& operator-=(const BitVector& o) noexcept;
  BitVector operator~() const;

  bool is_subset_of(const BitVector& o) const noexcept;
  bool intersects(const BitVector& o) const noexcept;

  // Index of the first set bit at or after `from`, or size() if none.
  std::size_t next(std::size_t from) const noexcept;
  std::size_t first() const noexcept { return next(0); }

  template <typename F>
  void for_each(F&& f) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      Word bits = words_[w];
      while (bits != 0) {
        const auto bit = static_cast<std::size_t>(std::countr_zero(bits));
        f(w * kWordBits + bit);
        bits &= bits - 1;
      }
    }
  }

  std::vector<std::size_t> indices() const;

  std::span<const Word> words() const noexcept { return words_; }
  std::span<Word> words() noexcept { return words_; }

  friend bool operator==(const BitVector&, const BitVector&) = default;
  friend std::strong_ordering operator<=>(const BitVector& a, const BitVector& b);

  std::size_t hash() const noexcept;

 private:
  void trim() noexcept;

  std::size_t size_ = 0;
  std::vector<Word> words_;
};

inline BitVector operator|(BitVector a, const BitVector& b) { return a |= b; }
inline BitVector operator&(BitVector a, const BitVector& b) { return a &= b; }
inline BitVector operator-(BitVector a, const BitVector& b) { return a -= b; }

}  // namespace coarsecat
