#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace permsq::detail {

// Set of values in [1, 64] packed in one word. rank_below(v) counts members
// strictly smaller than v, which is what every incremental
// order-isomorphism check in the library needs.
class SmallValueMask {
 public:
  explicit SmallValueMask(int /*capacity*/ = 0) {}

  void insert(int v) noexcept { bits_ |= bit(v); }
  void erase(int v) noexcept { bits_ &= ~bit(v); }
  int rank_below(int v) const noexcept {
    return std::popcount(bits_ & (bit(v) - 1));
  }

 private:
  static std::uint64_t bit(int v) noexcept {
    return std::uint64_t{1} << (v - 1);
  }
  std::uint64_t bits_ = 0;
};

class LargeValueMask {
 public:
  explicit LargeValueMask(int capacity)
      : words_(static_cast<std::size_t>(capacity) / 64 + 1, 0) {}

  void insert(int v) { words_[index(v)] |= bit(v); }
  void erase(int v) { words_[index(v)] &= ~bit(v); }
  int rank_below(int v) const {
    const std::size_t w = index(v);
    int r = std::popcount(words_[w] & (bit(v) - 1));
    for (std::size_t i = 0; i < w; ++i) r += std::popcount(words_[i]);
    return r;
  }

 private:
  static std::size_t index(int v) { return static_cast<std::size_t>(v - 1) / 64; }
  static std::uint64_t bit(int v) {
    return std::uint64_t{1} << ((v - 1) % 64);
  }
  std::vector<std::uint64_t> words_;
};

inline constexpr int kSmallMaskLimit = 64;

}  // namespace permsq::detail
