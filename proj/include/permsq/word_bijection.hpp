#pragma once

// Binary words and the (213, 231)-avoiding permutations: the bijection in
// both directions and shuffle-square detection for binary words.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "permsq/error.hpp"
#include "permsq/perm.hpp"

namespace permsq {

using BinaryWord = std::vector<std::uint8_t>;

inline constexpr int kDefaultSquareWordCap = 20;

inline BinaryWord parse_binary_word(std::string_view text) {
  BinaryWord u;
  for (char c : text) {
    if (c != '0' && c != '1') {
      throw Error(ErrorCode::kParse, "binary words use only 0 and 1");
    }
    u.push_back(static_cast<std::uint8_t>(c - '0'));
  }
  return u;
}

inline std::string format_binary_word(const BinaryWord& u) {
  std::string out;
  for (auto b : u) out += static_cast<char>('0' + b);
  return out;
}

// 0s become 1..k left to right, 1s become n..k+1 left to right.
inline Permutation bin_to_perm(const BinaryWord& u) {
  const int n = static_cast<int>(u.size());
  std::vector<int> out;
  out.reserve(u.size());
  int next_low = 1;
  int next_high = n;
  for (auto b : u) out.push_back(b == 0 ? next_low++ : next_high--);
  return Permutation::trusted(std::move(out));
}

// Inverse of bin_to_perm on even sizes: each letter is the smallest (0) or
// largest (1) value still unused; the last letter is both, and is resolved
// so that both letter counts are even.
inline BinaryWord perm_to_bin(const Permutation& pi) {
  const int n = pi.size();
  if (n % 2 != 0) {
    throw Error(ErrorCode::kOddSize, "perm_to_bin needs an even size, got " +
                                         std::to_string(n));
  }
  BinaryWord u;
  u.reserve(static_cast<std::size_t>(n));
  int low = 1;
  int high = n;
  for (int i = 1; i < n; ++i) {
    const int v = pi(i);
    if (v == low) {
      u.push_back(0);
      ++low;
    } else if (v == high) {
      u.push_back(1);
      --high;
    } else {
      throw Error(ErrorCode::kNotInImage,
                  "letter at position " + std::to_string(i) +
                      " is neither the smallest nor the largest remaining value");
    }
  }
  if (n == 0) return u;
  const auto ones = std::count(u.begin(), u.end(), 1);
  const auto zeros = std::count(u.begin(), u.end(), 0);
  // n is even, so exactly one completion makes both counts even.
  const bool zero_ok = (zeros + 1) % 2 == 0 && ones % 2 == 0;
  const bool one_ok = zeros % 2 == 0 && (ones + 1) % 2 == 0;
  if (zero_ok == one_ok) {
    throw Error(ErrorCode::kNotInImage, "parity completion is not unique");
  }
  u.push_back(zero_ok ? 0 : 1);
  return u;
}

namespace detail {

// Copies are equal words, so the state is the copy that is ahead plus the
// letters it holds beyond the other copy. With both copies level the next
// letter opens copy A.
class SquareWordSearch {
 public:
  explicit SquareWordSearch(const BinaryWord& u)
      : u_(u), half_(u.size() / 2), letters_{BinaryWord(half_), BinaryWord(half_)},
        owner_(u.size(), 0) {}

  bool run() {
    if (u_.size() % 2 != 0) return false;
    const auto zeros = std::count(u_.begin(), u_.end(), 0);
    if (zeros % 2 != 0) return false;
    return place(0);
  }

  PositionSet copy_a() const {
    PositionSet out;
    for (std::size_t i = 0; i < owner_.size(); ++i) {
      if (owner_[i] == 0) out.push_back(static_cast<int>(i) + 1);
    }
    return out;
  }

 private:
  bool place(std::size_t pos) {
    if (pos == u_.size()) return true;
    for (int c = 0; c < 2; ++c) {
      if (pos == 0 && c == 1) break;
      const int other = 1 - c;
      const std::size_t m = length_[c];
      if (m == half_) continue;
      if (m < length_[other]) {
        if (letters_[other][m] != u_[pos]) continue;
      } else if (m == length_[other] && c == 1) {
        continue;  // level copies: only A opens a new letter
      }
      letters_[c][m] = u_[pos];
      owner_[pos] = static_cast<std::uint8_t>(c);
      ++length_[c];
      if (place(pos + 1)) return true;
      --length_[c];
    }
    return false;
  }

  const BinaryWord& u_;
  std::size_t half_;
  std::size_t length_[2] = {0, 0};
  BinaryWord letters_[2];
  std::vector<std::uint8_t> owner_;
};

}  // namespace detail

// Positions of one copy when u lies in v shuffle v for some v.
inline std::optional<PositionSet> is_square_word(const BinaryWord& u) {
  detail::SquareWordSearch search(u);
  if (!search.run()) return std::nullopt;
  return search.copy_a();
}

// Number of binary shuffle-square words of the given length. Words are split
// across workers by their leading bits.
inline std::uint64_t count_square_words(int length, int threads = 0,
                                        int max_length = kDefaultSquareWordCap) {
  if (length < 0 || length > max_length || length > 62) {
    throw Error(ErrorCode::kSizeLimit, "word length " + std::to_string(length) +
                                           " exceeds cap " + std::to_string(max_length));
  }
  if (length % 2 != 0) return 0;
  if (length == 0) return 1;
  if (threads <= 0) threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));

  const int prefix_bits = std::min(length, 8);
  const std::uint64_t chunks = std::uint64_t{1} << prefix_bits;
  const std::uint64_t per_chunk = std::uint64_t{1} << (length - prefix_bits);
  std::atomic<std::uint64_t> next{0};
  std::atomic<std::uint64_t> total{0};

  auto worker = [&] {
    BinaryWord u(static_cast<std::size_t>(length));
    std::uint64_t local = 0;
    for (std::uint64_t chunk = next++; chunk < chunks; chunk = next++) {
      for (std::uint64_t low = 0; low < per_chunk; ++low) {
        const std::uint64_t bits = (chunk << (length - prefix_bits)) | low;
        for (int i = 0; i < length; ++i) {
          u[static_cast<std::size_t>(i)] =
              static_cast<std::uint8_t>((bits >> (length - 1 - i)) & 1u);
        }
        if (detail::SquareWordSearch(u).run()) ++local;
      }
    }
    total += local;
  };

  std::vector<std::thread> pool;
  for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  return total.load();
}

}  // namespace permsq
