#pragma once

// The unshuffling coproduct on permutations and its dual shuffle product,
// with exact integer multiplicities.

#include <bit>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "permsq/detail/value_mask.hpp"
#include "permsq/error.hpp"
#include "permsq/perm.hpp"

namespace permsq {

using Coefficient = std::uint64_t;

// Linear combination of permutations, sorted lexicographically by word.
using Expansion = std::map<Permutation, Coefficient>;

// Linear combination of tensors left (x) right.
using TensorPair = std::pair<Permutation, Permutation>;
using TensorExpansion = std::map<TensorPair, Coefficient>;

inline constexpr int kDefaultUnshuffleCap = 22;
inline constexpr int kDefaultShuffleCap = 12;

namespace detail {

inline constexpr int kMaskBits = 63;

inline void require_size(int n, int cap, const char* what) {
  if (n > cap || n > kMaskBits) {
    throw Error(ErrorCode::kSizeLimit, std::string(what) + " size " + std::to_string(n) +
                                           " exceeds cap " +
                                           std::to_string(std::min(cap, kMaskBits)));
  }
}

inline std::uint64_t value_bit(int v) { return std::uint64_t{1} << (v - 1); }

// Standardized subword of pi at the positions flagged in position_mask.
inline Permutation standardized_part(std::span<const int> pi, std::uint64_t position_mask) {
  std::uint64_t values = 0;
  for (std::uint64_t m = position_mask; m != 0; m &= m - 1) {
    values |= value_bit(pi[static_cast<std::size_t>(std::countr_zero(m))]);
  }
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(std::popcount(position_mask)));
  for (std::uint64_t m = position_mask; m != 0; m &= m - 1) {
    const int v = pi[static_cast<std::size_t>(std::countr_zero(m))];
    out.push_back(std::popcount(values & (value_bit(v) - 1)) + 1);
  }
  return Permutation::trusted(std::move(out));
}

// Left-to-right rank sequence: entry m is the number of letters among the
// first m that are smaller than letter m. Two words are order-isomorphic iff
// their rank sequences agree.
inline std::vector<int> rank_sequence(std::span<const int> u) {
  std::vector<int> ranks(u.size());
  for (std::size_t m = 0; m < u.size(); ++m) {
    int r = 0;
    for (std::size_t j = 0; j < m; ++j) r += u[j] < u[m] ? 1 : 0;
    ranks[m] = r;
  }
  return ranks;
}

template <class Mask>
class SplitCounter {
 public:
  SplitCounter(std::span<const int> pi, std::span<const int> left,
               std::span<const int> right)
      : pi_(pi),
        left_ranks_(rank_sequence(left)),
        right_ranks_(rank_sequence(right)),
        left_mask_(static_cast<int>(pi.size())),
        right_mask_(static_cast<int>(pi.size())) {}

  Coefficient count() { return visit(0, 0, 0); }

 private:
  Coefficient visit(std::size_t pos, std::size_t nl, std::size_t nr) {
    if (pos == pi_.size()) return 1;
    const int v = pi_[pos];
    Coefficient total = 0;
    if (nl < left_ranks_.size() && left_mask_.rank_below(v) == left_ranks_[nl]) {
      left_mask_.insert(v);
      total += visit(pos + 1, nl + 1, nr);
      left_mask_.erase(v);
    }
    if (nr < right_ranks_.size() && right_mask_.rank_below(v) == right_ranks_[nr]) {
      right_mask_.insert(v);
      total += visit(pos + 1, nl, nr + 1);
      right_mask_.erase(v);
    }
    return total;
  }

  std::span<const int> pi_;
  std::vector<int> left_ranks_;
  std::vector<int> right_ranks_;
  Mask left_mask_;
  Mask right_mask_;
};

}  // namespace detail

// Delta(pi): sum over ordered set partitions (P1, P2) of the positions of
// std(pi|P1) (x) std(pi|P2). Enumerates all 2^n splits.
inline TensorExpansion unshuffle(const Permutation& pi, int max_size = kDefaultUnshuffleCap) {
  const int n = pi.size();
  detail::require_size(n, max_size, "unshuffle");
  const std::uint64_t full = (std::uint64_t{1} << n) - 1;
  TensorExpansion out;
  for (std::uint64_t mask = 0;; ++mask) {
    ++out[{detail::standardized_part(pi.letters(), mask),
           detail::standardized_part(pi.letters(), full & ~mask)}];
    if (mask == full) break;
  }
  return out;
}

// Multiplicity of left (x) right in Delta(pi), counted by backtracking over
// positions without building the expansion.
inline Coefficient coefficient(const Permutation& pi, const Permutation& left,
                               const Permutation& right) {
  if (left.size() + right.size() != pi.size()) return 0;
  if (pi.size() <= detail::kSmallMaskLimit) {
    return detail::SplitCounter<detail::SmallValueMask>(pi.letters(), left.letters(),
                                                        right.letters())
        .count();
  }
  return detail::SplitCounter<detail::LargeValueMask>(pi.letters(), left.letters(),
                                                      right.letters())
      .count();
}

// sigma shuffle nu: each choice of a position set P and a value set V of
// size |sigma| determines one permutation pi with pi|P ~ sigma carrying the
// values V and pi|P^c ~ nu carrying the rest. Given pi and P the set V is
// forced, so the multiplicity of pi is the number of qualifying P, which is
// exactly the coproduct coefficient.
inline Expansion shuffle(const Permutation& sigma, const Permutation& nu,
                         int max_size = kDefaultShuffleCap) {
  const int a = sigma.size();
  const int b = nu.size();
  const int n = a + b;
  detail::require_size(n, max_size, "shuffle");

  std::vector<std::uint64_t> subsets;
  {
    const std::uint64_t full = (std::uint64_t{1} << n) - 1;
    if (a == 0) {
      subsets.push_back(0);
    } else {
      // Gosper's hack over all a-subsets of [n].
      std::uint64_t s = (std::uint64_t{1} << a) - 1;
      while (s <= full) {
        subsets.push_back(s);
        const std::uint64_t c = s & (~s + 1);
        const std::uint64_t r = s + c;
        s = (((r ^ s) >> 2) / c) | r;
      }
    }
  }

  Expansion out;
  std::vector<int> word(static_cast<std::size_t>(n));
  std::vector<int> chosen_values, other_values;
  for (std::uint64_t values : subsets) {
    chosen_values.clear();
    other_values.clear();
    for (int v = 1; v <= n; ++v) {
      (values & detail::value_bit(v) ? chosen_values : other_values).push_back(v);
    }
    for (std::uint64_t positions : subsets) {
      int i = 0;
      int j = 0;
      for (int p = 0; p < n; ++p) {
        if (positions & (std::uint64_t{1} << p)) {
          word[static_cast<std::size_t>(p)] =
              chosen_values[static_cast<std::size_t>(sigma(++i) - 1)];
        } else {
          word[static_cast<std::size_t>(p)] =
              other_values[static_cast<std::size_t>(nu(++j) - 1)];
        }
      }
      ++out[Permutation::trusted(word)];
    }
  }
  return out;
}

inline Coefficient total_weight(const Expansion& e) {
  Coefficient s = 0;
  for (const auto& [_, c] : e) s += c;
  return s;
}

inline Coefficient total_weight(const TensorExpansion& e) {
  Coefficient s = 0;
  for (const auto& [_, c] : e) s += c;
  return s;
}

// One term per line: "<coeff>\t<perm>".
inline std::string format_expansion(const Expansion& e) {
  std::string out;
  for (const auto& [pi, c] : e) {
    out += std::to_string(c);
    out += '\t';
    out += format_permutation(pi);
    out += '\n';
  }
  return out;
}

// One term per line: "<coeff>\t<left>\t⊗\t<right>".
inline std::string format_tensor_expansion(const TensorExpansion& e) {
  std::string out;
  for (const auto& [pair, c] : e) {
    out += std::to_string(c);
    out += '\t';
    out += format_permutation(pair.first);
    out += "\t⊗\t";
    out += format_permutation(pair.second);
    out += '\n';
  }
  return out;
}

}  // namespace permsq
