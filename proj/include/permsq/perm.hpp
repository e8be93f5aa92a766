#pragma once

// Permutations and integer words: standardization, symmetries, subwords and
// pattern involvement. Positions and values are one-based throughout.

#include <algorithm>
#include <cctype>
#include <compare>
#include <limits>
#include <cstddef>
#include <numeric>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "permsq/error.hpp"

namespace permsq {

// A word of positive integers. Distinctness is only required where an
// operation says so.
using IntWord = std::vector<int>;

// Strictly increasing one-based positions into a host word.
using PositionSet = std::vector<int>;

class Permutation {
 public:
  Permutation() = default;

  // Throws kInvalidPermutation unless letters is a rearrangement of 1..n.
  explicit Permutation(std::vector<int> letters) : letters_(std::move(letters)) {
    const int n = size();
    std::vector<char> seen(static_cast<std::size_t>(n) + 1, 0);
    for (int v : letters_) {
      if (v < 1 || v > n || seen[static_cast<std::size_t>(v)]) {
        throw Error(ErrorCode::kInvalidPermutation,
                    "letters must be a rearrangement of 1.." + std::to_string(n));
      }
      seen[static_cast<std::size_t>(v)] = 1;
    }
  }

  Permutation(std::initializer_list<int> letters)
      : Permutation(std::vector<int>(letters)) {}

  // Skips validation; for callers that build letters by construction.
  static Permutation trusted(std::vector<int> letters) {
    Permutation p;
    p.letters_ = std::move(letters);
    return p;
  }

  static Permutation identity(int n) {
    std::vector<int> w(static_cast<std::size_t>(n));
    std::iota(w.begin(), w.end(), 1);
    return trusted(std::move(w));
  }

  static Permutation decreasing(int n) {
    std::vector<int> w(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) w[static_cast<std::size_t>(i)] = n - i;
    return trusted(std::move(w));
  }

  int size() const noexcept { return static_cast<int>(letters_.size()); }
  bool empty() const noexcept { return letters_.empty(); }

  // One-based access: p(i) is the i-th letter.
  int operator()(int i) const { return letters_[static_cast<std::size_t>(i - 1)]; }

  std::span<const int> letters() const noexcept { return letters_; }
  const std::vector<int>& word() const noexcept { return letters_; }

  auto operator<=>(const Permutation&) const = default;
  bool operator==(const Permutation&) const = default;

 private:
  std::vector<int> letters_;
};

// ---------------------------------------------------------------------------
// Standardization and subwords

inline Permutation standardize(std::span<const int> u) {
  const std::size_t n = u.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return u[a] < u[b]; });
  std::vector<int> result(n);
  for (std::size_t r = 0; r < n; ++r) {
    if (r > 0 && u[order[r]] == u[order[r - 1]]) {
      throw Error(ErrorCode::kDuplicateLetter,
                  "letter " + std::to_string(u[order[r]]) + " occurs twice");
    }
    result[order[r]] = static_cast<int>(r) + 1;
  }
  return Permutation::trusted(std::move(result));
}

inline void check_positions(std::size_t host_size, std::span<const int> positions) {
  int previous = 0;
  for (int p : positions) {
    if (p < 1 || static_cast<std::size_t>(p) > host_size) {
      throw Error(ErrorCode::kOutOfRange,
                  "position " + std::to_string(p) + " outside [1, " +
                      std::to_string(host_size) + "]");
    }
    if (p <= previous) {
      throw Error(ErrorCode::kOutOfRange, "positions must be strictly increasing");
    }
    previous = p;
  }
}

inline IntWord subword(std::span<const int> u, std::span<const int> positions) {
  check_positions(u.size(), positions);
  IntWord out;
  out.reserve(positions.size());
  for (int p : positions) out.push_back(u[static_cast<std::size_t>(p - 1)]);
  return out;
}

inline IntWord subword(const Permutation& pi, std::span<const int> positions) {
  return subword(pi.letters(), positions);
}

// ---------------------------------------------------------------------------
// Symmetries

inline Permutation mirror(const Permutation& pi) {
  std::vector<int> w(pi.word().rbegin(), pi.word().rend());
  return Permutation::trusted(std::move(w));
}

inline Permutation complement(const Permutation& pi) {
  const int n = pi.size();
  std::vector<int> w;
  w.reserve(static_cast<std::size_t>(n));
  for (int v : pi.letters()) w.push_back(n - v + 1);
  return Permutation::trusted(std::move(w));
}

inline Permutation inverse(const Permutation& pi) {
  std::vector<int> w(static_cast<std::size_t>(pi.size()));
  for (int i = 1; i <= pi.size(); ++i) w[static_cast<std::size_t>(pi(i) - 1)] = i;
  return Permutation::trusted(std::move(w));
}

// The orbit of pi under the group generated by mirror, complement and
// inverse. That group is dihedral of order 8, so the orbit is
// {x, mirror x, complement x, mirror complement x} for x in {pi, pi^-1}.
inline std::vector<Permutation> symmetry_orbit(const Permutation& pi) {
  std::vector<Permutation> out;
  out.reserve(8);
  for (const Permutation& base : {pi, inverse(pi)}) {
    out.push_back(base);
    out.push_back(mirror(base));
    out.push_back(complement(base));
    out.push_back(mirror(complement(base)));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

inline IntWord shift(std::span<const int> u, int k) {
  IntWord out;
  out.reserve(u.size());
  for (int v : u) {
    if (v + k <= 0) {
      throw Error(ErrorCode::kNonPositiveLetter,
                  "shift by " + std::to_string(k) + " makes letter " +
                      std::to_string(v) + " non-positive");
    }
    out.push_back(v + k);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Pattern involvement

namespace detail {

// For each index m of the pattern, the indices (among 0..m-1) holding the
// nearest smaller and nearest larger pattern values, or -1.
struct PatternWindows {
  std::vector<int> below;
  std::vector<int> above;

  explicit PatternWindows(std::span<const int> sigma)
      : below(sigma.size(), -1), above(sigma.size(), -1) {
    for (std::size_t m = 0; m < sigma.size(); ++m) {
      for (std::size_t j = 0; j < m; ++j) {
        if (sigma[j] < sigma[m] &&
            (below[m] < 0 || sigma[j] > sigma[static_cast<std::size_t>(below[m])])) {
          below[m] = static_cast<int>(j);
        }
        if (sigma[j] > sigma[m] &&
            (above[m] < 0 || sigma[j] < sigma[static_cast<std::size_t>(above[m])])) {
          above[m] = static_cast<int>(j);
        }
      }
    }
  }
};

inline bool extend_occurrence(std::span<const int> text, const PatternWindows& w,
                              std::size_t m, std::size_t next, std::vector<int>& chosen,
                              std::vector<int>& values) {
  const std::size_t k = chosen.size();
  if (m == k) return true;
  const int lo = w.below[m] < 0 ? 0 : values[static_cast<std::size_t>(w.below[m])];
  const int hi = w.above[m] < 0 ? std::numeric_limits<int>::max()
                                : values[static_cast<std::size_t>(w.above[m])];
  // Leave room for the k - m - 1 letters still to place.
  const std::size_t last = text.size() - (k - m);
  for (std::size_t p = next; p <= last; ++p) {
    const int v = text[p];
    if (v <= lo || v >= hi) continue;
    chosen[m] = static_cast<int>(p) + 1;
    values[m] = v;
    if (extend_occurrence(text, w, m + 1, p + 1, chosen, values)) return true;
  }
  return false;
}

}  // namespace detail

// Lexicographically smallest position set P with std(pi|P) = sigma, if any.
// Backtracking over positions with a value window derived from the pattern;
// exponential in the worst case.
inline std::optional<PositionSet> find_occurrence(const Permutation& sigma,
                                                  const Permutation& pi) {
  const std::size_t k = static_cast<std::size_t>(sigma.size());
  if (k > static_cast<std::size_t>(pi.size())) return std::nullopt;
  if (k == 0) return PositionSet{};
  detail::PatternWindows windows(sigma.letters());
  std::vector<int> chosen(k), values(k);
  if (detail::extend_occurrence(pi.letters(), windows, 0, 0, chosen, values)) {
    return chosen;
  }
  return std::nullopt;
}

inline bool contains(const Permutation& pi, const Permutation& sigma) {
  return find_occurrence(sigma, pi).has_value();
}

inline bool avoids(const Permutation& pi, std::span<const Permutation> patterns) {
  return std::none_of(patterns.begin(), patterns.end(),
                      [&](const Permutation& s) { return contains(pi, s); });
}

// ---------------------------------------------------------------------------
// Text I/O. Canonical form: space-separated decimal letters, "" for the
// empty permutation. A single run of digits of length >= 2 is read in
// compact form, one letter per digit.

inline IntWord parse_word(std::string_view text) {
  IntWord out;
  std::size_t first = text.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return out;
  std::size_t last = text.find_last_not_of(" \t\r\n");
  std::string_view body = text.substr(first, last - first + 1);

  const bool compact =
      body.size() >= 2 &&
      std::all_of(body.begin(), body.end(),
                  [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
  if (compact) {
    for (char c : body) out.push_back(c - '0');
    return out;
  }

  std::size_t i = 0;
  while (i < body.size()) {
    while (i < body.size() && std::isspace(static_cast<unsigned char>(body[i]))) ++i;
    if (i == body.size()) break;
    std::size_t j = i;
    while (j < body.size() && !std::isspace(static_cast<unsigned char>(body[j]))) ++j;
    std::string_view token = body.substr(i, j - i);
    if (!std::all_of(token.begin(), token.end(), [](char c) {
          return std::isdigit(static_cast<unsigned char>(c));
        }) || token.size() > 9) {
      throw Error(ErrorCode::kParse, "bad letter '" + std::string(token) + "'");
    }
    out.push_back(std::stoi(std::string(token)));
    i = j;
  }
  return out;
}

inline Permutation parse_permutation(std::string_view text) {
  return Permutation(parse_word(text));
}

inline std::string format_word(std::span<const int> u) {
  std::string out;
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (i > 0) out += ' ';
    out += std::to_string(u[i]);
  }
  return out;
}

inline std::string format_permutation(const Permutation& pi) {
  return format_word(pi.letters());
}

}  // namespace permsq
