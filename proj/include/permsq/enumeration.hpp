#pragma once

// Parallel counting over S_n: squares, pattern-avoiding squares, and square
// classes under mirror, complement and inverse.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <numeric>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "permsq/error.hpp"
#include "permsq/perm.hpp"
#include "permsq/square.hpp"
#include "permsq/word_bijection.hpp"

namespace permsq {

inline constexpr int kDefaultCountCap = 10;

struct CountOptions {
  int threads = 0;  // 0: hardware concurrency
  int max_size = kDefaultCountCap;
};

struct CountReport {
  int size = 0;
  std::string filter;
  std::uint64_t count = 0;
  double seconds = 0.0;
};

inline int resolve_threads(int threads) {
  if (threads > 0) return threads;
  return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

// Counts permutations of size n accepted by make_predicate()(word). Work is
// split into the n(n-1) chunks sharing a length-2 prefix; each worker pulls
// chunks from a shared counter and builds its own predicate, so predicates
// may keep per-thread scratch state.
template <class PredicateFactory>
std::uint64_t count_permutations(int n, int threads, PredicateFactory make_predicate) {
  if (n < 2) {
    auto accept = make_predicate();
    std::vector<int> w(static_cast<std::size_t>(n));
    std::iota(w.begin(), w.end(), 1);
    return accept(std::span<const int>(w)) ? 1 : 0;
  }
  std::vector<std::pair<int, int>> prefixes;
  for (int a = 1; a <= n; ++a) {
    for (int b = 1; b <= n; ++b) {
      if (a != b) prefixes.emplace_back(a, b);
    }
  }
  std::atomic<std::size_t> next{0};
  std::atomic<std::uint64_t> total{0};

  auto worker = [&] {
    auto accept = make_predicate();
    std::vector<int> w(static_cast<std::size_t>(n));
    std::uint64_t local = 0;
    for (std::size_t c = next++; c < prefixes.size(); c = next++) {
      w[0] = prefixes[c].first;
      w[1] = prefixes[c].second;
      std::size_t i = 2;
      for (int v = 1; v <= n; ++v) {
        if (v != w[0] && v != w[1]) w[i++] = v;
      }
      do {
        if (accept(std::span<const int>(w))) ++local;
      } while (std::next_permutation(w.begin() + 2, w.end()));
    }
    total += local;
  };

  const int workers = resolve_threads(threads);
  std::vector<std::thread> pool;
  for (int t = 1; t < workers; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  return total.load();
}

namespace detail {

inline void require_count_size(int n, int cap) {
  if (n < 0 || n > cap) {
    throw Error(ErrorCode::kSizeLimit,
                "size " + std::to_string(n) + " exceeds cap " + std::to_string(cap));
  }
}

// True when w is the lexicographically smallest member of its orbit under
// mirror, complement and inverse.
class OrbitMinimumTest {
 public:
  explicit OrbitMinimumTest(int n)
      : inv_(static_cast<std::size_t>(n)), image_(static_cast<std::size_t>(n)) {}

  bool operator()(std::span<const int> w) {
    const int n = static_cast<int>(w.size());
    for (int i = 0; i < n; ++i) inv_[static_cast<std::size_t>(w[static_cast<std::size_t>(i)] - 1)] = i + 1;
    for (int base = 0; base < 2; ++base) {
      std::span<const int> x = base == 0 ? w : std::span<const int>(inv_);
      for (int sym = 0; sym < 4; ++sym) {
        if (base == 0 && sym == 0) continue;
        const bool rev = sym & 1;
        const bool comp = sym & 2;
        for (int i = 0; i < n; ++i) {
          const int v = x[static_cast<std::size_t>(rev ? n - 1 - i : i)];
          image_[static_cast<std::size_t>(i)] = comp ? n + 1 - v : v;
        }
        if (std::lexicographical_compare(image_.begin(), image_.end(), w.begin(), w.end())) {
          return false;
        }
      }
    }
    return true;
  }

 private:
  std::vector<int> inv_;
  std::vector<int> image_;
};

inline std::string describe_patterns(const std::vector<Permutation>& patterns) {
  if (patterns.empty()) return "all";
  std::vector<std::string> names;
  for (const auto& p : patterns) {
    std::string s;
    for (int v : p.letters()) s += std::to_string(v) + (p.size() > 9 ? "." : "");
    if (p.size() > 9) s.pop_back();
    names.push_back(s);
  }
  std::sort(names.begin(), names.end());
  std::string out = "avoid:";
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i > 0) out += ',';
    out += names[i];
  }
  return out;
}

template <class F>
CountReport timed(int n, std::string filter, F&& body) {
  const auto start = std::chrono::steady_clock::now();
  CountReport r;
  r.size = n;
  r.filter = std::move(filter);
  r.count = body();
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

}  // namespace detail

inline std::uint64_t count_squares_avoiding(int n, const std::vector<Permutation>& patterns,
                                            const CountOptions& opt = {}) {
  detail::require_count_size(n, opt.max_size);
  if (n % 2 != 0) return 0;
  return count_permutations(n, opt.threads, [&patterns] {
    return [&patterns](std::span<const int> w) {
      if (!patterns.empty() &&
          !avoids(Permutation::trusted(std::vector<int>(w.begin(), w.end())), patterns)) {
        return false;
      }
      return is_square_fast(w);
    };
  });
}

inline std::uint64_t count_squares(int n, const CountOptions& opt = {}) {
  return count_squares_avoiding(n, {}, opt);
}

// Orbits of squares under the symmetry group, counted by their
// lexicographically minimal representatives.
inline std::uint64_t count_square_classes(int n, const CountOptions& opt = {}) {
  detail::require_count_size(n, opt.max_size);
  if (n % 2 != 0) return 0;
  return count_permutations(n, opt.threads, [n] {
    return [test = detail::OrbitMinimumTest(n)](std::span<const int> w) mutable {
      return test(w) && is_square_fast(w);
    };
  });
}

inline CountReport report_squares(int n, const std::vector<Permutation>& patterns,
                                  const CountOptions& opt = {}) {
  return detail::timed(n, "squares:" + detail::describe_patterns(patterns),
                       [&] { return count_squares_avoiding(n, patterns, opt); });
}

inline CountReport report_square_classes(int n, const CountOptions& opt = {}) {
  return detail::timed(n, "classes", [&] { return count_square_classes(n, opt); });
}

inline CountReport report_square_words(int n, int threads = 0,
                                       int max_length = kDefaultSquareWordCap) {
  return detail::timed(n, "square-words",
                       [&] { return count_square_words(n, threads, max_length); });
}

inline std::string format_report(const CountReport& r) {
  char seconds[32];
  std::snprintf(seconds, sizeof seconds, "%.3f", r.seconds);
  return std::to_string(r.size) + '\t' + r.filter + '\t' + std::to_string(r.count) + '\t' +
         seconds + '\n';
}

}  // namespace permsq
