#pragma once

// Square recognition. Two independent engines:
//   * the direct engine two-colors positions left to right and keeps both
//     copies order-isomorphic prefix by prefix;
//   * the matching engine searches oriented perfect matchings satisfying the
//     arc-pattern property P1 and the value-consistency property P2.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "permsq/detail/value_mask.hpp"
#include "permsq/error.hpp"
#include "permsq/perm.hpp"

namespace permsq {

enum class Copy : char { kA = 'A', kB = 'B' };

struct SquareWitness {
  std::vector<Copy> coloring;

  bool operator==(const SquareWitness&) const = default;

  PositionSet positions(Copy c) const {
    PositionSet out;
    for (std::size_t i = 0; i < coloring.size(); ++i) {
      if (coloring[i] == c) out.push_back(static_cast<int>(i) + 1);
    }
    return out;
  }
};

struct Arc {
  int source = 0;
  int target = 0;

  auto operator<=>(const Arc&) const = default;
};

// Canonical form lists arcs by increasing source.
struct OrientedMatching {
  std::vector<Arc> arcs;

  bool operator==(const OrientedMatching&) const = default;
};

// ---------------------------------------------------------------------------
// Text formats

inline std::string format_witness(const SquareWitness& w) {
  std::string out;
  for (Copy c : w.coloring) out += static_cast<char>(c);
  return out;
}

inline SquareWitness parse_witness(std::string_view text) {
  SquareWitness w;
  for (char ch : text) {
    if (ch == 'A') {
      w.coloring.push_back(Copy::kA);
    } else if (ch == 'B') {
      w.coloring.push_back(Copy::kB);
    } else {
      throw Error(ErrorCode::kParse, "witness letters must be A or B");
    }
  }
  return w;
}

inline std::string format_matching(const OrientedMatching& m) {
  std::string out;
  for (std::size_t i = 0; i < m.arcs.size(); ++i) {
    if (i > 0) out += ',';
    out += std::to_string(m.arcs[i].source) + '>' + std::to_string(m.arcs[i].target);
  }
  return out;
}

inline OrientedMatching parse_matching(std::string_view text) {
  OrientedMatching m;
  std::size_t i = 0;
  auto read_int = [&](char stop) {
    std::size_t j = i;
    while (j < text.size() && text[j] != stop) ++j;
    std::string token(text.substr(i, j - i));
    if (token.empty() || token.size() > 9 ||
        !std::all_of(token.begin(), token.end(),
                     [](char c) { return c >= '0' && c <= '9'; })) {
      throw Error(ErrorCode::kParse, "bad arc endpoint '" + token + "'");
    }
    i = j + 1;
    return std::stoi(token);
  };
  while (i < text.size()) {
    Arc a;
    a.source = read_int('>');
    a.target = read_int(',');
    m.arcs.push_back(a);
  }
  return m;
}

// ---------------------------------------------------------------------------
// Witness checks and conversions

inline void validate_witness(const Permutation& pi, const SquareWitness& w) {
  if (w.coloring.size() != static_cast<std::size_t>(pi.size())) {
    throw Error(ErrorCode::kInvalidWitness, "coloring length differs from |pi|");
  }
  const PositionSet a = w.positions(Copy::kA);
  const PositionSet b = w.positions(Copy::kB);
  if (a.size() != b.size()) {
    throw Error(ErrorCode::kInvalidWitness, "copies have different sizes");
  }
  if (standardize(subword(pi, a)) != standardize(subword(pi, b))) {
    throw Error(ErrorCode::kInvalidWitness, "copies are not order-isomorphic");
  }
}

inline bool is_valid_witness(const Permutation& pi, const SquareWitness& w) {
  try {
    validate_witness(pi, w);
    return true;
  } catch (const Error&) {
    return false;
  }
}

inline void validate_matching(int n, const OrientedMatching& m) {
  if (n % 2 != 0) throw Error(ErrorCode::kMalformedMatching, "odd number of positions");
  if (m.arcs.size() * 2 != static_cast<std::size_t>(n)) {
    throw Error(ErrorCode::kMalformedMatching, "matching is not perfect");
  }
  std::vector<char> used(static_cast<std::size_t>(n) + 1, 0);
  for (const Arc& arc : m.arcs) {
    for (int p : {arc.source, arc.target}) {
      if (p < 1 || p > n) {
        throw Error(ErrorCode::kMalformedMatching,
                    "endpoint " + std::to_string(p) + " out of range");
      }
      if (used[static_cast<std::size_t>(p)]) {
        throw Error(ErrorCode::kMalformedMatching,
                    "position " + std::to_string(p) + " covered twice");
      }
      used[static_cast<std::size_t>(p)] = 1;
    }
  }
}

// Pairs the i-th A position (source) with the i-th B position (target).
inline OrientedMatching witness_to_matching(const Permutation& pi, const SquareWitness& w) {
  validate_witness(pi, w);
  const PositionSet a = w.positions(Copy::kA);
  const PositionSet b = w.positions(Copy::kB);
  OrientedMatching m;
  for (std::size_t i = 0; i < a.size(); ++i) m.arcs.push_back({a[i], b[i]});
  return m;
}

// ---------------------------------------------------------------------------
// P1 and P2

// True when the two arcs form one of the six forbidden configurations: for
// positions i < j < k < l, any orientation of arcs over {i,l} and {j,k}
// (inclusion), or arcs over {i,k} and {j,l} pointing in opposite directions.
inline bool arcs_violate_p1(const Arc& x, const Arc& y) {
  const int xl = std::min(x.source, x.target), xr = std::max(x.source, x.target);
  const int yl = std::min(y.source, y.target), yr = std::max(y.source, y.target);
  const bool x_nests_y = xl < yl && yr < xr;
  const bool y_nests_x = yl < xl && xr < yr;
  if (x_nests_y || y_nests_x) return true;
  const bool crossing = (xl < yl && yl < xr && xr < yr) || (yl < xl && xl < yr && yr < xr);
  if (crossing) {
    const bool x_right = x.source < x.target;
    const bool y_right = y.source < y.target;
    return x_right != y_right;
  }
  return false;
}

inline bool arcs_violate_p2(const Permutation& pi, const Arc& x, const Arc& y) {
  return (pi(x.source) < pi(y.source)) != (pi(x.target) < pi(y.target));
}

inline bool check_p1(const Permutation& pi, const OrientedMatching& m) {
  validate_matching(pi.size(), m);
  for (std::size_t i = 0; i < m.arcs.size(); ++i) {
    for (std::size_t j = i + 1; j < m.arcs.size(); ++j) {
      if (arcs_violate_p1(m.arcs[i], m.arcs[j])) return false;
    }
  }
  return true;
}

inline bool check_p2(const Permutation& pi, const OrientedMatching& m) {
  validate_matching(pi.size(), m);
  for (std::size_t i = 0; i < m.arcs.size(); ++i) {
    for (std::size_t j = i + 1; j < m.arcs.size(); ++j) {
      if (arcs_violate_p2(pi, m.arcs[i], m.arcs[j])) return false;
    }
  }
  return true;
}

// Colors sources A and targets B. The matching must satisfy P1 and P2,
// otherwise the coloring would not be a witness.
inline SquareWitness matching_to_witness(const Permutation& pi, const OrientedMatching& m) {
  if (!check_p1(pi, m) || !check_p2(pi, m)) {
    throw Error(ErrorCode::kMalformedMatching, "matching violates P1 or P2");
  }
  SquareWitness w{std::vector<Copy>(static_cast<std::size_t>(pi.size()), Copy::kB)};
  for (const Arc& arc : m.arcs) w.coloring[static_cast<std::size_t>(arc.source - 1)] = Copy::kA;
  validate_witness(pi, w);
  return w;
}

// ---------------------------------------------------------------------------
// Direct engine

namespace detail {

// Depth-first two-coloring. Each copy stores, for its m-th letter, how many
// of its first m-1 letters are smaller; a letter appended to the copy that
// is behind must reproduce the rank recorded by the other copy at the same
// index. Position 1 always goes to copy A.
template <class Mask>
class WitnessSearch {
 public:
  explicit WitnessSearch(std::span<const int> pi)
      : pi_(pi),
        half_(pi.size() / 2),
        ranks_{std::vector<int>(half_), std::vector<int>(half_)},
        masks_{Mask(static_cast<int>(pi.size())), Mask(static_cast<int>(pi.size()))},
        coloring_(pi.size(), Copy::kA) {}

  // Calls visit(coloring) for each witness until it returns false. Returns
  // false iff the enumeration was stopped early.
  template <class Visitor>
  bool run(Visitor&& visit) {
    if (pi_.size() % 2 != 0) return true;
    if (pi_.empty()) return visit(coloring_);
    return place(0, visit);
  }

 private:
  template <class Visitor>
  bool place(std::size_t pos, Visitor& visit) {
    if (pos == pi_.size()) return visit(coloring_);
    for (int c = 0; c < 2; ++c) {
      if (pos == 0 && c == 1) break;
      if (try_copy(pos, c, visit) == false) return false;
    }
    return true;
  }

  template <class Visitor>
  bool try_copy(std::size_t pos, int c, Visitor& visit) {
    const int other = 1 - c;
    const std::size_t m = length_[c];
    if (m == half_) return true;
    const int v = pi_[pos];
    const int r = masks_[c].rank_below(v);
    if (m < length_[other] && ranks_[other][m] != r) return true;
    ranks_[c][m] = r;
    masks_[c].insert(v);
    ++length_[c];
    coloring_[pos] = c == 0 ? Copy::kA : Copy::kB;
    const bool keep_going = place(pos + 1, visit);
    --length_[c];
    masks_[c].erase(v);
    return keep_going;
  }

  std::span<const int> pi_;
  std::size_t half_;
  std::size_t length_[2] = {0, 0};
  std::vector<int> ranks_[2];
  Mask masks_[2];
  std::vector<Copy> coloring_;
};

template <class Visitor>
void for_each_witness_impl(std::span<const int> pi, Visitor&& visit) {
  if (pi.size() <= static_cast<std::size_t>(kSmallMaskLimit)) {
    WitnessSearch<SmallValueMask>(pi).run(visit);
  } else {
    WitnessSearch<LargeValueMask>(pi).run(visit);
  }
}

}  // namespace detail

// Enumerates every witness with position 1 in copy A (the symmetric
// witnesses with copies swapped are omitted). visit returns false to stop.
inline void for_each_witness(const Permutation& pi,
                             const std::function<bool(const SquareWitness&)>& visit) {
  SquareWitness w;
  detail::for_each_witness_impl(pi.letters(), [&](const std::vector<Copy>& coloring) {
    w.coloring = coloring;
    return visit(w);
  });
}

// Absent for odd sizes; otherwise the first witness in "A before B" order.
inline std::optional<SquareWitness> is_square(const Permutation& pi) {
  std::optional<SquareWitness> found;
  detail::for_each_witness_impl(pi.letters(), [&](const std::vector<Copy>& coloring) {
    found = SquareWitness{coloring};
    return false;
  });
  return found;
}

// Hot path for enumeration: no witness is materialized.
inline bool is_square_fast(std::span<const int> pi) {
  bool found = false;
  detail::for_each_witness_impl(pi, [&](const std::vector<Copy>&) {
    found = true;
    return false;
  });
  return found;
}

inline std::set<Permutation> square_roots(const Permutation& pi) {
  if (pi.size() % 2 != 0) {
    throw Error(ErrorCode::kOddSize, "square roots need an even size, got " +
                                         std::to_string(pi.size()));
  }
  std::set<Permutation> roots;
  for_each_witness(pi, [&](const SquareWitness& w) {
    roots.insert(standardize(subword(pi, w.positions(Copy::kA))));
    return true;
  });
  return roots;
}

// ---------------------------------------------------------------------------
// Matching engine

namespace detail {

class MatchingSearch {
 public:
  explicit MatchingSearch(const Permutation& pi)
      : pi_(pi), used_(static_cast<std::size_t>(pi.size()) + 2, 0) {}

  template <class Visitor>
  void run(Visitor&& visit) {
    if (pi_.size() % 2 != 0) return;
    extend(1, visit);
  }

 private:
  bool compatible(const Arc& arc) const {
    for (const Arc& placed : arcs_) {
      if (arcs_violate_p1(placed, arc) || arcs_violate_p2(pi_, placed, arc)) return false;
    }
    return true;
  }

  // The leftmost unmatched position p is paired with some later q; arcs
  // p>q are tried before q>p for each q in increasing order.
  template <class Visitor>
  bool extend(int from, Visitor& visit) {
    const int n = pi_.size();
    int p = from;
    while (p <= n && used_[static_cast<std::size_t>(p)]) ++p;
    if (p > n) return visit(OrientedMatching{arcs_});
    used_[static_cast<std::size_t>(p)] = 1;
    for (int q = p + 1; q <= n; ++q) {
      if (used_[static_cast<std::size_t>(q)]) continue;
      used_[static_cast<std::size_t>(q)] = 1;
      for (const Arc arc : {Arc{p, q}, Arc{q, p}}) {
        if (!compatible(arc)) continue;
        arcs_.push_back(arc);
        const bool keep_going = extend(p + 1, visit);
        arcs_.pop_back();
        if (!keep_going) {
          used_[static_cast<std::size_t>(q)] = 0;
          used_[static_cast<std::size_t>(p)] = 0;
          return false;
        }
      }
      used_[static_cast<std::size_t>(q)] = 0;
    }
    used_[static_cast<std::size_t>(p)] = 0;
    return true;
  }

  const Permutation& pi_;
  std::vector<char> used_;
  std::vector<Arc> arcs_;
};

inline OrientedMatching canonical(OrientedMatching m) {
  std::sort(m.arcs.begin(), m.arcs.end());
  return m;
}

}  // namespace detail

// Enumerates every P1 and P2 oriented perfect matching on pi (arcs sorted
// by source). visit returns false to stop.
inline void for_each_p1p2_matching(
    const Permutation& pi, const std::function<bool(const OrientedMatching&)>& visit) {
  detail::MatchingSearch(pi).run(
      [&](const OrientedMatching& m) { return visit(detail::canonical(m)); });
}

inline std::optional<OrientedMatching> is_square_via_matching(const Permutation& pi) {
  std::optional<OrientedMatching> found;
  for_each_p1p2_matching(pi, [&](const OrientedMatching& m) {
    found = m;
    return false;
  });
  return found;
}

}  // namespace permsq
