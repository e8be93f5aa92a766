#pragma once

// Reduction from pattern involvement to square recognition: given (pi, sigma)
// build the permutation mu out of twelve shifted blocks, validate its layout,
// and build the forward certificate (a two-coloring of mu) from an
// occurrence of sigma in pi.

#include <algorithm>
#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "permsq/error.hpp"
#include "permsq/perm.hpp"
#include "permsq/square.hpp"

namespace permsq {

inline constexpr std::int64_t kDefaultReductionCap = 1'000'000;

struct ReductionInstance {
  Permutation pi;     // size n, the text
  Permutation sigma;  // size k, the pattern
};

enum class BlockShape { kIncreasing, kDecreasing, kPattern };

struct Block {
  std::string name;
  BlockShape shape = BlockShape::kPattern;
  int first_position = 1;  // one-based
  int length = 0;
  int value_offset = 0;    // letters are content + value_offset
  Permutation content;     // the block before shifting

  int last_position() const { return first_position + length - 1; }
  int min_value() const { return value_offset + 1; }
  int max_value() const { return value_offset + length; }
};

struct ReductionLayout {
  int n = 0;
  int k = 0;
  std::array<int, 4> big{};  // N1, N2, N3, N4
  std::vector<Block> blocks;  // in position order

  const Block& block(const std::string& name) const {
    for (const Block& b : blocks) {
      if (b.name == name) return b;
    }
    throw Error(ErrorCode::kPreconditionViolation, "layout has no block " + name);
  }
};

struct Reduction {
  Permutation mu;
  ReductionLayout layout;
};

// Block names in position order, and in increasing order of value bands.
inline const std::array<const char*, 12>& block_position_order() {
  static const std::array<const char*, 12> order = {
      "nu1", "nu2", "nu1'", "nu3", "sigma'", "nu4",
      "nu2'", "nu3'", "pi'", "nu4'", "pi''", "sigma''"};
  return order;
}

inline const std::array<const char*, 12>& block_value_order() {
  static const std::array<const char*, 12> order = {
      "nu2'", "nu2", "nu4'", "sigma''", "pi''", "pi'",
      "sigma'", "nu4", "nu3", "nu3'", "nu1", "nu1'"};
  return order;
}

inline std::array<int, 4> reduction_constants(int n, int k) {
  const int n4 = 4 * n + 4 * k + 9;
  const int n3 = 20 * n + 20 * k + 45;
  const int n2 = 100 * n + 100 * k + 225;
  const int n1 = 1000 * n + 1000 * k + 1325;
  return {n1, n2, n3, n4};
}

inline std::int64_t reduction_size(int n, int k) {
  const auto big = reduction_constants(n, k);
  return 2 * (std::int64_t{big[0]} + big[1] + big[2] + big[3]) + 2 * n + 2 * k + 4;
}

namespace detail {

// (lo) w (hi) with lo = |w| + 1 and hi = |w| + 2: the pattern framed by two
// letters above it.
inline Permutation framed(const Permutation& w) {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(w.size()) + 2);
  out.push_back(w.size() + 1);
  for (int v : w.letters()) out.push_back(v);
  out.push_back(w.size() + 2);
  return Permutation::trusted(std::move(out));
}

}  // namespace detail

inline Reduction build_mu(const ReductionInstance& inst,
                          std::int64_t max_size = kDefaultReductionCap) {
  const int n = inst.pi.size();
  const int k = inst.sigma.size();
  if (n < 1 || k < 1) {
    throw Error(ErrorCode::kPreconditionViolation, "both permutations must be non-empty");
  }
  if (n > 100000 || k > 100000 || reduction_size(n, k) > max_size) {
    throw Error(ErrorCode::kSizeLimit, "reduction output exceeds cap " + std::to_string(max_size));
  }
  const auto big = reduction_constants(n, k);
  const int n1 = big[0], n2 = big[1], n3 = big[2], n4 = big[3];
  const int t = 2 * n + 2 * k + 4;

  struct BlockSpec {
    const char* name;
    BlockShape shape;
    Permutation content;
    int offset;
  };
  const Permutation inc1 = Permutation::identity(n1), inc3 = Permutation::identity(n3);
  const Permutation dec2 = Permutation::decreasing(n2), dec4 = Permutation::decreasing(n4);
  const std::array<BlockSpec, 12> specs = {{
      {"nu1", BlockShape::kIncreasing, inc1, 2 * n2 + 2 * n3 + 2 * n4 + t},
      // Decreasing, like its partner nu2'.
      {"nu2", BlockShape::kDecreasing, dec2, n2},
      {"nu1'", BlockShape::kIncreasing, inc1, n1 + 2 * n2 + 2 * n3 + 2 * n4 + t},
      {"nu3", BlockShape::kIncreasing, inc3, 2 * n2 + 2 * n4 + t},
      {"sigma'", BlockShape::kPattern, detail::framed(inst.sigma), 2 * n2 + n4 + 2 * n + k + 2},
      {"nu4", BlockShape::kDecreasing, dec4, 2 * n2 + n4 + t},
      {"nu2'", BlockShape::kDecreasing, dec2, 0},
      {"nu3'", BlockShape::kIncreasing, inc3, 2 * n2 + n3 + 2 * n4 + t},
      {"pi'", BlockShape::kPattern, detail::framed(inst.pi), 2 * n2 + n4 + n + k},
      {"nu4'", BlockShape::kDecreasing, dec4, 2 * n2},
      {"pi''", BlockShape::kPattern, inst.pi, 2 * n2 + n4 + k},
      {"sigma''", BlockShape::kPattern, inst.sigma, 2 * n2 + n4},
  }};

  Reduction out;
  out.layout.n = n;
  out.layout.k = k;
  out.layout.big = big;
  std::vector<int> word;
  word.reserve(static_cast<std::size_t>(reduction_size(n, k)));
  for (const BlockSpec& s : specs) {
    Block b;
    b.name = s.name;
    b.shape = s.shape;
    b.first_position = static_cast<int>(word.size()) + 1;
    b.length = s.content.size();
    b.value_offset = s.offset;
    b.content = s.content;
    for (int v : s.content.letters()) word.push_back(v + s.offset);
    out.layout.blocks.push_back(std::move(b));
  }
  out.mu = Permutation(std::move(word));
  return out;
}

// ---------------------------------------------------------------------------
// Layout validation

struct LayoutReport {
  std::vector<std::string> problems;
  bool ok() const { return problems.empty(); }
};

inline LayoutReport validate_layout(const Permutation& mu, const ReductionLayout& layout) {
  LayoutReport report;
  auto fail = [&](std::string what) { report.problems.push_back(std::move(what)); };
  const int n = layout.n;
  const int k = layout.k;

  if (layout.big != reduction_constants(n, k)) fail("N1..N4 do not match their formulas");
  for (int i = 0; i < 4; ++i) {
    const int ni = layout.big[static_cast<std::size_t>(i)];
    if (ni % 2 == 0) fail("N" + std::to_string(i + 1) + " is even");
    std::int64_t rhs = 2 * n + 2 * k + k;
    for (int j = i + 1; j < 4; ++j) rhs += 2 * std::int64_t{layout.big[static_cast<std::size_t>(j)]};
    if (ni <= rhs) fail("N" + std::to_string(i + 1) + " violates the separation inequality");
  }

  const std::int64_t expected_size = 2 * (std::int64_t{layout.big[0]} + layout.big[1] +
                                          layout.big[2] + layout.big[3]) +
                                     2 * n + 2 * k + 4;
  if (mu.size() != expected_size) fail("|mu| does not match 2(N1+N2+N3+N4)+2n+2k+4");

  if (layout.blocks.size() != 12) {
    fail("layout must have 12 blocks");
    return report;
  }
  const auto& names = block_position_order();
  int next_position = 1;
  for (std::size_t i = 0; i < 12; ++i) {
    const Block& b = layout.blocks[i];
    if (b.name != names[i]) fail("block " + std::to_string(i + 1) + " should be " + names[i]);
    if (b.first_position != next_position) fail("block " + b.name + " does not tile positions");
    if (b.length != b.content.size()) fail("block " + b.name + " length mismatch");
    next_position = b.last_position() + 1;
  }
  if (next_position != mu.size() + 1) fail("blocks do not cover mu");

  std::vector<const Block*> by_value;
  for (const Block& b : layout.blocks) by_value.push_back(&b);
  std::sort(by_value.begin(), by_value.end(),
            [](const Block* a, const Block* b) { return a->value_offset < b->value_offset; });
  int next_value = 0;
  const auto& bands = block_value_order();
  for (std::size_t i = 0; i < by_value.size(); ++i) {
    if (by_value[i]->value_offset != next_value) {
      fail("value band of " + by_value[i]->name + " does not tile values");
    }
    if (by_value[i]->name != bands[i]) {
      fail("value band " + std::to_string(i + 1) + " should be " + bands[i] + ", found " +
           by_value[i]->name);
    }
    next_value = by_value[i]->max_value();
  }
  if (next_value != mu.size()) fail("value bands do not cover [|mu|]");
  if (!report.ok()) return report;

  {
    std::vector<char> seen(static_cast<std::size_t>(mu.size()) + 1, 0);
    for (int v : mu.letters()) {
      if (v < 1 || v > mu.size() || seen[static_cast<std::size_t>(v)]) {
        fail("mu is not a permutation");
        return report;
      }
      seen[static_cast<std::size_t>(v)] = 1;
    }
  }

  const Permutation sigma_framed = detail::framed(layout.blocks[11].content);
  const Permutation pi_framed = detail::framed(layout.blocks[10].content);
  for (const Block& b : layout.blocks) {
    std::vector<int> letters(mu.word().begin() + (b.first_position - 1),
                             mu.word().begin() + b.last_position());
    for (int v : letters) {
      if (v < b.min_value() || v > b.max_value()) {
        fail("block " + b.name + " leaves its value band");
        break;
      }
    }
    switch (b.shape) {
      case BlockShape::kIncreasing:
        if (!std::is_sorted(letters.begin(), letters.end())) fail("block " + b.name + " is not increasing");
        break;
      case BlockShape::kDecreasing:
        if (!std::is_sorted(letters.rbegin(), letters.rend())) fail("block " + b.name + " is not decreasing");
        break;
      case BlockShape::kPattern:
        if (standardize(letters) != b.content) fail("block " + b.name + " does not carry its pattern");
        break;
    }
  }
  if (layout.block("sigma'").content != sigma_framed) fail("sigma' is not (k+1) sigma (k+2)");
  if (layout.block("pi'").content != pi_framed) fail("pi' is not (n+1) pi (n+2)");
  if (layout.block("sigma''").content.size() != k || layout.block("pi''").content.size() != n) {
    fail("pattern blocks have the wrong sizes");
  }
  return report;
}

// ---------------------------------------------------------------------------
// Forward certificate

namespace detail {

inline std::string block_at(const ReductionLayout& layout, int position) {
  for (const Block& b : layout.blocks) {
    if (position >= b.first_position && position <= b.last_position()) return b.name;
  }
  return "?";
}

}  // namespace detail

// Copy A: nu1, nu2, nu3, sigma', nu4, the letters of pi' outside the
// occurrence and its two framing letters, and the letters of pi'' at the
// occurrence. Copy B: everything else. Throws kWitnessCheckFailed, naming the
// blocks involved, when the two copies are not order-isomorphic.
inline SquareWitness forward_witness(const ReductionInstance& inst, const PositionSet& occurrence,
                                     const Permutation& mu, const ReductionLayout& layout) {
  const int n = inst.pi.size();
  const int k = inst.sigma.size();
  if (layout.n != n || layout.k != k) {
    throw Error(ErrorCode::kPreconditionViolation, "layout does not belong to this instance");
  }
  if (static_cast<int>(occurrence.size()) != k) {
    throw Error(ErrorCode::kPreconditionViolation, "occurrence must have |sigma| positions");
  }
  try {
    if (standardize(subword(inst.pi, occurrence)) != inst.sigma) {
      throw Error(ErrorCode::kPreconditionViolation, "positions are not an occurrence of sigma");
    }
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kPreconditionViolation) throw;
    throw Error(ErrorCode::kPreconditionViolation, e.what());
  }

  SquareWitness w{std::vector<Copy>(static_cast<std::size_t>(mu.size()), Copy::kB)};
  auto paint = [&](const Block& b, int offset) {
    w.coloring[static_cast<std::size_t>(b.first_position - 1 + offset)] = Copy::kA;
  };
  for (const char* name : {"nu1", "nu2", "nu3", "sigma'", "nu4"}) {
    const Block& b = layout.block(name);
    for (int i = 0; i < b.length; ++i) paint(b, i);
  }
  std::vector<char> in_occurrence(static_cast<std::size_t>(n) + 1, 0);
  for (int p : occurrence) in_occurrence[static_cast<std::size_t>(p)] = 1;
  const Block& pi1 = layout.block("pi'");
  const Block& pi2 = layout.block("pi''");
  for (int j = 1; j <= n; ++j) {
    if (in_occurrence[static_cast<std::size_t>(j)]) {
      paint(pi2, j - 1);
    } else {
      paint(pi1, j);  // offset 0 is the lower framing letter
    }
  }

  const PositionSet a = w.positions(Copy::kA);
  const PositionSet b = w.positions(Copy::kB);
  if (a.size() != b.size()) {
    throw Error(ErrorCode::kWitnessCheckFailed,
                "copies have sizes " + std::to_string(a.size()) + " and " + std::to_string(b.size()));
  }
  const IntWord wa = subword(mu, a);
  const IntWord wb = subword(mu, b);
  const Permutation sa = standardize(wa);
  const Permutation sb = standardize(wb);
  if (sa != sb) {
    // Name two letter pairs whose relative order differs between the copies.
    std::size_t m = 0;
    while (sa.word()[m] == sb.word()[m]) ++m;
    std::size_t j = 0;
    while (j == m || (wa[j] < wa[m]) == (wb[j] < wb[m])) ++j;
    const auto where_a = [&](std::size_t i) { return detail::block_at(layout, a[i]); };
    const auto where_b = [&](std::size_t i) { return detail::block_at(layout, b[i]); };
    throw Error(ErrorCode::kWitnessCheckFailed,
                "copy A letters from " + where_a(j) + " and " + where_a(m) +
                    " are ordered differently from their copy B partners from " + where_b(j) +
                    " and " + where_b(m));
  }
  return w;
}

}  // namespace permsq
