// Acceptance run: one PASS/FAIL line per criterion. A criterion passes when
// every check holds and it finishes within its time budget.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "generators.hpp"
#include "oracles.hpp"
#include "permsq/enumeration.hpp"
#include "permsq/reduction.hpp"
#include "permsq/shuffle_algebra.hpp"
#include "permsq/square.hpp"
#include "permsq/word_bijection.hpp"

namespace {

using namespace permsq;
using Clock = std::chrono::steady_clock;

Permutation P(std::string_view s) { return parse_permutation(s); }

double since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Collects failed checks and timed sub-budgets for one criterion.
class Checks {
 public:
  void expect(bool ok, const std::string& what) {
    if (!ok) failures_.push_back(what);
  }

  template <class T, class U>
  void equal(const T& got, const U& want, const std::string& what) {
    if (!(got == want)) failures_.push_back(what + ": got " + std::to_string(got) + ", want " + std::to_string(want));
  }

  void within(Clock::time_point start, double budget, const std::string& what) {
    const double t = since(start);
    if (t > budget) {
      char buf[128];
      std::snprintf(buf, sizeof buf, "%s took %.1fs, budget %.0fs", what.c_str(), t, budget);
      failures_.push_back(buf);
    }
  }

  void note(std::string text) { notes_.push_back(std::move(text)); }

  const std::vector<std::string>& failures() const { return failures_; }
  const std::vector<std::string>& notes() const { return notes_; }

 private:
  std::vector<std::string> failures_;
  std::vector<std::string> notes_;
};

int failed_criteria = 0;

void criterion(int id, const char* name, double budget, const std::function<void(Checks&)>& body) {
  Checks c;
  const auto start = Clock::now();
  try {
    body(c);
  } catch (const std::exception& e) {
    c.expect(false, std::string("exception: ") + e.what());
  }
  c.within(start, budget, "criterion");
  const bool ok = c.failures().empty();
  failed_criteria += ok ? 0 : 1;
  std::printf("%s %2d %-28s %8.2fs / %.0fs", ok ? "PASS" : "FAIL", id, name, since(start), budget);
  for (const auto& n : c.notes()) std::printf("  %s", n.c_str());
  std::printf("\n");
  for (const auto& f : c.failures()) std::printf("       - %s\n", f.c_str());
  std::fflush(stdout);
}

TensorExpansion tensor(std::initializer_list<std::tuple<const char*, const char*, Coefficient>> terms) {
  TensorExpansion out;
  for (const auto& [l, r, c] : terms) out[{P(l), P(r)}] = c;
  return out;
}

void coproduct_exactness(Checks& c) {
  c.expect(unshuffle(P("213")) == tensor({{"", "213", 1}, {"1", "12", 2}, {"1", "21", 1}, {"12", "1", 2},
                                          {"21", "1", 1}, {"213", "", 1}}),
           "unshuffle(213)");
  c.expect(unshuffle(P("1234")) == tensor({{"", "1234", 1}, {"1", "123", 4}, {"12", "12", 6},
                                           {"123", "1", 4}, {"1234", "", 1}}),
           "unshuffle(1234)");
  c.expect(unshuffle(P("1432")) == tensor({{"", "1432", 1}, {"1", "132", 3}, {"1", "321", 1},
                                           {"12", "21", 3}, {"21", "12", 3}, {"132", "1", 3},
                                           {"321", "1", 1}, {"1432", "", 1}}),
           "unshuffle(1432)");
  c.equal(coefficient(P("1432"), P("1"), P("132")), 3u, "coefficient of 1 (x) 132 in 1432");
}

void product_exactness(Checks& c) {
  const Expansion expected = {
      {P("1243"), 1}, {P("1324"), 1}, {P("1342"), 2}, {P("1423"), 2}, {P("1432"), 3},
      {P("2134"), 1}, {P("2314"), 2}, {P("2341"), 3}, {P("2413"), 1}, {P("2431"), 2},
      {P("3124"), 2}, {P("3142"), 1}, {P("3214"), 3}, {P("3241"), 2}, {P("3421"), 1},
      {P("4123"), 3}, {P("4132"), 2}, {P("4213"), 2}, {P("4231"), 1}, {P("4312"), 1},
  };
  const Expansion got = shuffle(P("12"), P("21"));
  c.equal(got.size(), expected.size(), "number of terms in 12 shuffle 21");
  c.expect(got == expected, "terms of 12 shuffle 21");
}

void square_table(Checks& c) {
  const std::set<Permutation> table = {
      P("1234"), P("1243"), P("1423"), P("1324"), P("1342"), P("4132"), P("3124"),
      P("3142"), P("3412"), P("4312"), P("2134"), P("2143"), P("2413"), P("4213"),
      P("2314"), P("2431"), P("4231"), P("3241"), P("3421"), P("4321")};
  std::set<Permutation> found;
  for (const auto& pi : oracle::all_permutations(4)) {
    if (is_square(pi)) found.insert(pi);
  }
  c.equal(found.size(), table.size(), "size-4 squares");
  c.expect(found == table, "size-4 squares equal the table");
}

void counting_sequences(Checks& c) {
  const std::vector<Permutation> p123{P("123")}, p132{P("132")};
  auto start = Clock::now();
  c.equal(count_squares(4), 20u, "squares n=4");
  c.equal(count_squares(6), 504u, "squares n=6");
  c.equal(count_squares(8), 21032u, "squares n=8");
  c.within(start, 60, "squares n<=8");

  start = Clock::now();
  c.equal(count_squares(10), 1293418u, "squares n=10");
  c.equal(count_squares_avoiding(6, p123), 118u, "avoid 123 n=6");
  c.equal(count_squares_avoiding(8, p123), 1218u, "avoid 123 n=8");
  c.equal(count_squares_avoiding(10, p123), 14272u, "avoid 123 n=10");
  c.equal(count_squares_avoiding(6, p132), 84u, "avoid 132 n=6");
  c.equal(count_squares_avoiding(8, p132), 743u, "avoid 132 n=8");
  c.equal(count_squares_avoiding(10, p132), 7108u, "avoid 132 n=10");
  c.equal(count_square_classes(4), 6u, "classes n=4");
  c.equal(count_square_classes(6), 81u, "classes n=6");
  c.equal(count_square_classes(8), 2774u, "classes n=8");
  c.equal(count_square_classes(10), 162945u, "classes n=10");
  c.within(start, 1800, "size-10 stress counts");

  start = Clock::now();
  const std::uint64_t words[] = {1, 0, 2, 0, 6, 0, 22, 0, 82, 0, 320, 0, 1268, 0, 5102};
  for (int len = 0; len <= 14; ++len) {
    c.equal(count_square_words(len), words[len], "square words length " + std::to_string(len));
  }
  c.within(start, 60, "square words up to 14");
  const std::uint64_t sixteen = count_square_words(16);
  c.equal(sixteen, 20632u, "square words length 16");
  c.note("square-words(16)=" + std::to_string(sixteen));
}

void engine_equivalence(Checks& c) {
  int disagreements = 0;
  std::uint64_t squares8 = 0;
  for (int n = 0; n <= 8; ++n) {
    for (const auto& pi : oracle::all_permutations(n)) {
      const bool by_matching = is_square_via_matching(pi).has_value();
      disagreements += is_square(pi).has_value() != by_matching;
      squares8 += n == 8 && by_matching;
    }
  }
  c.equal(squares8, 21032u, "squares of size 8 found by the matching engine");
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 1000; ++i) {
    const Permutation pi = oracle::random_permutation(10, rng);
    disagreements += is_square(pi).has_value() != is_square_via_matching(pi).has_value();
  }
  c.equal(disagreements, 0, "engine disagreements on S_0..S_8 and 1000 of S_10");
}

void bijection(Checks& c) {
  const std::vector<Permutation> avoided{P("213"), P("231")};
  for (int len = 0; len <= 12; len += 2) {
    const std::uint64_t words = count_square_words(len);
    // Squares among the avoiders, reached through the image of bin_to_perm.
    std::set<Permutation> avoiders, square_avoiders, images;
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << len); ++bits) {
      BinaryWord u(static_cast<std::size_t>(len));
      for (int i = 0; i < len; ++i) u[static_cast<std::size_t>(i)] = bits >> i & 1u;
      const Permutation pi = bin_to_perm(u);
      avoiders.insert(pi);
      if (is_square_word(u)) {
        images.insert(pi);
        c.expect(perm_to_bin(pi) == u, "perm_to_bin inverts bin_to_perm on " + format_binary_word(u));
      }
    }
    for (const auto& pi : avoiders) {
      c.expect(avoids(pi, avoided), "image avoids 213 and 231");
      if (is_square(pi)) square_avoiders.insert(pi);
    }
    const std::uint64_t expected_avoiders = len == 0 ? 1 : std::uint64_t{1} << (len - 1);
    c.equal(avoiders.size(), expected_avoiders, "avoiders of size " + std::to_string(len));
    c.equal(images.size(), words, "distinct images of square words of length " + std::to_string(len));
    c.expect(images == square_avoiders, "square words map onto square avoiders of size " + std::to_string(len));
    if (len <= 10) {
      c.equal(count_squares_avoiding(len, avoided), words, "avoider count size " + std::to_string(len));
    }
  }
}

Expansion apply(const Expansion& e, Permutation (*f)(const Permutation&)) {
  Expansion out;
  for (const auto& [pi, k] : e) out[f(pi)] += k;
  return out;
}

void algebraic_properties(Checks& c) {
  int bad = 0;
  for (int a = 0; a <= 4; ++a) {
    for (int b = 0; a + b <= 4; ++b) {
      for (const auto& s : oracle::all_permutations(a)) {
        for (const auto& v : oracle::all_permutations(b)) {
          const Expansion prod = shuffle(s, v);
          for (const auto& pi : oracle::all_permutations(a + b)) {
            const auto it = prod.find(pi);
            const Coefficient lhs = it == prod.end() ? 0 : it->second;
            bad += lhs != coefficient(pi, s, v);
          }
        }
      }
    }
  }
  c.equal(bad, 0, "duality failures, sizes <= 4");

  bad = 0;
  int grading = 0;
  auto check_expansion = [&](const Permutation& pi) {
    const TensorExpansion e = unshuffle(pi);
    grading += total_weight(e) != (Coefficient{1} << pi.size());
    for (const auto& [key, k] : e) {
      grading += key.first.size() + key.second.size() != pi.size();
      bad += coefficient(pi, key.second, key.first) != k;
    }
  };
  for (int n = 0; n <= 8; ++n) {
    for (const auto& pi : oracle::all_permutations(n)) check_expansion(pi);
  }
  std::mt19937_64 rng(7);
  for (int n = 9; n <= 12; ++n) {
    for (int i = 0; i < 100; ++i) check_expansion(oracle::random_permutation(n, rng));
  }
  c.equal(bad, 0, "cocommutativity failures");
  c.equal(grading, 0, "grading or weight failures");
  c.note("grading: exhaustive n<=8, 100 samples each n=9..12");

  bad = 0;
  for (int n = 0; n <= 6; ++n) {
    for (const auto& pi : oracle::all_permutations(n)) {
      std::map<oracle::Triple, Coefficient> left, right;
      for (const auto& [key, k] : unshuffle(pi)) {
        for (const auto& [in, d] : unshuffle(key.first)) left[{in.first, in.second, key.second}] += k * d;
        for (const auto& [in, d] : unshuffle(key.second)) right[{key.first, in.first, in.second}] += k * d;
      }
      bad += left != right || left != oracle::three_way(pi);
    }
  }
  c.equal(bad, 0, "coassociativity failures, sizes <= 6");

  bad = 0;
  Permutation (*const maps[])(const Permutation&) = {&mirror, &complement, &inverse};
  for (int a = 0; a <= 3; ++a) {
    for (int b = 0; b <= 3; ++b) {
      for (const auto& s : oracle::all_permutations(a)) {
        for (const auto& v : oracle::all_permutations(b)) {
          const Expansion prod = shuffle(s, v);
          for (auto f : maps) bad += apply(prod, f) != shuffle(f(s), f(v));
        }
      }
    }
  }
  c.equal(bad, 0, "endomorphism failures, sizes <= 3");
}

void symmetry_stability(Checks& c) {
  int bad = 0;
  for (int n = 0; n <= 8; ++n) {
    for (const auto& pi : oracle::all_permutations(n)) {
      const bool sq = is_square_fast(pi.letters());
      const Permutation m = mirror(pi), k = complement(pi), i = inverse(pi);
      bad += sq != is_square_fast(m.letters());
      bad += sq != is_square_fast(k.letters());
      bad += sq != is_square_fast(i.letters());
      if (!sq) continue;
      const auto roots = square_roots(pi);
      const auto rm = square_roots(m), rk = square_roots(k), ri = square_roots(i);
      for (const auto& r : roots) {
        bad += !rm.count(mirror(r)) + !rk.count(complement(r)) + !ri.count(inverse(r));
      }
    }
  }
  c.equal(bad, 0, "symmetry failures on S_0..S_8");
}

void monotone_blocks(Checks& c) {
  std::mt19937_64 rng(505);
  int bad = 0;
  long matchings = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const gen::BlockShaped inst = gen::block_shaped(rng, trial % 2 == 0);
    auto in = [](int p, std::pair<int, int> r) { return r.first <= p && p <= r.second; };
    for_each_p1p2_matching(inst.pi, [&](const OrientedMatching& m) {
      int between = 0;
      for (const Arc& arc : m.arcs) {
        between += (in(arc.source, inst.first) && in(arc.target, inst.second)) ||
                   (in(arc.source, inst.second) && in(arc.target, inst.first));
      }
      bad += between > 1;
      ++matchings;
      return true;
    });
  }
  c.equal(bad, 0, "matchings with two or more arcs between the blocks");
  c.expect(matchings > 0, "some generated instance is a square");
  c.note("matchings=" + std::to_string(matchings));
}

void reduction(Checks& c) {
  int instances = 0, invalid = 0;
  for (int n = 1; n <= 6; ++n) {
    const auto texts = oracle::all_permutations(n);
    for (int k = 1; k <= 4; ++k) {
      const auto patterns = oracle::all_permutations(k);
      for (const auto& pi : texts) {
        for (const auto& sigma : patterns) {
          const Reduction r = build_mu({pi, sigma});
          ++instances;
          if (!validate_layout(r.mu, r.layout).ok() || r.mu.size() != reduction_size(n, k)) ++invalid;
        }
      }
    }
  }
  c.equal(invalid, 0, "layouts failing validation");
  c.note("layouts=" + std::to_string(instances));

  std::mt19937_64 rng(77);
  int verified = 0;
  std::string first_error;
  for (int i = 0; i < 200; ++i) {
    const int n = 1 + static_cast<int>(rng() % 8);
    const int k = 1 + static_cast<int>(rng() % static_cast<unsigned>(std::min(n, 4)));
    const Permutation pi = oracle::random_permutation(n, rng);
    std::vector<int> positions(static_cast<std::size_t>(n));
    std::iota(positions.begin(), positions.end(), 1);
    std::shuffle(positions.begin(), positions.end(), rng);
    PositionSet occurrence(positions.begin(), positions.begin() + k);
    std::sort(occurrence.begin(), occurrence.end());
    const ReductionInstance inst{pi, standardize(subword(pi, occurrence))};
    const Reduction r = build_mu(inst);
    try {
      forward_witness(inst, occurrence, r.mu, r.layout);
      ++verified;
    } catch (const Error& e) {
      if (first_error.empty()) first_error = e.what();
    }
  }
  c.equal(verified, 200, "forward certificates passing std equality");
  if (!first_error.empty()) c.expect(false, "first certificate error: " + first_error);
}

}  // namespace

int main() {
  criterion(1, "coproduct-exactness", 1, coproduct_exactness);
  criterion(2, "product-exactness", 1, product_exactness);
  criterion(3, "square-table", 1, square_table);
  criterion(4, "counting-sequences", 1800, counting_sequences);
  criterion(5, "engine-equivalence", 600, engine_equivalence);
  criterion(6, "word-bijection", 120, bijection);
  criterion(7, "algebraic-properties", 120, algebraic_properties);
  criterion(8, "symmetry-stability", 300, symmetry_stability);
  criterion(9, "monotone-block-arcs", 120, monotone_blocks);
  criterion(10, "reduction", 120, reduction);
  std::printf("%d of 10 criteria failed\n", failed_criteria);
  return failed_criteria == 0 ? 0 : 1;
}
