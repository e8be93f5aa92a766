// permsq: command-line front end for the permsq library.
//
// Exit status: 0 on success, 1 on domain errors (for example NotInImage,
// OddSize, WitnessCheckFailed), 2 on usage errors and malformed input.

#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "permsq/enumeration.hpp"
#include "permsq/perm.hpp"
#include "permsq/reduction.hpp"
#include "permsq/shuffle_algebra.hpp"
#include "permsq/square.hpp"
#include "permsq/word_bijection.hpp"

namespace {

using namespace permsq;

constexpr int kExitDomain = 1;
constexpr int kExitUsage = 2;

const char* kFormats = R"(Formats:
  permutation   space-separated one-based letters, e.g. "1 4 3 2"; a single
                run of digits ("1432") is read one letter per digit; the
                empty string is the empty permutation
  word          same syntax as a permutation, letters only need to be positive
  binary word   a 0/1 string, e.g. 100101101000
  witness       A/B string of length |pi|, e.g. ABAB
  matching      comma-separated source>target arcs, e.g. 1>3,2>6,4>7
Expansions print one "<coeff>\t<perm>" line per term, tensor expansions one
"<coeff>\t<left>\t⊗\t<right>" line per term, sorted by permutation word.
count prints "<size>\t<filter>\t<count>\t<seconds>".)";

struct Args {
  std::string perm, left, right, word, arcs;
  std::string engine = "direct";
  std::string count_kind, pattern_text, text_text;
  std::vector<std::string> avoid;
  bool witness = false, verify_forward = false, layout = false;
  int size = 0, threads = 0;
  int unshuffle_cap = kDefaultUnshuffleCap;
  int shuffle_cap = kDefaultShuffleCap;
  int count_cap = -1;  // per-kind default
  std::int64_t reduce_cap = kDefaultReductionCap;
};

void print_yes_no(bool square) { std::cout << (square ? "square" : "not square") << '\n'; }

int run_is_square(const Args& a) {
  const Permutation pi = parse_permutation(a.perm);
  if (a.engine == "matching") {
    const auto m = is_square_via_matching(pi);
    print_yes_no(m.has_value());
    if (m && a.witness) std::cout << format_matching(*m) << '\n';
  } else {
    const auto w = is_square(pi);
    print_yes_no(w.has_value());
    if (w && a.witness) std::cout << format_witness(*w) << '\n';
  }
  return 0;
}

int run_count(const Args& a) {
  CountOptions opt;
  opt.threads = a.threads;
  opt.max_size = a.count_cap < 0 ? kDefaultCountCap : a.count_cap;
  CountReport report;
  if (a.count_kind == "squares") {
    std::vector<Permutation> patterns;
    for (const auto& p : a.avoid) patterns.push_back(parse_permutation(p));
    report = report_squares(a.size, patterns, opt);
  } else {
    if (!a.avoid.empty()) {
      std::cerr << "--avoid only applies to 'count squares'\n";
      return kExitUsage;
    }
    if (a.count_kind == "classes") {
      report = report_square_classes(a.size, opt);
    } else {
      const int cap = a.count_cap < 0 ? kDefaultSquareWordCap : a.count_cap;
      report = report_square_words(a.size, a.threads, cap);
    }
  }
  std::cout << format_report(report);
  return 0;
}

int run_reduce(const Args& a) {
  const ReductionInstance inst{parse_permutation(a.text_text), parse_permutation(a.pattern_text)};
  const Reduction r = build_mu(inst, a.reduce_cap);
  std::cout << format_permutation(r.mu) << '\n';
  if (a.layout) {
    for (const Block& b : r.layout.blocks) {
      std::cout << b.name << '\t' << b.first_position << '-' << b.last_position() << '\t'
                << b.min_value() << '-' << b.max_value() << '\n';
    }
  }
  if (a.verify_forward) {
    const auto report = validate_layout(r.mu, r.layout);
    for (const auto& problem : report.problems) std::cerr << "layout: " << problem << '\n';
    if (!report.ok()) return kExitDomain;
    const auto occurrence = find_occurrence(inst.sigma, inst.pi);
    if (!occurrence) {
      std::cout << "forward\tno-occurrence\n";
      return 0;
    }
    forward_witness(inst, *occurrence, r.mu, r.layout);
    std::cout << "forward\tverified\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Shuffle product, unshuffling coproduct and square permutations"};
  app.footer(kFormats);
  app.require_subcommand(1);
  Args a;

  auto* cmd_std = app.add_subcommand("std", "Standardize a word of distinct integers");
  cmd_std->add_option("word", a.word, "Word")->required();

  auto* cmd_shuffle = app.add_subcommand("shuffle", "Shuffle product of two permutations");
  cmd_shuffle->add_option("left", a.left)->required();
  cmd_shuffle->add_option("right", a.right)->required();
  cmd_shuffle->add_option("--max-size", a.shuffle_cap, "Cap on the combined size")
      ->capture_default_str();

  auto* cmd_unshuffle = app.add_subcommand("unshuffle", "Unshuffling coproduct of a permutation");
  cmd_unshuffle->add_option("perm", a.perm)->required();
  cmd_unshuffle->add_option("--max-size", a.unshuffle_cap, "Cap on the size")
      ->capture_default_str();

  auto* cmd_coeff = app.add_subcommand("coeff", "Multiplicity of left (x) right in the coproduct of perm");
  cmd_coeff->add_option("perm", a.perm)->required();
  cmd_coeff->add_option("left", a.left)->required();
  cmd_coeff->add_option("right", a.right)->required();

  auto* cmd_square = app.add_subcommand("is-square", "Decide whether a permutation is a square");
  cmd_square->add_option("perm", a.perm)->required();
  cmd_square->add_flag("--witness", a.witness, "Print the certificate");
  cmd_square->add_option("--engine", a.engine, "direct (A/B coloring) or matching (arcs)")
      ->check(CLI::IsMember({"direct", "matching"}))
      ->capture_default_str();

  auto* cmd_roots = app.add_subcommand("roots", "All square roots of an even-size permutation");
  cmd_roots->add_option("perm", a.perm)->required();

  auto* cmd_match = app.add_subcommand("match-check", "Check P1 and P2 for an oriented perfect matching");
  cmd_match->add_option("perm", a.perm)->required();
  cmd_match->add_option("--arcs", a.arcs, "Matching, e.g. 1>3,2>6")->required();

  auto* cmd_b2p = app.add_subcommand("b2p", "Binary word to (213,231)-avoiding permutation");
  cmd_b2p->add_option("word", a.word)->required();

  auto* cmd_p2b = app.add_subcommand("p2b", "(213,231)-avoiding permutation of even size to binary word");
  cmd_p2b->add_option("perm", a.perm)->required();

  auto* cmd_square_word = app.add_subcommand("is-square-word", "Decide whether a binary word is a shuffle square");
  cmd_square_word->add_option("word", a.word)->required();
  cmd_square_word->add_flag("--witness", a.witness, "Print the positions of one copy");

  auto* cmd_count = app.add_subcommand("count", "Count squares, square words or square classes");
  cmd_count->add_option("kind", a.count_kind, "squares | square-words | classes")
      ->required()
      ->check(CLI::IsMember({"squares", "square-words", "classes"}));
  cmd_count->add_option("--size", a.size, "Size or word length")->required()->check(CLI::NonNegativeNumber);
  cmd_count->add_option("--avoid", a.avoid, "Pattern to avoid (repeatable)");
  cmd_count->add_option("--threads", a.threads, "Worker threads (default: all cores)")
      ->check(CLI::NonNegativeNumber);
  cmd_count->add_option("--max-size", a.count_cap, "Cap on the size (default 10, or 20 for square-words)");

  auto* cmd_reduce = app.add_subcommand("reduce", "Build the reduction permutation mu from (text, pattern)");
  cmd_reduce->add_option("--pattern", a.pattern_text, "sigma")->required();
  cmd_reduce->add_option("--text", a.text_text, "pi")->required();
  cmd_reduce->add_flag("--verify-forward", a.verify_forward,
                       "Validate the layout and check the forward certificate");
  cmd_reduce->add_flag("--layout", a.layout, "Print block, position range, value range");
  cmd_reduce->add_option("--max-size", a.reduce_cap, "Cap on |mu|")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (cmd_std->parsed()) {
      std::cout << format_permutation(standardize(parse_word(a.word))) << '\n';
    } else if (cmd_shuffle->parsed()) {
      std::cout << format_expansion(
          shuffle(parse_permutation(a.left), parse_permutation(a.right), a.shuffle_cap));
    } else if (cmd_unshuffle->parsed()) {
      std::cout << format_tensor_expansion(unshuffle(parse_permutation(a.perm), a.unshuffle_cap));
    } else if (cmd_coeff->parsed()) {
      std::cout << coefficient(parse_permutation(a.perm), parse_permutation(a.left),
                               parse_permutation(a.right))
                << '\n';
    } else if (cmd_square->parsed()) {
      return run_is_square(a);
    } else if (cmd_roots->parsed()) {
      for (const auto& root : square_roots(parse_permutation(a.perm))) {
        std::cout << format_permutation(root) << '\n';
      }
    } else if (cmd_match->parsed()) {
      const Permutation pi = parse_permutation(a.perm);
      const OrientedMatching m = parse_matching(a.arcs);
      std::cout << "P1\t" << (check_p1(pi, m) ? "true" : "false") << '\n';
      std::cout << "P2\t" << (check_p2(pi, m) ? "true" : "false") << '\n';
    } else if (cmd_b2p->parsed()) {
      std::cout << format_permutation(bin_to_perm(parse_binary_word(a.word))) << '\n';
    } else if (cmd_p2b->parsed()) {
      std::cout << format_binary_word(perm_to_bin(parse_permutation(a.perm))) << '\n';
    } else if (cmd_square_word->parsed()) {
      const auto positions = is_square_word(parse_binary_word(a.word));
      print_yes_no(positions.has_value());
      if (positions && a.witness) std::cout << format_word(*positions) << '\n';
    } else if (cmd_count->parsed()) {
      return run_count(a);
    } else if (cmd_reduce->parsed()) {
      return run_reduce(a);
    }
  } catch (const Error& e) {
    std::cerr << e.what() << '\n';
    const bool usage = e.code() == ErrorCode::kParse || e.code() == ErrorCode::kInvalidPermutation;
    return usage ? kExitUsage : kExitDomain;
  }
  return 0;
}
