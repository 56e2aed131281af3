// Acceptance suite. Each criterion prints one PASS or FAIL line; with
// arguments only the listed criteria run. Exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "random_automata.hpp"
#include "ptsep/closures.hpp"
#include "ptsep/constructions.hpp"
#include "ptsep/error.hpp"
#include "ptsep/json_io.hpp"
#include "ptsep/operations.hpp"
#include "ptsep/oracles.hpp"
#include "ptsep/prefix_towers.hpp"
#include "ptsep/pt_check.hpp"
#include "ptsep/separation.hpp"

#ifndef PTSEP_FIXTURES
#define PTSEP_FIXTURES "tests/fixtures"
#endif

namespace ptsep {
namespace {

using testing::Rng;
using Clock = std::chrono::steady_clock;

// Collects failures of one criterion.
class Check {
public:
  void expect(bool ok, const std::string& what) {
    ++checks_;
    if (!ok) {
      failures_.push_back(what);
    }
  }
  void note(const std::string& text) { notes_.push_back(text); }
  bool passed() const { return failures_.empty(); }
  std::size_t checks() const { return checks_; }

  std::string summary() const {
    std::ostringstream out;
    out << checks_ << " checks";
    for (const std::string& n : notes_) {
      out << "; " << n;
    }
    if (!failures_.empty()) {
      out << "; " << failures_.size() << " failed:";
      for (std::size_t i = 0; i < failures_.size() && i < 12; ++i) {
        out << (i == 0 ? " " : " | ") << failures_[i];
      }
      if (failures_.size() > 12) {
        out << " | ...";
      }
    }
    return out.str();
  }

private:
  std::size_t checks_ = 0;
  std::vector<std::string> failures_;
  std::vector<std::string> notes_;
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string label(const FamilyInstance& f) { return f.family + "(" + std::to_string(f.param) + ")"; }

bool tower_ok(const FamilyInstance& f) {
  return f.tower.has_value() && verify_tower(f.left, f.right, *f.tower) &&
         f.tower->height() == f.expected_height;
}

std::vector<FamilyInstance> separable_families() {
  std::vector<FamilyInstance> out;
  for (std::size_t n : {4u, 6u, 8u, 10u, 12u}) out.push_back(gen_quadratic(n));
  for (std::size_t m = 1; m <= 8; ++m) out.push_back(gen_exp(m));
  for (std::size_t m = 1; m <= 4; ++m) out.push_back(gen_2exp(m));
  for (std::size_t n = 1; n <= 8; ++n) out.push_back(gen_expdfa(n));
  return out;
}

void quadratic(Check& c) {
  double slowest = 0;
  for (std::size_t n : {4u, 6u, 8u, 10u, 12u}) {
    const auto start = Clock::now();
    const FamilyInstance f = gen_quadratic(n);
    const std::string id = label(f);
    c.expect(f.expected_height == n * n - n + 1, id + " expected height");
    c.expect(tower_ok(f), id + " tower");
    SeparationOptions options;
    options.build_separator = false;
    c.expect(decide_separability(f.left, f.right, options).separable(), id + " separable");
    const double t = seconds_since(start);
    slowest = std::max(slowest, t);
    c.expect(t < 10.0, id + " took " + std::to_string(t) + " s");
  }
  c.note("slowest instance " + std::to_string(slowest) + " s");
}

void exponential(Check& c) {
  for (std::size_t m = 1; m <= 8; ++m) {
    const FamilyInstance f = gen_exp(m);
    const std::string id = label(f);
    c.expect(f.expected_height == std::size_t{2} << m, id + " expected height");
    c.expect(tower_ok(f), id + " tower");
    c.expect(minimal_dfa(f.right).state_count() == 2, id + " B minimal DFA size");
    if (m <= 6) {
      c.expect(minimal_dfa(f.left).state_count() == std::size_t{2} << m, id + " A minimal DFA size");
    }
    if (m <= 5) {
      c.expect(is_piecewise_testable(f.left), id + " A piecewise testable");
    }
  }
}

void doubly_indexed(Check& c) {
  // The element list is checked word by word by direct simulation, against
  // the exact maximum and the brute-force search at m ≤ 2 before the larger
  // instances are trusted.
  for (std::size_t m = 1; m <= 2; ++m) {
    const FamilyInstance f = gen_2exp(m);
    const std::string id = label(f);
    for (const TowerElement& e : f.tower->elements) {
      const Automaton& in = e.side == Side::left ? f.left : f.right;
      const Automaton& out = e.side == Side::left ? f.right : f.left;
      c.expect(accepts(in, e.word), id + " element in its language");
      c.expect(!accepts(out, e.word), id + " element outside the other language");
    }
    const auto exact = exact_max_tower_height(f.left, f.right);
    c.expect(exact.has_value() && *exact >= f.expected_height, id + " exact maximum covers the tower");
  }
  const BruteHeight brute = brute_max_tower_height(gen_2exp(1).left, gen_2exp(1).right,
                                                   TowerRelation::subsequence, 6);
  c.expect(brute == BruteHeight{BruteHeight::Kind::finite, 4}, "2exp(1) brute-force height");
  for (std::size_t m = 1; m <= 4; ++m) {
    const FamilyInstance f = gen_2exp(m);
    const std::string id = label(f);
    const std::size_t p = std::size_t{1} << m;
    c.expect(f.expected_height == p * (p - 1) + 2, id + " expected height");
    c.expect(tower_ok(f), id + " tower");
    SeparationOptions options;
    options.build_separator = false;
    c.expect(decide_separability(f.left, f.right, options).separable(), id + " separable");
  }
}

void dfa_family(Check& c) {
  for (std::size_t n = 1; n <= 8; ++n) {
    const FamilyInstance f = gen_expdfa(n);
    const std::string id = label(f);
    c.expect(f.expected_height == std::size_t{1} << n, id + " expected height");
    c.expect(tower_ok(f), id + " tower");
    c.expect(f.left.is_structurally_deterministic() && f.right.is_structurally_deterministic(),
             id + " deterministic");
    c.expect(f.left.alphabet_size() == n * (n + 1) / 2 + 1, id + " alphabet size");
    if (n == 3) {
      c.expect(format_word(f.left.alphabet(), f.tower->elements.back().word) ==
                   "a3_2 a3_1 a3_0 b a1_0 b a2_1 a2_0 b a1_0 b",
               id + " top element");
    }
  }
}

void upper_bound(Check& c) {
  for (const FamilyInstance& f : separable_families()) {
    if (!tower_ok(f)) {
      c.expect(false, label(f) + " tower does not verify");
      continue;
    }
    const std::size_t n = std::max(f.left.state_count(), f.right.state_count());
    c.expect(BigInt(f.tower->height()) <= upper_bound_height(n, f.left.alphabet_size()),
             label(f) + " exceeds the bound");
  }
}

void separator_sound(Check& c, const Automaton& left, const Automaton& right, const std::string& id) {
  try {
    const RefinementChain chain = refinement_chain(left, right);
    if (chain.verdict != ChainVerdict::separable) {
      c.expect(false, id + " not separable");
      return;
    }
    const Automaton s = build_separator(chain);
    c.expect(includes(s, right), id + " separator misses right words");
    c.expect(is_empty(intersection(s, left)), id + " separator meets left");
    c.expect(is_piecewise_testable(s), id + " separator not piecewise testable");
  } catch (const Error& e) {
    c.expect(false, id + " " + std::string(to_string(e.kind())) + ": " + e.what());
  }
}

void separator(Check& c) {
  for (const FamilyInstance& f : separable_families()) {
    separator_sound(c, f.left, f.right, label(f));
  }
  Rng rng(20150101);
  std::size_t found = 0;
  std::size_t tried = 0;
  while (found < 50) {
    ++tried;
    const Alphabet sigma = testing::letters_alphabet(1 + rng() % 3);
    const Automaton l = testing::random_nfa(rng, 1 + rng() % 4, sigma, 0.3);
    const Automaton r = testing::random_nfa(rng, 1 + rng() % 4, sigma, 0.3);
    if (refinement_chain(l, r).verdict != ChainVerdict::separable) {
      continue;
    }
    ++found;
    separator_sound(c, l, r, "random pair " + std::to_string(tried));
  }
  c.note(std::to_string(found) + " random separable pairs out of " + std::to_string(tried));
}

const Circuit sample_circuit{{{GateKind::zero}, {GateKind::one}, {GateKind::conj, 1, 2}, {GateKind::disj, 3, 3}}};

void mcvp(Check& c) {
  std::vector<Circuit> circuits{sample_circuit};
  Rng rng(1299709);
  for (int i = 0; i < 100; ++i) {
    circuits.push_back(testing::random_circuit(rng, 1 + rng() % 12));
  }
  std::size_t ones = 0;
  for (std::size_t i = 0; i < circuits.size(); ++i) {
    const bool value = eval_circuit(circuits[i]);
    ones += value ? 1 : 0;
    const AutomatonPair p = gen_mcvp(circuits[i]);
    c.expect(value == !decide_separability(p.left, p.right).separable(), "circuit " + std::to_string(i));
  }
  c.expect(!eval_circuit(sample_circuit), "sample circuit value");
  c.note(std::to_string(ones) + " of " + std::to_string(circuits.size()) + " circuits evaluate to 1");
}

void prefix_patterns(Check& c) {
  Rng rng(15485863);
  std::size_t reachable = 0;
  for (int i = 0; i < 50; ++i) {
    const std::size_t n = 1 + rng() % 8;
    const Digraph g = testing::random_digraph(rng, n, 0.1 + 0.3 * static_cast<double>(rng() % 4) / 3);
    const std::size_t s = rng() % n;
    const std::size_t t = rng() % n;
    const bool reach = reachability(g, s, t);
    reachable += reach ? 1 : 0;
    for (bool deterministic : {false, true}) {
      const std::string id = "graph " + std::to_string(i) + (deterministic ? " (dfa)" : "");
      const AutomatonPair p = gen_reachability(g, s, t, deterministic);
      const bool pattern = find_pattern(p.left, p.right).has_value();
      c.expect(pattern == reach, id + " pattern");
      c.expect(max_prefix_tower_height(p.left, p.right).infinite == pattern, id + " infinite height");
    }
  }
  c.note(std::to_string(reachable) + " of 50 targets reachable");
}

void prefix_bounds(Check& c) {
  for (std::size_t m = 1; m <= 5; ++m) {
    const FamilyInstance f = gen_exp(m);
    const Automaton a = minimal_dfa(f.left);
    const Automaton b = minimal_dfa(f.right);
    const PrefixHeight h = max_prefix_tower_height(a, b);
    const std::string id = label(f);
    c.expect(!h.infinite && h.height == std::size_t{2} << m, id + " prefix height");
    c.expect(h.height == prefix_height_dfa_bound(a.state_count(), b.state_count()), id + " tight");
  }
  Rng rng(31337);
  std::size_t finite = 0;
  for (int i = 0; i < 200; ++i) {
    const Alphabet sigma = testing::letters_alphabet(1 + rng() % 3);
    const Automaton a = minimal_dfa(testing::random_dfa(rng, 1 + rng() % 5, sigma));
    const Automaton b = minimal_dfa(difference(testing::random_dfa(rng, 1 + rng() % 5, sigma), a));
    const PrefixHeight h = max_prefix_tower_height(a, b);
    if (h.infinite) {
      continue;
    }
    ++finite;
    const std::size_t mn = a.state_count() * b.state_count();
    const std::string id = "dfa pair " + std::to_string(i);
    if (mn == 1) {
      // Σ* against ∅ still has the one-element tower (ε).
      c.expect(h.height <= 1, id);
    } else {
      c.expect(h.height <= prefix_height_dfa_bound(a.state_count(), b.state_count()), id);
    }
  }
  c.note(std::to_string(finite) + " finite random DFA pairs");
}

void determinization(Check& c) {
  for (DeterminizationVariant variant : {DeterminizationVariant::per_state, DeterminizationVariant::per_letter}) {
    const std::string name = variant == DeterminizationVariant::per_state ? "per-state" : "per-letter";
    for (std::size_t m = 1; m <= 4; ++m) {
      const FamilyInstance f = gen_exp(m);
      const std::string id = label(f) + " " + name;
      const DeterminizedPair d = tower_preserving_determinization(f.left, f.right, variant);
      c.expect(d.left.is_structurally_deterministic() && d.right.is_structurally_deterministic(),
               id + " deterministic");
      const std::size_t letters = f.left.alphabet_size();
      for (const auto& [source, out] : {std::pair{&d.left_source, &d.left}, std::pair{&d.right_source, &d.right}}) {
        const std::size_t n = source->state_count();
        const std::size_t limit = variant == DeterminizationVariant::per_state ? n + n * n : n + letters * n;
        c.expect(out->state_count() <= limit, id + " state count");
      }
      const Tower t = transform_tower(*f.tower, d);
      c.expect(t.height() == f.tower->height() && verify_tower(d.left, d.right, t), id + " tower");
      const ChainVerdict before = refinement_chain(f.left, f.right).verdict;
      c.expect(refinement_chain(d.left, d.right).verdict == before, id + " verdict");
    }
  }
}

void oracle_gate(Check& c) {
  Rng rng(104729);
  const Alphabet sigma = testing::letters_alphabet(2);
  std::size_t separable = 0;
  for (int i = 0; i < 200; ++i) {
    const Automaton l = testing::random_nfa(rng, 1 + rng() % 3, sigma, 0.3);
    const Automaton r = testing::random_nfa(rng, 1 + rng() % 3, sigma, 0.3);
    const std::string id = "pair " + std::to_string(i);
    const SeparationResult res = decide_separability(l, r);
    const BruteHeight brute = brute_max_tower_height(l, r, TowerRelation::subsequence, 10);
    const auto exact = exact_max_tower_height(l, r);
    if (res.separable()) {
      ++separable;
      if (!exact.has_value()) {
        c.expect(false, id + " no exact height");
        continue;
      }
      if (brute.kind == BruteHeight::Kind::finite) {
        c.expect(brute.height == *exact, id + " height " + std::to_string(brute.height) + " vs " +
                                             std::to_string(*exact));
      } else {
        c.expect(brute.height <= *exact, id + " brute height exceeds exact");
      }
    } else {
      c.expect(res.chain.verdict == ChainVerdict::infinite_tower, id + " verdict");
      c.expect(!exact.has_value(), id + " exact height on non-separable pair");
      c.expect(brute.kind == BruteHeight::Kind::at_least, id + " brute-force search found a bound");
    }
  }
  c.note(std::to_string(separable) + " of 200 pairs separable");
}

// Equivalent NFA with duplicated states, a shuffled numbering and an
// unreachable junk state.
Automaton scramble(const Automaton& a, Rng& rng) {
  const std::size_t n = a.state_count();
  std::vector<std::vector<StateId>> copies(n);
  std::vector<StateId> order;
  std::size_t total = 0;
  for (StateId q = 0; q < n; ++q) {
    const std::size_t k = 1 + rng() % 2;
    for (std::size_t i = 0; i < k; ++i) {
      copies[q].push_back(static_cast<StateId>(total++));
    }
  }
  const StateId junk = static_cast<StateId>(total++);
  std::vector<StateId> perm(total);
  std::iota(perm.begin(), perm.end(), StateId{0});
  std::shuffle(perm.begin(), perm.end(), rng);
  AutomatonBuilder b(a.alphabet(), total);
  // Every copy of q keeps q's residual language as long as each of its
  // moves reaches at least one copy of the original target.
  auto some_copies = [&](StateId q) {
    std::vector<StateId> chosen;
    for (StateId c : copies[q]) {
      if (rng() % 2 == 0) chosen.push_back(c);
    }
    if (chosen.empty()) chosen.push_back(copies[q][rng() % copies[q].size()]);
    return chosen;
  };
  for (StateId q = 0; q < n; ++q) {
    for (Symbol s = 0; s < a.alphabet_size(); ++s) {
      for (StateId t : a.successors(q, s)) {
        for (StateId c : copies[q]) {
          for (StateId d : some_copies(t)) {
            b.add_transition(perm[c], s, perm[d]);
          }
        }
      }
    }
    if (a.is_final(q)) {
      for (StateId c : copies[q]) b.set_final(perm[c]);
    }
  }
  for (StateId q : a.initials()) {
    for (StateId c : some_copies(q)) b.set_initial(perm[c]);
  }
  b.set_final(perm[junk]);
  for (Symbol s = 0; s < a.alphabet_size(); ++s) {
    b.add_transition(perm[junk], s, perm[copies[0].front()]);
  }
  return b.build();
}

void pt_check(Check& c) {
  AutomatonBuilder even({"a"}, 2);
  even.set_initial(0).set_final(0).add_transition(0, "a", 1).add_transition(1, "a", 0);
  c.expect(!is_piecewise_testable(even.build(true)), "(aa)*");

  const Alphabet ab{"a", "b"};
  AutomatonBuilder all(ab, 1);
  all.set_initial(0).set_final(0).add_transition(0, "a", 0).add_transition(0, "b", 0);
  c.expect(is_piecewise_testable(gen_universality(all.build())), "universal input");

  AutomatonBuilder ends_a(ab, 2);
  ends_a.set_initial(0).set_final(1);
  ends_a.add_transition(0, "a", 0).add_transition(0, "b", 0).add_transition(0, "a", 1);
  c.expect(!is_piecewise_testable(gen_universality(ends_a.build())), "non-universal input");
  AutomatonBuilder single(ab, 2);
  single.set_initial(0).set_final(1).add_transition(0, "b", 1);
  c.expect(!is_piecewise_testable(gen_universality(single.build())), "finite input");

  const Json fixtures = read_json_file(PTSEP_FIXTURES "/pt_labeled.json");
  std::vector<std::size_t> order(fixtures["cases"].size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng rng(4242);
  std::shuffle(order.begin(), order.end(), rng);
  std::size_t positive = 0;
  for (std::size_t i : order) {
    const Json& entry = fixtures["cases"][i];
    const std::string name = entry["name"].get<std::string>();
    const bool expected = entry["piecewise_testable"].get<bool>();
    positive += expected ? 1 : 0;
    const Automaton base = automaton_from_json(entry["automaton"]);
    const Automaton scrambled = scramble(base, rng);
    c.expect(equivalent(base, scrambled), name + " scrambling changed the language");
    c.expect(is_piecewise_testable(scrambled) == expected, name);
    c.expect(is_piecewise_testable(base) == expected, name + " as given");
  }
  c.note(std::to_string(order.size()) + " labeled cases, " + std::to_string(positive) + " piecewise testable");
}

struct Criterion {
  int id;
  std::string name;
  std::function<void(Check&)> run;
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all{
      {1, "quadratic family", quadratic},
      {2, "exponential family", exponential},
      {3, "doubly-indexed family", doubly_indexed},
      {4, "dfa family", dfa_family},
      {5, "tower height upper bound", upper_bound},
      {6, "separator soundness", separator},
      {7, "mcvp equivalence", mcvp},
      {8, "prefix pattern equivalence", prefix_patterns},
      {9, "prefix height bounds", prefix_bounds},
      {10, "determinization transforms", determinization},
      {11, "oracle gate", oracle_gate},
      {12, "piecewise testability cross-check", pt_check},
  };
  return all;
}

} // namespace
} // namespace ptsep

int main(int argc, char** argv) {
  using namespace ptsep;
  std::vector<int> wanted;
  for (int i = 1; i < argc; ++i) {
    wanted.push_back(std::atoi(argv[i]));
  }
  bool all_passed = true;
  for (const Criterion& criterion : criteria()) {
    if (!wanted.empty() && std::find(wanted.begin(), wanted.end(), criterion.id) == wanted.end()) {
      continue;
    }
    Check check;
    const auto start = Clock::now();
    try {
      criterion.run(check);
    } catch (const std::exception& e) {
      check.expect(false, std::string("unexpected error: ") + e.what());
    }
    const bool ok = check.passed() && check.checks() > 0;
    all_passed = all_passed && ok;
    std::cout << (ok ? "PASS" : "FAIL") << " criterion " << criterion.id << " (" << criterion.name
              << ", " << static_cast<long>(seconds_since(start) * 1000) << " ms): " << check.summary()
              << std::endl;
  }
  return all_passed ? 0 : 1;
}
