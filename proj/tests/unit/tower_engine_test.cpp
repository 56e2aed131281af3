#include <gtest/gtest.h>

#include "languages.hpp"
#include "random_automata.hpp"
#include "ptsep/closures.hpp"
#include "ptsep/constructions.hpp"
#include "ptsep/error.hpp"
#include "ptsep/operations.hpp"
#include "ptsep/oracles.hpp"
#include "ptsep/pt_check.hpp"
#include "ptsep/separation.hpp"

namespace ptsep {
namespace {

using testing::chars;

const Alphabet ab{"a", "b"};

void expect_sound(const SeparationResult& r, const Automaton& left, const Automaton& right) {
  ASSERT_TRUE(r.separable());
  ASSERT_TRUE(r.separator.has_value());
  EXPECT_TRUE(includes(*r.separator, right));
  EXPECT_TRUE(is_empty(intersection(*r.separator, left)));
  EXPECT_TRUE(is_piecewise_testable(*r.separator));
}

void expect_monotone(const RefinementChain& chain) {
  const Automaton* l = &chain.left0;
  const Automaton* r = &chain.right0;
  for (const ChainStep& step : chain.steps) {
    EXPECT_TRUE(includes(*l, step.left));
    EXPECT_TRUE(includes(*r, step.right));
    l = &step.left;
    r = &step.right;
  }
}

TEST(RefineStep, EmptyStaysEmpty) {
  const Automaton e = empty_automaton(ab);
  const auto [l, r] = refine_step(e, e, e, e);
  EXPECT_TRUE(is_empty(l));
  EXPECT_TRUE(is_empty(r));
}

TEST(RefineStep, SharedWordIsAFixpoint) {
  const Automaton a = trim(minimal_dfa(word_automaton(ab, chars(ab, "a"))));
  const auto [l, r] = refine_step(a, a, a, a);
  EXPECT_EQ(l, a);
  EXPECT_EQ(r, a);
}

TEST(RefineStep, FollowsDefinition) {
  const FamilyInstance f = gen_exp(2);
  const RefinementChain chain = refinement_chain(f.left, f.right);
  const Automaton* l = &chain.left0;
  const Automaton* r = &chain.right0;
  for (const ChainStep& step : chain.steps) {
    EXPECT_TRUE(equivalent(step.left, intersection(chain.left0, down_closure(*r))));
    EXPECT_TRUE(equivalent(step.right, intersection(chain.right0, down_closure(step.left))));
    l = &step.left;
    r = &step.right;
  }
  (void)l;
}

TEST(Decide, QuadraticFourEmpties) {
  const FamilyInstance f = gen_quadratic(4);
  const SeparationResult r = decide_separability(f.left, f.right);
  EXPECT_EQ(r.chain.verdict, ChainVerdict::separable);
  expect_monotone(r.chain);
  expect_sound(r, f.left, f.right);
}

TEST(Decide, AlternatingWordsAreNotSeparable) {
  SeparationOptions options;
  options.witness_height = 3;
  const SeparationResult r =
      decide_separability(testing::a_ba_star(), testing::b_ab_star(), options);
  EXPECT_EQ(r.chain.verdict, ChainVerdict::infinite_tower);
  ASSERT_TRUE(r.witness.has_value());
  const Tower expected{TowerRelation::subsequence,
                       {{chars(ab, "a"), Side::left},
                        {chars(ab, "bab"), Side::right},
                        {chars(ab, "ababa"), Side::left}}};
  EXPECT_EQ(*r.witness, expected);
  const ChainStep& fix = r.chain.steps.back();
  EXPECT_TRUE(language_embeds(fix.left, fix.right));
  EXPECT_TRUE(language_embeds(fix.right, fix.left));
}

TEST(Decide, LongWitnessVerifies) {
  SeparationOptions options;
  options.witness_height = 12;
  const Automaton l = testing::a_ba_star();
  const Automaton r = testing::b_ab_star();
  const SeparationResult res = decide_separability(l, r, options);
  ASSERT_TRUE(res.witness.has_value());
  EXPECT_EQ(res.witness->height(), 12u);
  EXPECT_TRUE(verify_tower(l, r, *res.witness));
}

TEST(Decide, SameLanguageIsNotSeparable) {
  const Automaton a = word_automaton(ab, chars(ab, "a"));
  const SeparationResult r = decide_separability(a, a);
  EXPECT_EQ(r.chain.verdict, ChainVerdict::infinite_tower);
  ASSERT_TRUE(r.witness.has_value());
  EXPECT_EQ(r.witness->elements[0].word, chars(ab, "a"));
  EXPECT_EQ(r.witness->elements[1].word, chars(ab, "a"));
}

TEST(Decide, McvpSampleCircuitIsSeparable) {
  const Circuit c{{{GateKind::zero},
                   {GateKind::one},
                   {GateKind::conj, 1, 2},
                   {GateKind::disj, 3, 3}}};
  const AutomatonPair p = gen_mcvp(c);
  EXPECT_TRUE(decide_separability(p.left, p.right).separable());
}

TEST(Decide, BudgetExhaustionIsDistinct) {
  const FamilyInstance f = gen_quadratic(6);
  const RefinementChain chain = refinement_chain(f.left, f.right, 1);
  EXPECT_EQ(chain.verdict, ChainVerdict::budget_exhausted);
}

TEST(Separator, ExpTwo) {
  const FamilyInstance f = gen_exp(2);
  expect_sound(decide_separability(f.left, f.right), f.left, f.right);
}

TEST(Separator, EmptyRightGivesEmptySeparator) {
  const Automaton l = testing::a_ba_star();
  const SeparationResult r = decide_separability(l, empty_automaton(ab));
  EXPECT_EQ(r.chain.index, 1u);
  ASSERT_TRUE(r.separator.has_value());
  EXPECT_TRUE(is_empty(*r.separator));
}

TEST(Separator, RejectsNonSeparableChain) {
  const RefinementChain chain = refinement_chain(testing::a_ba_star(), testing::b_ab_star());
  try {
    build_separator(chain);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::precondition);
  }
}

// The separator built directly from its definition, one part at a time.
Automaton naive_separator(const RefinementChain& chain) {
  Automaton s = empty_automaton(chain.left0.alphabet());
  for (const ChainStep& step : chain.steps) {
    const Automaton keep = up_closure_dfa(difference(chain.right0, step.right));
    const Automaton drop = up_closure_dfa(difference(chain.left0, step.left));
    s = minimal_dfa(union_of(s, intersection(keep, complement(drop))));
  }
  return s;
}

TEST(Separator, MatchesDefinitionOnFamilies) {
  for (const FamilyInstance& f : {gen_quadratic(4), gen_quadratic(6), gen_exp(2), gen_expdfa(3), gen_2exp(2)}) {
    const RefinementChain chain = refinement_chain(f.left, f.right);
    ASSERT_EQ(chain.verdict, ChainVerdict::separable);
    EXPECT_TRUE(equivalent(build_separator(chain), naive_separator(chain)));
  }
}

TEST(Separator, MatchesDefinitionOnRandomPairs) {
  testing::Rng rng(7919);
  int checked = 0;
  for (int i = 0; i < 400 && checked < 40; ++i) {
    const Alphabet sigma = testing::letters_alphabet(2 + i % 2);
    const Automaton l = testing::random_nfa(rng, 1 + i % 4, sigma, 0.3);
    const Automaton r = testing::random_nfa(rng, 1 + (i / 4) % 4, sigma, 0.3);
    const RefinementChain chain = refinement_chain(l, r);
    if (chain.verdict != ChainVerdict::separable) {
      continue;
    }
    ++checked;
    EXPECT_TRUE(equivalent(build_separator(chain), naive_separator(chain))) << "pair " << i;
  }
  EXPECT_EQ(checked, 40);
}

TEST(VerifyTower, FamilyTowers) {
  const FamilyInstance q = gen_quadratic(6);
  EXPECT_TRUE(verify_tower(q.left, q.right, *q.tower));
  EXPECT_EQ(q.tower->height(), 31u);
  const FamilyInstance e = gen_exp(3);
  EXPECT_TRUE(verify_tower(e.left, e.right, *e.tower));
  EXPECT_EQ(e.tower->height(), 16u);
}

TEST(VerifyTower, SameSideTwiceFails) {
  const FamilyInstance e = gen_exp(1);
  Tower t = *e.tower;
  t.elements[1].side = Side::left;
  const TowerCheck check = check_tower(e.left, e.right, t);
  EXPECT_FALSE(check.ok);
  EXPECT_EQ(check.index, 1u);
}

TEST(VerifyTower, WrongRelationFails) {
  Tower t{TowerRelation::prefix,
          {{chars(ab, "a"), Side::left}, {chars(ab, "bab"), Side::right}}};
  EXPECT_FALSE(verify_tower(testing::a_ba_star(), testing::b_ab_star(), t));
  t.relation = TowerRelation::subsequence;
  EXPECT_TRUE(verify_tower(testing::a_ba_star(), testing::b_ab_star(), t));
}

TEST(UpperBound, Values) {
  EXPECT_EQ(upper_bound_height(6, 2), 43);
  EXPECT_GE(upper_bound_height(6, 2), 31);
  EXPECT_EQ(upper_bound_height(1, 5), 6);
  EXPECT_EQ(upper_bound_height(2, 1), 3);
  EXPECT_EQ(upper_bound_height_u64(10, 3), 1111u);
  EXPECT_EQ(upper_bound_height(10, 30), BigInt("1111111111111111111111111111111"));
  try {
    upper_bound_height_u64(10, 30);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::overflow);
  }
}

TEST(ExactHeight, Families) {
  EXPECT_EQ(exact_max_tower_height(gen_exp(1).left, gen_exp(1).right), 4u);
  EXPECT_EQ(exact_max_tower_height(gen_exp(2).left, gen_exp(2).right), 8u);
  EXPECT_EQ(exact_max_tower_height(gen_quadratic(4).left, gen_quadratic(4).right), 14u);
  // one above the generated tower
  EXPECT_EQ(exact_max_tower_height(gen_quadratic(6).left, gen_quadratic(6).right), 32u);
  EXPECT_EQ(exact_max_tower_height(testing::a_ba_star(), testing::b_ab_star()), std::nullopt);
}

class RandomEngine : public ::testing::TestWithParam<int> {};

// Engine against the brute-force oracle on random NFAs (≤ 4 states, ≤ 2 letters).
TEST_P(RandomEngine, AgreesWithOracle) {
  testing::Rng rng(static_cast<std::uint64_t>(GetParam()) * 104729);
  const Alphabet sigma = testing::letters_alphabet(1 + GetParam() % 2);
  const Automaton l = testing::random_nfa(rng, 1 + GetParam() % 4, sigma, 0.25);
  const Automaton r = testing::random_nfa(rng, 1 + (GetParam() / 4) % 4, sigma, 0.25);
  const SeparationResult res = decide_separability(l, r);
  const BruteHeight brute = brute_max_tower_height(l, r, TowerRelation::subsequence, 10);
  const auto exact = exact_max_tower_height(l, r);
  if (res.separable()) {
    expect_sound(res, l, r);
    ASSERT_TRUE(exact.has_value());
    const std::size_t n = std::max(l.state_count(), r.state_count());
    EXPECT_LE(BigInt(*exact), upper_bound_height(n, sigma.size()));
    if (brute.kind == BruteHeight::Kind::finite) {
      EXPECT_EQ(brute.height, *exact);
    } else {
      EXPECT_LE(brute.height, *exact);
    }
  } else {
    EXPECT_EQ(res.chain.verdict, ChainVerdict::infinite_tower);
    EXPECT_FALSE(exact.has_value());
    EXPECT_EQ(brute.kind, BruteHeight::Kind::at_least);
    ASSERT_TRUE(res.witness.has_value());
    EXPECT_TRUE(verify_tower(l, r, *res.witness));
    const ChainStep& fix = res.chain.steps.back();
    EXPECT_TRUE(language_embeds(fix.left, fix.right));
    EXPECT_TRUE(language_embeds(fix.right, fix.left));
  }
  expect_monotone(res.chain);
}

INSTANTIATE_TEST_SUITE_P(Seeds, RandomEngine, ::testing::Range(1, 81));

} // namespace
} // namespace ptsep
