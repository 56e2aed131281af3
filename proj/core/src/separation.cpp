#include "ptsep/separation.hpp"

#include <array>
#include <cstdint>
#include <limits>
#include <optional>
#include <unordered_map>

#include "antichain.hpp"
#include "ptsep/closures.hpp"
#include "ptsep/error.hpp"
#include "ptsep/operations.hpp"

namespace ptsep {

namespace {

// Trimmed minimal DFA: canonical, so language equality is automaton equality.
Automaton canonical(const Automaton& a, const Budget& budget) {
  return trim(minimal_dfa(a, budget));
}

bool is_void(const Automaton& a) { return a.state_count() == 0; }

} // namespace

std::string_view to_string(ChainVerdict verdict) noexcept {
  switch (verdict) {
  case ChainVerdict::separable:
    return "separable";
  case ChainVerdict::infinite_tower:
    return "infinite_tower";
  case ChainVerdict::budget_exhausted:
    return "budget_exhausted";
  }
  return "?";
}

std::pair<Automaton, Automaton> refine_step(const Automaton& left_prev, const Automaton& right_prev,
                                            const Automaton& left0, const Automaton& right0,
                                            const Budget& budget) {
  require_same_alphabet(left_prev, right_prev);
  require_same_alphabet(left0, right0);
  require_same_alphabet(left0, left_prev);
  Automaton left = canonical(intersection(left0, down_closure_dfa(right_prev, budget)), budget);
  Automaton right = canonical(intersection(right0, down_closure_dfa(left, budget)), budget);
  return {std::move(left), std::move(right)};
}

RefinementChain refinement_chain(const Automaton& left, const Automaton& right,
                                 std::size_t max_steps, const Budget& budget) {
  require_same_alphabet(left, right);
  RefinementChain chain{canonical(left, budget), canonical(right, budget), {}, {}, 0};
  const Automaton* prev_left = &chain.left0;
  const Automaton* prev_right = &chain.right0;
  chain.steps.reserve(16);
  for (std::size_t k = 1; k <= max_steps; ++k) {
    auto [l, r] = refine_step(*prev_left, *prev_right, chain.left0, chain.right0, budget);
    const bool empty = is_void(l) && is_void(r);
    const bool stable = l == *prev_left && r == *prev_right;
    chain.steps.push_back({std::move(l), std::move(r)});
    prev_left = &chain.steps.back().left;
    prev_right = &chain.steps.back().right;
    if (empty) {
      chain.verdict = ChainVerdict::separable;
      chain.index = k;
      return chain;
    }
    if (stable) {
      chain.verdict = ChainVerdict::infinite_tower;
      chain.index = k;
      return chain;
    }
  }
  chain.verdict = ChainVerdict::budget_exhausted;
  chain.index = chain.steps.size();
  return chain;
}

namespace {

// DFA for U ∖ V, given a DFA for U and an upward-closed V, explored lazily.
// A state pairs a U state p with an antichain of V states. Once a word is in
// V every extension is too, so those states merge into one sink, together
// with states whose U residual is empty. This avoids building the full DFA
// of V, which can be far larger than U ∖ V.
Automaton upward_difference(const Automaton& u, const detail::UpwardSubsets& v, const Budget& budget) {
  const Alphabet& sigma = u.alphabet();
  const std::size_t nu = u.state_count();
  const std::size_t k = sigma.size();

  std::vector<char> productive(nu, 0);
  {
    std::vector<std::vector<StateId>> back(nu);
    for (StateId p = 0; p < nu; ++p) {
      for (Symbol s = 0; s < k; ++s) {
        for (StateId p2 : u.successors(p, s)) {
          back[p2].push_back(p);
        }
      }
    }
    std::vector<StateId> stack(u.finals().begin(), u.finals().end());
    for (StateId p : stack) {
      productive[p] = 1;
    }
    while (!stack.empty()) {
      const StateId p = stack.back();
      stack.pop_back();
      for (StateId r : back[p]) {
        if (productive[r] == 0) {
          productive[r] = 1;
          stack.push_back(r);
        }
      }
    }
  }

  constexpr StateId sink = std::numeric_limits<StateId>::max();
  std::unordered_map<std::vector<StateId>, StateId, detail::SubsetHash> index;
  std::vector<std::vector<StateId>> states; // [p, q1, q2, ...]
  std::vector<StateId> finals;
  std::vector<Transition> transitions;
  states.push_back({sink});
  index.try_emplace(states.front(), 0);
  auto intern = [&](StateId p, std::vector<StateId>& set) -> StateId {
    if (productive[p] == 0 || v.accepting(set)) {
      return 0;
    }
    std::vector<StateId> key;
    key.reserve(set.size() + 1);
    key.push_back(p);
    key.insert(key.end(), set.begin(), set.end());
    auto [it, inserted] = index.try_emplace(std::move(key), static_cast<StateId>(states.size()));
    if (inserted) {
      if (states.size() >= budget.max_subsets) {
        throw Error(ErrorKind::budget_exceeded, "separator construction exceeded " +
                                                    std::to_string(budget.max_subsets) + " states");
      }
      if (u.is_final(p)) {
        finals.push_back(it->second);
      }
      states.push_back(it->first);
    }
    return it->second;
  };
  if (u.initials().empty()) {
    return minimize(empty_automaton(sigma));
  }
  std::vector<StateId> set = v.initial();
  const StateId start = intern(u.initials().front(), set);
  for (Symbol s = 0; s < k; ++s) {
    transitions.push_back({0, s, 0});
  }
  std::vector<StateId> current_set;
  std::vector<StateId> next;
  for (std::size_t current = 1; current < states.size(); ++current) {
    const StateId p = states[current][0];
    current_set.assign(states[current].begin() + 1, states[current].end());
    for (Symbol s = 0; s < k; ++s) {
      const auto succ = u.successors(p, s);
      StateId to = 0;
      if (!succ.empty()) {
        v.step(current_set, s, next);
        to = intern(succ.front(), next);
      }
      transitions.push_back({static_cast<StateId>(current), s, to});
    }
  }
  return minimize(Automaton(sigma, states.size(), {start}, std::move(finals), std::move(transitions), true));
}

// Union of two complete DFAs by the pair construction.
Automaton dfa_union(const Automaton& a, const Automaton& b, const Budget& budget) {
  const std::size_t k = a.alphabet_size();
  std::unordered_map<std::uint64_t, StateId> index;
  std::vector<std::pair<StateId, StateId>> pairs;
  std::vector<Transition> transitions;
  std::vector<StateId> finals;
  auto intern = [&](StateId p, StateId q) {
    const std::uint64_t key = (std::uint64_t{p} << 32) | q;
    auto [it, inserted] = index.try_emplace(key, static_cast<StateId>(pairs.size()));
    if (inserted) {
      if (pairs.size() >= budget.max_subsets) {
        throw Error(ErrorKind::budget_exceeded, "separator construction exceeded " +
                                                    std::to_string(budget.max_subsets) + " states");
      }
      if (a.is_final(p) || b.is_final(q)) {
        finals.push_back(it->second);
      }
      pairs.emplace_back(p, q);
    }
    return it->second;
  };
  intern(a.initials().front(), b.initials().front());
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto [p, q] = pairs[i];
    for (Symbol s = 0; s < k; ++s) {
      const StateId to = intern(a.successors(p, s).front(), b.successors(q, s).front());
      transitions.push_back({static_cast<StateId>(i), s, to});
    }
  }
  return minimize(Automaton(a.alphabet(), pairs.size(), {0}, std::move(finals), std::move(transitions), true));
}

} // namespace

// S = ⋃_k U_k ∖ V_k with U_k = up(R₀∖R_k) and V_k = up(L₀∖L_k). Each part is
// built as a minimal DFA, then parts are merged pairwise in a balanced tree.
Automaton build_separator(const RefinementChain& chain, const Budget& budget) {
  if (chain.verdict != ChainVerdict::separable) {
    throw Error(ErrorKind::precondition, "separator requested for a chain that is not separable");
  }
  const Alphabet& sigma = chain.left0.alphabet();
  std::vector<Automaton> parts;
  for (const ChainStep& step : chain.steps) {
    const Automaton keep = up_closure_dfa(difference(chain.right0, step.right, budget), budget);
    const detail::UpwardSubsets drop(difference(chain.left0, step.left, budget));
    parts.push_back(upward_difference(keep, drop, budget));
  }
  // Pairwise merging keeps the large intermediate unions few.
  while (parts.size() > 1) {
    std::vector<Automaton> merged;
    for (std::size_t i = 0; i + 1 < parts.size(); i += 2) {
      merged.push_back(dfa_union(parts[i], parts[i + 1], budget));
    }
    if (parts.size() % 2 == 1) {
      merged.push_back(std::move(parts.back()));
    }
    parts.swap(merged);
  }
  return parts.empty() ? minimize(empty_automaton(sigma)) : std::move(parts.front());
}

Tower witness_tower(const RefinementChain& chain, std::size_t height) {
  if (chain.verdict != ChainVerdict::infinite_tower || chain.steps.empty()) {
    throw Error(ErrorKind::precondition, "witness requested for a chain without a fixpoint");
  }
  const ChainStep& fix = chain.steps.back();
  const Alphabet& sigma = fix.left.alphabet();
  Tower tower{TowerRelation::subsequence, {}};
  if (height == 0) {
    return tower;
  }
  auto first = shortest_word(fix.left);
  if (!first) {
    throw Error(ErrorKind::precondition, "fixpoint language is empty");
  }
  tower.elements.push_back({*first, Side::left});
  while (tower.elements.size() < height) {
    const TowerElement& last = tower.elements.back();
    const Side side = opposite(last.side);
    const Automaton& lang = side == Side::left ? fix.left : fix.right;
    auto next = shortest_word(intersection(lang, up_closure(word_automaton(sigma, last.word))));
    if (!next) {
      throw Error(ErrorKind::precondition, "fixpoint languages are not mutually embeddable");
    }
    tower.elements.push_back({std::move(*next), side});
  }
  return tower;
}

SeparationResult decide_separability(const Automaton& left, const Automaton& right,
                                     const SeparationOptions& options) {
  SeparationResult result{refinement_chain(left, right, options.max_steps, options.budget), {}, {}};
  if (result.chain.verdict == ChainVerdict::separable && options.build_separator) {
    result.separator = build_separator(result.chain, options.budget);
  } else if (result.chain.verdict == ChainVerdict::infinite_tower) {
    result.witness = witness_tower(result.chain, options.witness_height);
  }
  return result;
}

std::optional<std::size_t> exact_max_tower_height(const Automaton& left, const Automaton& right,
                                                  std::size_t max_steps, const Budget& budget) {
  require_same_alphabet(left, right);
  const Automaton sides[2] = {canonical(left, budget), canonical(right, budget)};
  std::size_t best = 0;
  for (int start = 0; start < 2; ++start) {
    // z[j]: words of side (start + j) that are the bottom of a tower of
    // height j + 1 whose top lies on the start side.
    std::vector<Automaton> z{sides[start]};
    while (!is_void(z.back())) {
      if (z.size() > max_steps) {
        throw Error(ErrorKind::budget_exceeded,
                    "tower height search exceeded " + std::to_string(max_steps) + " steps");
      }
      const Automaton& side = sides[(start + z.size()) % 2];
      z.push_back(canonical(intersection(side, down_closure_dfa(z.back(), budget)), budget));
      const std::size_t j = z.size() - 1;
      if (j >= 2 && z[j] == z[j - 2] && !is_void(z[j])) {
        return std::nullopt;
      }
    }
    best = std::max(best, z.size() - 1);
  }
  return best;
}

BigInt upper_bound_height(std::uint64_t n, std::uint64_t m) {
  if (n == 0) {
    throw Error(ErrorKind::precondition, "upper_bound_height needs n >= 1");
  }
  BigInt sum = 0;
  BigInt power = 1;
  for (std::uint64_t i = 0; i <= m; ++i) {
    sum += power;
    power *= n;
  }
  return sum;
}

std::uint64_t upper_bound_height_u64(std::uint64_t n, std::uint64_t m) {
  const BigInt value = upper_bound_height(n, m);
  if (value > BigInt(std::numeric_limits<std::uint64_t>::max())) {
    throw Error(ErrorKind::overflow, "height bound for n=" + std::to_string(n) +
                                         ", m=" + std::to_string(m) + " exceeds 64 bits");
  }
  return value.convert_to<std::uint64_t>();
}

} // namespace ptsep
