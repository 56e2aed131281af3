#pragma once

#include <optional>
#include <vector>

#include "ptsep/automaton.hpp"
#include "ptsep/budget.hpp"

namespace ptsep {

/// Letters with a self-loop at q. Throws Error(precondition) on a bad id.
std::vector<Symbol> self_loop_alphabet(const Automaton& dfa, StateId q);

/// Which characterization condition refutes piecewise testability.
struct PtViolation {
  /// 1: a cycle through at least two states. 2: distinct p, q, q' such that
  /// q and q' are both reachable from p using only letters in Σ(q) ∩ Σ(q').
  int condition = 0;
  /// Condition 1: the states of the cycle in order. Condition 2: {p, q, q'}.
  std::vector<StateId> states;
};

struct PtVerdict {
  bool piecewise_testable = true;
  std::optional<PtViolation> violation;
};

/// Checks a minimal complete DFA. Throws Error(not_deterministic) or
/// Error(not_minimal) when the input is not one.
PtVerdict check_pt_minimal_dfa(const Automaton& dfa);
bool is_pt_minimal_dfa(const Automaton& dfa);

/// Determinizes and minimizes first; the verdict refers to that minimal DFA.
PtVerdict check_piecewise_testable(const Automaton& a, const Budget& budget = default_budget());
bool is_piecewise_testable(const Automaton& a, const Budget& budget = default_budget());

} // namespace ptsep
