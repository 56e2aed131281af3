#pragma once

#include <utility>
#include <vector>

#include "ptsep/automaton.hpp"
#include "ptsep/budget.hpp"

namespace ptsep {

/// Which product states are accepting.
enum class FinalPolicy {
  both,       // F_A × F_B (intersection)
  left_only,  // F_A × (Q_B ∖ F_B)
  right_only, // (Q_A ∖ F_A) × F_B
  none,
};

struct ProductState {
  StateId left;
  StateId right;

  auto operator<=>(const ProductState&) const = default;
};

/// Full synchronized product; state p·|Q_B| + q carries label (p, q).
struct ProductAutomaton {
  Automaton automaton;
  std::vector<ProductState> labels;

  StateId id(ProductState s) const;
};

ProductAutomaton product(const Automaton& a, const Automaton& b, FinalPolicy policy);

/// Complete DFA by the subset construction. Only reachable subsets are
/// materialized; the empty subset is the sink and appears when reachable.
struct DeterminizedAutomaton {
  Automaton automaton;
  std::vector<std::vector<StateId>> subsets;
};

DeterminizedAutomaton determinize_with_subsets(const Automaton& a,
                                               const Budget& budget = default_budget());
Automaton determinize(const Automaton& a, const Budget& budget = default_budget());

/// Minimal complete DFA in canonical numbering (breadth-first from the
/// initial state, symbols in index order). Partial DFAs are completed first;
/// nondeterministic input is rejected. Two automata have the same language
/// iff their minimizations compare equal.
Automaton minimize(const Automaton& dfa);

/// minimize(determinize(a)).
Automaton minimal_dfa(const Automaton& a, const Budget& budget = default_budget());

/// Adds an explicit sink when some transition is missing.
Automaton complete(const Automaton& dfa);

Automaton complement(const Automaton& dfa);
/// Reachable part of the `both` product.
Automaton intersection(const Automaton& a, const Automaton& b);
Automaton union_of(const Automaton& a, const Automaton& b);
Automaton difference(const Automaton& a, const Automaton& b,
                     const Budget& budget = default_budget());

bool is_empty(const Automaton& a);
/// L(a) ⊇ L(b).
bool includes(const Automaton& a, const Automaton& b, const Budget& budget = default_budget());
bool equivalent(const Automaton& a, const Automaton& b, const Budget& budget = default_budget());

/// Keeps only states on some accepting path, renumbered in increasing order.
Automaton trim(const Automaton& a);

/// Throws Error(alphabet_mismatch) unless both alphabets are the same list.
void require_same_alphabet(const Automaton& a, const Automaton& b);

/// Re-indexes `a` onto `alphabet`, which must contain every letter of a.
Automaton with_alphabet(const Automaton& a, const Alphabet& alphabet);

/// Re-indexes both automata onto the merged alphabet: a's letters in order,
/// followed by b's letters that a lacks.
std::pair<Automaton, Automaton> align_alphabets(const Automaton& a, const Automaton& b);

} // namespace ptsep
