#pragma once

#include "ptsep/automaton.hpp"
#include "ptsep/budget.hpp"

namespace ptsep {

/// v ≼ w: the letters of v occur in w in order (greedy left-to-right match).
bool is_subsequence(const Word& v, const Word& w);
/// v is a prefix of w.
bool is_prefix(const Word& v, const Word& w);

/// Automaton for all subsequences of words in L(a). Every transition also
/// becomes a silent move; silent moves are then eliminated, so the result
/// has the same states as `a` and no silent moves. Not trimmed.
Automaton down_closure(const Automaton& a);

/// Automaton for all supersequences of words in L(a): self-loops under every
/// letter are added to every state. Not trimmed.
Automaton up_closure(const Automaton& a);

/// Minimal DFA of down(L(a)). Subsets are kept as antichains under
/// reachability in `a`, which is usually far smaller than determinizing
/// down_closure(a) directly.
Automaton down_closure_dfa(const Automaton& a, const Budget& budget = default_budget());

/// Minimal DFA of up(L(a)), with subsets pruned by an upward simulation:
/// q is dropped next to p when every word accepted from q has a
/// subsequence accepted from p.
Automaton up_closure_dfa(const Automaton& a, const Budget& budget = default_budget());

/// w ≼ L(a), i.e. w is a subsequence of some accepted word.
bool word_embeds_into_language(const Word& w, const Automaton& a);

/// Every word of L(a) embeds into L(b).
bool language_embeds(const Automaton& a, const Automaton& b,
                     const Budget& budget = default_budget());

} // namespace ptsep
