#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "ptsep/automaton.hpp"
#include "ptsep/tower.hpp"

namespace ptsep {

/// An automaton pair from one of the lower-bound families together with its
/// explicit tower (left side first in the pair).
struct FamilyInstance {
  std::string family;
  std::size_t param = 0;
  Automaton left;
  Automaton right;
  std::optional<Tower> tower;
  std::size_t expected_height = 0;
};

/// Binary NFA/DFA pair with n states each and a tower of height n²−n+1
/// made of all prefixes of (b^{n−1}a)^{n−2}b^n. n must be even and ≥ 4.
FamilyInstance gen_quadratic(std::size_t n);

/// A_m (NFA, m+1 states) and B_m (Σ*b) over {b, a1..am}; the prefixes of
/// u_m b form a tower of height 2^{m+1}.
FamilyInstance gen_exp(std::size_t m);

/// A'_m and B'_m over {b, a1..am, c1..c_{m−1}} with a tower of height
/// 2^m(2^m−1)+2. m ≥ 1.
FamilyInstance gen_2exp(std::size_t m);

/// DFAs A_n (n+1 states) and B_n (ends with b) over {b} ∪ {a_{i,j}}, with
/// the recursive tower w_n(0..2^n−1). n ≥ 1.
FamilyInstance gen_expdfa(std::size_t n);

/// Letter name of a_{i,j} in gen_expdfa alphabets, e.g. "a3_2".
std::string expdfa_letter(std::size_t i, std::size_t j);

/// Gate kinds of a monotone circuit.
enum class GateKind { zero, one, conj, disj };

/// Gates are 1-based; `left` and `right` reference earlier gates and are
/// ignored for constants.
struct Gate {
  GateKind kind = GateKind::zero;
  std::size_t left = 0;
  std::size_t right = 0;
};

struct Circuit {
  std::vector<Gate> gates;
};

/// Throws Error(schema) unless every operand references an earlier gate
/// and the circuit is nonempty.
void validate_circuit(const Circuit& circuit);
/// Value of the last gate.
bool eval_circuit(const Circuit& circuit);

struct AutomatonPair {
  Automaton left;
  Automaton right;
};

/// Minimal DFAs A, B with an infinite tower iff the circuit evaluates to 1.
/// With `pad` unset, the bare A' (possibly not minimal) is returned.
AutomatonPair gen_mcvp(const Circuit& circuit, bool pad = true);

/// Directed graph on vertices 0..vertices−1.
struct Digraph {
  std::size_t vertices = 0;
  std::vector<std::vector<std::size_t>> adjacency;
};

/// Throws Error(schema) on out-of-range vertices.
void validate_digraph(const Digraph& graph);

/// Pair with an infinite prefix tower iff t is reachable from s. Edges are
/// labelled e0, e1, ... in adjacency order. The deterministic variant adds
/// an accepting state f reached under fresh letters, making A a DFA.
AutomatonPair gen_reachability(const Digraph& graph, std::size_t s, std::size_t t,
                               bool deterministic = false);

/// Piecewise testable iff L(nfa) = Σ*: completes the automaton with a state
/// d and adds an x-transition from every state to the initial one. For the
/// empty language the minimal DFA of (aa)* over {a} is returned.
Automaton gen_universality(const Automaton& nfa);

/// Same language with a single initial state: a fresh initial state copying
/// the outgoing transitions of all initial states is added when needed.
Automaton with_single_initial(const Automaton& a);

enum class DeterminizationVariant {
  per_state,  // fresh letter per target state, states σ_{s,t}
  per_letter, // fresh letter per (letter, target state), states σ_{a,t}
};

/// DFAs A', B' with the same tower heights as A, B. Each transition s→t
/// under a is split into s→σ under a fresh letter and σ→t under a; new
/// states carry self-loops under all fresh letters.
struct DeterminizedPair {
  DeterminizationVariant variant = DeterminizationVariant::per_state;
  /// Inputs with a single initial state each; towers are traced in these.
  Automaton left_source;
  Automaton right_source;
  Automaton left;
  Automaton right;
};

DeterminizedPair tower_preserving_determinization(const Automaton& left, const Automaton& right,
                                                  DeterminizationVariant variant);

/// Tower between pair.left and pair.right of the same height as `tower`,
/// which must be a tower between the source automata. Accepting paths are
/// chosen by accepting_path; embeddings are greedy. Throws
/// Error(precondition) when the tower is invalid for the sources.
Tower transform_tower(const Tower& tower, const DeterminizedPair& pair);

/// Same, with caller-supplied accepting paths (state sequences, one per
/// element, in the source automaton of the element's side).
Tower transform_tower(const Tower& tower, const DeterminizedPair& pair,
                      const std::vector<std::vector<StateId>>& paths);

} // namespace ptsep
