#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

#include "ptsep/automaton.hpp"
#include "ptsep/constructions.hpp"

namespace ptsep::testing {

using Rng = std::mt19937_64;

/// Alphabet {a, b, c, ...} with `letters` symbols.
Alphabet letters_alphabet(std::size_t letters);

/// Random NFA: each (state, symbol, state) triple is present with
/// probability `density`; each state is initial/final with probability 1/2
/// (at least one initial state).
Automaton random_nfa(Rng& rng, std::size_t states, const Alphabet& alphabet,
                     double density = 0.3);

/// Random DFA, possibly partial: each (state, symbol) gets a target with
/// probability `fill`.
Automaton random_dfa(Rng& rng, std::size_t states, const Alphabet& alphabet, double fill = 0.8);

/// Random monotone circuit with `gates` gates.
Circuit random_circuit(Rng& rng, std::size_t gates);

/// Random digraph where each ordered pair is an edge with probability p.
Digraph random_digraph(Rng& rng, std::size_t vertices, double p);

} // namespace ptsep::testing
