#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "ptsep/automaton.hpp"
#include "ptsep/budget.hpp"
#include "ptsep/constructions.hpp"
#include "ptsep/tower.hpp"

namespace ptsep {

/// Naive reference implementations. They are deliberately simple and are
/// used to cross-check the real algorithms on small inputs.

/// Accepted words of length ≤ max_len in shortlex order. Throws
/// Error(budget_exceeded) when Σ_{i≤max_len} |Σ|^i exceeds budget.max_words.
std::vector<Word> enumerate_language(const Automaton& a, std::size_t max_len,
                                     const Budget& budget = default_budget());

struct BruteHeight {
  enum class Kind { finite, at_least };
  Kind kind = Kind::finite;
  std::size_t height = 0;

  bool operator==(const BruteHeight&) const = default;
};

std::string_view to_string(BruteHeight::Kind kind) noexcept;

/// Longest tower among words of length ≤ max_len, found by a longest-path
/// pass over all enumerated words. The result is `at_least` when the search
/// horizon may hide taller towers: some tower found can be extended by a
/// longer word of the opposite language (its height counts that extra
/// element), or the languages share a word (then w, w, w, ... is cut at
/// max_len + 1 elements). Otherwise it is `finite`.
BruteHeight brute_max_tower_height(const Automaton& left, const Automaton& right,
                                   TowerRelation relation, std::size_t max_len,
                                   const Budget& budget = default_budget());

/// Breadth-first search from s.
bool reachability(const Digraph& graph, std::size_t s, std::size_t t);

} // namespace ptsep
