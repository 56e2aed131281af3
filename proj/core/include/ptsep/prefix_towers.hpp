#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "ptsep/automaton.hpp"
#include "ptsep/budget.hpp"
#include "ptsep/operations.hpp"
#include "ptsep/separation.hpp"
#include "ptsep/tower.hpp"

namespace ptsep {

/// A pattern (S, σ, σ₁, σ₂, τ, τ₁, τ₂) of A×B with witness words:
///   initial --u--> σ,  σ --x--> σ₁ and σ₂,  σ₂ --u1--> τ,
///   τ --y--> τ₁ and τ₂,  τ₂ --u2--> σ,
/// where σ₁ ∈ F_A×Q_B, τ₁ ∈ Q_A×F_B and σ, σ₂, τ, τ₂ lie in the nontrivial
/// strongly connected component S.
struct Pattern {
  std::vector<ProductState> scc;
  ProductState sigma, sigma1, sigma2, tau, tau1, tau2;
  Word u, x, y, u1, u2;
};

/// Searches for a pattern; the first one in canonical order (component with
/// the smallest product state, then smallest σ and τ) is returned with
/// shortest, lexicographically least witness words. Throws
/// Error(precondition) if the languages intersect.
std::optional<Pattern> find_pattern(const Automaton& a, const Automaton& b);

/// First `count` elements of the prefix tower u (x u1 y u2)^k (x + x u1 y),
/// starting on the left side.
Tower materialize_prefix_tower(const Pattern& pattern, std::size_t count);

struct PrefixHeight {
  bool infinite = false;
  /// Maximal height of a prefix tower when finite.
  std::size_t height = 0;
  /// States of the reachable product of the two determinized automata.
  std::size_t product_states = 0;
};

/// Maximal height of a tower of prefixes between L(a) and L(b). Throws
/// Error(precondition) if the languages intersect.
PrefixHeight max_prefix_tower_height(const Automaton& a, const Automaton& b,
                                     const Budget& budget = default_budget());

/// ⌊mn/2⌋, the height bound for DFAs with m and n states.
std::uint64_t prefix_height_dfa_bound(std::uint64_t m, std::uint64_t n);
/// 2^{m+n−1}, the height bound for NFAs with m and n states.
BigInt prefix_height_nfa_bound(std::uint64_t m, std::uint64_t n);

} // namespace ptsep
