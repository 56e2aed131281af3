#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "ptsep/automaton.hpp"
#include "ptsep/budget.hpp"
#include "ptsep/tower.hpp"

namespace ptsep {

/// One refinement step (L_k, R_k). Both are trimmed minimal DFAs, so equal
/// languages give equal automata.
struct ChainStep {
  Automaton left;
  Automaton right;
};

enum class ChainVerdict {
  separable,        // L_B = R_B = ∅ at index B
  infinite_tower,   // (L_B, R_B) = (L_{B-1}, R_{B-1}) ≠ (∅, ∅)
  budget_exhausted, // max_steps reached without either outcome
};

std::string_view to_string(ChainVerdict verdict) noexcept;

/// L_k = L₀ ∩ down(R_{k−1}), R_k = R₀ ∩ down(L_k), with steps[k-1] = (L_k, R_k).
struct RefinementChain {
  Automaton left0;
  Automaton right0;
  std::vector<ChainStep> steps;
  ChainVerdict verdict = ChainVerdict::budget_exhausted;
  /// B for separable and infinite_tower verdicts; steps.size() otherwise.
  std::size_t index = 0;
};

struct SeparationOptions {
  std::size_t max_steps = 4096;
  /// Elements of the witness tower produced for non-separable pairs.
  std::size_t witness_height = 3;
  bool build_separator = true;
  Budget budget = default_budget();
};

struct SeparationResult {
  RefinementChain chain;
  /// Minimal DFA of a piecewise testable language containing L(right) and
  /// disjoint from L(left); present when separable and requested.
  std::optional<Automaton> separator;
  /// Finite prefix of an infinite tower, starting on the left side.
  std::optional<Tower> witness;

  bool separable() const noexcept { return chain.verdict == ChainVerdict::separable; }
};

/// (L_k, R_k) from (L_{k−1}, R_{k−1}); results are trimmed minimal DFAs.
std::pair<Automaton, Automaton> refine_step(const Automaton& left_prev, const Automaton& right_prev,
                                            const Automaton& left0, const Automaton& right0,
                                            const Budget& budget = default_budget());

RefinementChain refinement_chain(const Automaton& left, const Automaton& right,
                                 std::size_t max_steps = 4096,
                                 const Budget& budget = default_budget());

SeparationResult decide_separability(const Automaton& left, const Automaton& right,
                                     const SeparationOptions& options = {});

/// S = ⋃_{k=1}^{B} up(R₀∖R_k) ∖ up(L₀∖L_k) as a minimal DFA. Throws
/// Error(precondition) unless the chain verdict is separable.
Automaton build_separator(const RefinementChain& chain, const Budget& budget = default_budget());

/// Tower of `height` elements inside a non-separable fixpoint: a shortest
/// word of L_B, then repeatedly a shortest word on the other side that
/// contains the previous one as a subsequence.
Tower witness_tower(const RefinementChain& chain, std::size_t height);

/// Exact maximal height of a subsequence tower, or nullopt when towers are
/// unbounded. Either side may start the tower.
std::optional<std::size_t> exact_max_tower_height(const Automaton& left, const Automaton& right,
                                                  std::size_t max_steps = 4096,
                                                  const Budget& budget = default_budget());

using BigInt = boost::multiprecision::cpp_int;

/// Σ_{i=0}^{m} n^i, the tower-height bound for n states and m letters.
/// Throws Error(precondition) when n = 0.
BigInt upper_bound_height(std::uint64_t n, std::uint64_t m);
/// Same value; throws Error(overflow) when it does not fit 64 bits.
std::uint64_t upper_bound_height_u64(std::uint64_t n, std::uint64_t m);

} // namespace ptsep
