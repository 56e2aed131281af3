#include "ptsep/pt_check.hpp"

#include <algorithm>
#include <unordered_set>

#include "ptsep/digraph.hpp"
#include "ptsep/error.hpp"
#include "ptsep/operations.hpp"

namespace ptsep {

namespace {

// States of a cycle inside a component of size >= 2, listed along the cycle.
std::vector<StateId> cycle_in(const AdjacencyList& graph, const Components& comps,
                              std::uint32_t comp, StateId start) {
  std::vector<StateId> path{start};
  std::vector<int> position(graph.size(), -1);
  position[start] = 0;
  StateId v = start;
  while (true) {
    StateId next = v;
    for (std::uint32_t w : graph[v]) {
      if (comps.component[w] == comp) {
        next = w;
        break;
      }
    }
    if (position[next] >= 0) {
      return {path.begin() + position[next], path.end()};
    }
    position[next] = static_cast<int>(path.size());
    path.push_back(next);
    v = next;
  }
}

// Local confluence: for every q and letters a, b some w ∈ {a,b}* has
// q·a·w = q·b·w. On an acyclic minimal DFA this is equivalent to the
// absence of condition 2 and costs far less, so it serves as a fast
// certificate; a failure is confirmed by the pairwise search below.
bool locally_confluent(const Automaton& dfa) {
  const std::size_t n = dfa.state_count();
  const std::size_t k = dfa.alphabet_size();
  auto next = [&](StateId q, Symbol s) { return dfa.successors(q, s).front(); };
  // Without cycles, repeating ab ends in a state fixed by both letters.
  auto settle = [&](StateId q, Symbol a, Symbol b) {
    while (next(q, a) != q || next(q, b) != q) {
      q = next(next(q, a), b);
    }
    return q;
  };
  std::unordered_set<std::uint64_t> seen;
  std::vector<std::pair<StateId, StateId>> queue;
  for (StateId q = 0; q < n; ++q) {
    for (Symbol a = 0; a < k; ++a) {
      for (Symbol b = a + 1; b < k; ++b) {
        const StateId r1 = next(q, a);
        const StateId r2 = next(q, b);
        if (r1 == r2 || settle(r1, a, b) == settle(r2, a, b)) {
          continue;
        }
        // Full search over {a,b}-pairs for a meeting point.
        seen.clear();
        queue.assign(1, {r1, r2});
        bool met = false;
        for (std::size_t i = 0; i < queue.size() && !met; ++i) {
          for (Symbol s : {a, b}) {
            const StateId x = next(queue[i].first, s);
            const StateId y = next(queue[i].second, s);
            if (x == y) {
              met = true;
              break;
            }
            const std::uint64_t key = std::uint64_t{x} * n + y;
            if (seen.insert(key).second) {
              queue.push_back({x, y});
            }
          }
        }
        if (!met) {
          return false;
        }
      }
    }
  }
  return true;
}

} // namespace

std::vector<Symbol> self_loop_alphabet(const Automaton& dfa, StateId q) {
  if (q >= dfa.state_count()) {
    throw Error(ErrorKind::precondition, "state " + std::to_string(q) + " out of range");
  }
  std::vector<Symbol> loops;
  for (Symbol s = 0; s < dfa.alphabet_size(); ++s) {
    const auto succ = dfa.successors(q, s);
    if (std::find(succ.begin(), succ.end(), q) != succ.end()) {
      loops.push_back(s);
    }
  }
  return loops;
}

PtVerdict check_pt_minimal_dfa(const Automaton& dfa) {
  if (!dfa.is_structurally_deterministic()) {
    throw Error(ErrorKind::not_deterministic, "piecewise testability check needs a DFA");
  }
  if (!dfa.is_complete() || minimize(dfa).state_count() != dfa.state_count()) {
    throw Error(ErrorKind::not_minimal, "piecewise testability check needs a minimal complete DFA");
  }
  const std::size_t n = dfa.state_count();
  const std::size_t k = dfa.alphabet_size();

  // Condition 1: a cycle that survives deleting self-loops.
  AdjacencyList graph(n);
  for (StateId q = 0; q < n; ++q) {
    for (Symbol s = 0; s < k; ++s) {
      const StateId t = dfa.successors(q, s).front();
      if (t != q) {
        graph[q].push_back(t);
      }
    }
  }
  const Components comps = strongly_connected_components(graph);
  std::vector<std::size_t> size(comps.count, 0);
  for (StateId q = 0; q < n; ++q) {
    ++size[comps.component[q]];
  }
  for (StateId q = 0; q < n; ++q) {
    if (size[comps.component[q]] >= 2) {
      return {false, PtViolation{1, cycle_in(graph, comps, comps.component[q], q)}};
    }
  }

  if (locally_confluent(dfa)) {
    return {true, std::nullopt};
  }

  // Condition 2: for each pair q < q', restrict to Σ(q) ∩ Σ(q') and look for
  // a third state p reaching both.
  std::vector<std::vector<char>> loops(n, std::vector<char>(k, 0));
  for (StateId q = 0; q < n; ++q) {
    for (Symbol s : self_loop_alphabet(dfa, q)) {
      loops[q][s] = 1;
    }
  }
  for (StateId q = 0; q < n; ++q) {
    for (StateId q2 = q + 1; q2 < n; ++q2) {
      AdjacencyList reverse(n);
      bool any = false;
      for (Symbol s = 0; s < k; ++s) {
        if (loops[q][s] == 0 || loops[q2][s] == 0) {
          continue;
        }
        any = true;
        for (StateId p = 0; p < n; ++p) {
          reverse[dfa.successors(p, s).front()].push_back(p);
        }
      }
      if (!any) {
        continue;
      }
      const std::vector<char> to_q = reachable_from(reverse, {q});
      const std::vector<char> to_q2 = reachable_from(reverse, {q2});
      for (StateId p = 0; p < n; ++p) {
        if (p != q && p != q2 && to_q[p] != 0 && to_q2[p] != 0) {
          return {false, PtViolation{2, {p, q, q2}}};
        }
      }
    }
  }
  return {true, std::nullopt};
}

bool is_pt_minimal_dfa(const Automaton& dfa) { return check_pt_minimal_dfa(dfa).piecewise_testable; }

PtVerdict check_piecewise_testable(const Automaton& a, const Budget& budget) {
  return check_pt_minimal_dfa(minimal_dfa(a, budget));
}

bool is_piecewise_testable(const Automaton& a, const Budget& budget) {
  return check_piecewise_testable(a, budget).piecewise_testable;
}

} // namespace ptsep
