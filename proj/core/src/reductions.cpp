#include "ptsep/constructions.hpp"

#include <algorithm>

#include "ptsep/error.hpp"
#include "ptsep/operations.hpp"

namespace ptsep {

namespace {

std::string fresh_name(const Alphabet& sigma, std::string name) {
  while (std::find(sigma.begin(), sigma.end(), name) != sigma.end()) {
    name += "'";
  }
  return name;
}

} // namespace

void validate_circuit(const Circuit& circuit) {
  if (circuit.gates.empty()) {
    throw Error(ErrorKind::schema, "circuit has no gates");
  }
  for (std::size_t i = 0; i < circuit.gates.size(); ++i) {
    const Gate& g = circuit.gates[i];
    if (g.kind != GateKind::conj && g.kind != GateKind::disj) {
      continue;
    }
    for (std::size_t operand : {g.left, g.right}) {
      if (operand < 1 || operand > i) {
        throw Error(ErrorKind::schema, "gate " + std::to_string(i + 1) + " references gate " +
                                           std::to_string(operand) +
                                           "; operands must be earlier gates (1-based)");
      }
    }
  }
}

bool eval_circuit(const Circuit& circuit) {
  validate_circuit(circuit);
  std::vector<char> value(circuit.gates.size() + 1, 0);
  for (std::size_t i = 1; i <= circuit.gates.size(); ++i) {
    const Gate& g = circuit.gates[i - 1];
    switch (g.kind) {
    case GateKind::zero:
      value[i] = 0;
      break;
    case GateKind::one:
      value[i] = 1;
      break;
    case GateKind::conj:
      value[i] = static_cast<char>(value[g.left] != 0 && value[g.right] != 0);
      break;
    case GateKind::disj:
      value[i] = static_cast<char>(value[g.left] != 0 || value[g.right] != 0);
      break;
    }
  }
  return value.back() != 0;
}

AutomatonPair gen_mcvp(const Circuit& circuit, bool pad) {
  validate_circuit(circuit);
  const std::size_t n = circuit.gates.size();
  Alphabet sigma{"x", "y"};
  for (std::size_t i = 1; i <= n; ++i) {
    sigma.push_back("a" + std::to_string(i));
    sigma.push_back("b" + std::to_string(i));
  }
  const auto a_letter = [](std::size_t i) { return static_cast<Symbol>(2 * i); };
  const auto b_letter = [](std::size_t i) { return static_cast<Symbol>(2 * i + 1); };
  const std::size_t padding = pad ? 2 * n : 0;
  for (std::size_t p = 1; p <= padding; ++p) {
    sigma.push_back("p" + std::to_string(p));
  }

  // A: s = 0, 𝟘 = 1, 𝟙 = 2, gate i = 2 + i.
  const StateId s = 0;
  const StateId zero = 1;
  const StateId one = 2;
  const auto gate = [](std::size_t i) { return static_cast<StateId>(2 + i); };
  AutomatonBuilder a(sigma, n + 3);
  a.set_initial(s);
  a.set_final(zero);
  a.set_final(one);
  for (std::size_t i = 1; i <= n; ++i) {
    const Gate& g = circuit.gates[i - 1];
    StateId l = zero;
    StateId r = zero;
    if (g.kind == GateKind::one) {
      l = r = one;
    } else if (g.kind == GateKind::conj || g.kind == GateKind::disj) {
      l = gate(g.left);
      r = gate(g.right);
    }
    a.add_transition(gate(i), a_letter(i), l);
    a.add_transition(gate(i), b_letter(i), r);
  }
  a.add_transition(s, Symbol{0}, gate(n));
  a.add_transition(one, Symbol{1}, s);
  if (pad) {
    auto next = static_cast<Symbol>(2 * n + 2);
    for (std::size_t i = 1; i < n; ++i) {
      a.add_transition(s, next++, gate(i));
    }
    for (std::size_t i = 1; i <= n; ++i) {
      a.add_transition(gate(i), next++, zero);
    }
    a.add_transition(zero, next++, one);
  }

  // B: q = 0, t = 1, then one state per ∧-gate.
  AutomatonBuilder b(sigma, 2);
  const StateId q = 0;
  const StateId t = 1;
  b.set_initial(q);
  b.set_final(q);
  b.add_transition(q, Symbol{0}, t);
  b.add_transition(t, Symbol{1}, q);
  for (std::size_t i = 1; i <= n; ++i) {
    const GateKind kind = circuit.gates[i - 1].kind;
    if (kind == GateKind::disj || kind == GateKind::one) {
      b.add_transition(t, a_letter(i), t);
      b.add_transition(t, b_letter(i), t);
    } else if (kind == GateKind::conj) {
      const StateId c = b.add_state();
      b.add_transition(t, a_letter(i), c);
      b.add_transition(c, b_letter(i), t);
    }
  }
  return {a.build(true), b.build(true)};
}

void validate_digraph(const Digraph& graph) {
  if (graph.adjacency.size() != graph.vertices) {
    throw Error(ErrorKind::schema, "adjacency has " + std::to_string(graph.adjacency.size()) +
                                       " rows for " + std::to_string(graph.vertices) +
                                       " vertices");
  }
  for (std::size_t v = 0; v < graph.vertices; ++v) {
    for (std::size_t w : graph.adjacency[v]) {
      if (w >= graph.vertices) {
        throw Error(ErrorKind::schema, "edge " + std::to_string(v) + " -> " + std::to_string(w) +
                                           " leaves the vertex range");
      }
    }
  }
}

AutomatonPair gen_reachability(const Digraph& graph, std::size_t s, std::size_t t,
                               bool deterministic) {
  validate_digraph(graph);
  if (s >= graph.vertices || t >= graph.vertices) {
    throw Error(ErrorKind::schema, "source or target outside the vertex range");
  }
  const std::size_t n = graph.vertices;
  Alphabet sigma{"a", "b"};
  std::size_t edges = 0;
  for (const auto& row : graph.adjacency) {
    edges += row.size();
  }
  for (std::size_t e = 0; e < edges; ++e) {
    sigma.push_back("e" + std::to_string(e));
  }
  const std::size_t first_fresh = sigma.size();
  if (deterministic) {
    for (std::size_t v = 0; v < n; ++v) {
      sigma.push_back(fresh_name(sigma, "in" + std::to_string(v)));
    }
    for (std::size_t v = 0; v < n; ++v) {
      sigma.push_back(fresh_name(sigma, "out" + std::to_string(v)));
    }
  }

  // A: q0 = 0, vertex v = v + 1, f = n + 1 in the deterministic variant.
  AutomatonBuilder a(sigma, n + 1);
  a.set_initial(0);
  a.set_final(0);
  Symbol label = 2;
  for (std::size_t v = 0; v < n; ++v) {
    for (std::size_t w : graph.adjacency[v]) {
      a.add_transition(static_cast<StateId>(v + 1), label++, static_cast<StateId>(w + 1));
    }
  }
  a.add_transition(0, Symbol{0}, static_cast<StateId>(s + 1));
  a.add_transition(static_cast<StateId>(t + 1), Symbol{1}, 0);
  if (deterministic) {
    const StateId f = a.add_state();
    a.set_final(f);
    for (std::size_t v = 0; v < n; ++v) {
      a.add_transition(0, static_cast<Symbol>(first_fresh + v), static_cast<StateId>(v + 1));
      a.add_transition(static_cast<StateId>(v + 1), static_cast<Symbol>(first_fresh + n + v), f);
    }
  }

  // B: i = 0 (initial), j = 1 (accepting).
  AutomatonBuilder b(sigma, 2);
  b.set_initial(0);
  b.set_final(1);
  b.add_transition(0, Symbol{0}, 1);
  b.add_transition(1, Symbol{1}, 0);
  for (Symbol e = 2; e < first_fresh; ++e) {
    b.add_transition(1, e, 1);
  }
  return {a.build(true), b.build(true)};
}

Automaton with_single_initial(const Automaton& a) {
  if (a.initials().size() == 1) {
    return a;
  }
  const auto iota = static_cast<StateId>(a.state_count());
  std::vector<Transition> transitions = a.transitions();
  std::vector<StateId> finals(a.finals().begin(), a.finals().end());
  bool final = false;
  for (StateId q : a.initials()) {
    final = final || a.is_final(q);
    for (Symbol s = 0; s < a.alphabet_size(); ++s) {
      for (StateId t : a.successors(q, s)) {
        transitions.push_back({iota, s, t});
      }
    }
  }
  if (final) {
    finals.push_back(iota);
  }
  return Automaton(a.alphabet(), a.state_count() + 1, {iota}, std::move(finals),
                   std::move(transitions));
}

Automaton gen_universality(const Automaton& nfa) {
  const Automaton a = with_single_initial(nfa);
  if (is_empty(a)) {
    AutomatonBuilder even(Alphabet{"a"}, 2);
    even.set_initial(0);
    even.set_final(0);
    even.add_transition(0, Symbol{0}, 1);
    even.add_transition(1, Symbol{0}, 0);
    return even.build(true);
  }
  Alphabet sigma = a.alphabet();
  const auto x = static_cast<Symbol>(sigma.size());
  sigma.push_back(fresh_name(sigma, "x"));
  const auto d = static_cast<StateId>(a.state_count());
  const StateId q0 = a.initials().front();
  AutomatonBuilder out(sigma, a.state_count() + 1);
  out.set_initial(q0);
  for (StateId q : a.finals()) {
    out.set_final(q);
  }
  for (const Transition& tr : a.transitions()) {
    out.add_transition(tr.source, tr.symbol, tr.target);
  }
  for (StateId q = 0; q < a.state_count(); ++q) {
    for (Symbol s = 0; s < a.alphabet_size(); ++s) {
      if (a.successors(q, s).empty()) {
        out.add_transition(q, s, d);
      }
    }
  }
  for (Symbol s = 0; s < a.alphabet_size(); ++s) {
    out.add_transition(d, s, d);
  }
  for (StateId q = 0; q <= d; ++q) {
    out.add_transition(q, x, q0);
  }
  return out.build(a.is_structurally_deterministic());
}

} // namespace ptsep
