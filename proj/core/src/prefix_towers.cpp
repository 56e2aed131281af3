#include "ptsep/prefix_towers.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <unordered_map>

#include "ptsep/digraph.hpp"
#include "ptsep/error.hpp"

namespace ptsep {

namespace {

using Node = std::uint64_t;
using Expand = std::function<void(Node, Symbol, const std::function<void(Node)>&)>;

struct Found {
  Word word;
  Node node;
};

// Breadth-first search with symbols and successors in index order, so the
// first target discovered is reached by the shortest, lexicographically
// least word.
std::optional<Found> search(const std::vector<Node>& starts, std::size_t symbols,
                            const Expand& expand, const std::function<bool(Node)>& is_target) {
  struct Parent {
    Node from;
    Symbol symbol;
    bool root;
  };
  std::unordered_map<Node, Parent> parent;
  std::vector<Node> queue;
  auto path_to = [&](Node node) {
    Word w;
    for (Node v = node; !parent.at(v).root; v = parent.at(v).from) {
      w.push_back(parent.at(v).symbol);
    }
    std::reverse(w.begin(), w.end());
    return Found{std::move(w), node};
  };
  for (Node s : starts) {
    if (parent.try_emplace(s, Parent{0, 0, true}).second) {
      if (is_target(s)) {
        return path_to(s);
      }
      queue.push_back(s);
    }
  }
  std::optional<Found> hit;
  for (std::size_t i = 0; i < queue.size() && !hit; ++i) {
    const Node v = queue[i];
    for (Symbol s = 0; s < symbols && !hit; ++s) {
      expand(v, s, [&](Node t) {
        if (hit || !parent.try_emplace(t, Parent{v, s, false}).second) {
          return;
        }
        if (is_target(t)) {
          hit = path_to(t);
        }
        queue.push_back(t);
      });
    }
  }
  return hit;
}

void require_disjoint(const Automaton& a, const Automaton& b) {
  if (!is_empty(intersection(a, b))) {
    throw Error(ErrorKind::precondition, "the two languages are not disjoint");
  }
}

} // namespace

std::optional<Pattern> find_pattern(const Automaton& a, const Automaton& b) {
  require_same_alphabet(a, b);
  require_disjoint(a, b);
  const ProductAutomaton prod = product(a, b, FinalPolicy::none);
  const Automaton& p = prod.automaton;
  const std::size_t n = p.state_count();
  const std::size_t k = p.alphabet_size();

  AdjacencyList graph(n);
  std::vector<char> self_loop(n, 0);
  std::vector<std::vector<std::vector<StateId>>> pred(k, std::vector<std::vector<StateId>>(n));
  for (StateId q = 0; q < n; ++q) {
    for (Symbol s = 0; s < k; ++s) {
      for (StateId t : p.successors(q, s)) {
        graph[q].push_back(t);
        pred[s][t].push_back(q);
        if (t == q) {
          self_loop[q] = 1;
        }
      }
    }
  }
  const std::vector<char> reachable =
      reachable_from(graph, std::vector<std::uint32_t>(p.initials().begin(), p.initials().end()));
  const Components comps = strongly_connected_components(graph);

  std::vector<std::vector<StateId>> members(comps.count);
  for (StateId q = 0; q < n; ++q) {
    if (reachable[q] != 0) {
      members[comps.component[q]].push_back(q);
    }
  }
  std::vector<std::uint32_t> order;
  for (std::uint32_t c = 0; c < comps.count; ++c) {
    const auto& m = members[c];
    if (!m.empty() && (m.size() >= 2 || self_loop[m.front()] != 0)) {
      order.push_back(c);
    }
  }
  std::sort(order.begin(), order.end(),
            [&](std::uint32_t x, std::uint32_t y) { return members[x].front() < members[y].front(); });

  auto left_final = [&](StateId q) { return a.is_final(prod.labels[q].left); };
  auto right_final = [&](StateId q) { return b.is_final(prod.labels[q].right); };
  const auto square = [n](StateId x, StateId y) { return Node{x} * n + y; };

  // Pairs (first, second) from which some common word reaches a target pair;
  // computed backwards over the synchronized square.
  auto co_reach = [&](const std::function<bool(StateId)>& first_ok, std::uint32_t comp) {
    std::vector<char> seen(n * n, 0);
    std::vector<Node> queue;
    for (StateId x = 0; x < n; ++x) {
      if (!first_ok(x)) {
        continue;
      }
      for (StateId y : members[comp]) {
        seen[square(x, y)] = 1;
        queue.push_back(square(x, y));
      }
    }
    for (std::size_t i = 0; i < queue.size(); ++i) {
      const auto x = static_cast<StateId>(queue[i] / n);
      const auto y = static_cast<StateId>(queue[i] % n);
      for (Symbol s = 0; s < k; ++s) {
        for (StateId px : pred[s][x]) {
          for (StateId py : pred[s][y]) {
            const Node v = square(px, py);
            if (seen[v] == 0) {
              seen[v] = 1;
              queue.push_back(v);
            }
          }
        }
      }
    }
    return seen;
  };

  const Expand step = [&](Node v, Symbol s, const std::function<void(Node)>& emit) {
    for (StateId t : p.successors(static_cast<StateId>(v), s)) {
      emit(t);
    }
  };
  const Expand square_step = [&](Node v, Symbol s, const std::function<void(Node)>& emit) {
    const auto x = static_cast<StateId>(v / n);
    const auto y = static_cast<StateId>(v % n);
    for (StateId tx : p.successors(x, s)) {
      for (StateId ty : p.successors(y, s)) {
        emit(square(tx, ty));
      }
    }
  };

  for (std::uint32_t comp : order) {
    const std::vector<char> sigma_ok = co_reach(left_final, comp);
    const std::vector<char> tau_ok = co_reach(right_final, comp);
    std::optional<StateId> sigma;
    std::optional<StateId> tau;
    for (StateId q : members[comp]) {
      if (!sigma && sigma_ok[square(q, q)] != 0) {
        sigma = q;
      }
      if (!tau && tau_ok[square(q, q)] != 0) {
        tau = q;
      }
    }
    if (!sigma || !tau) {
      continue;
    }
    auto in_comp = [&](StateId q) { return reachable[q] != 0 && comps.component[q] == comp; };
    const auto fork = [&](StateId from, const std::function<bool(StateId)>& first_ok) {
      return search({square(from, from)}, k, square_step, [&](Node v) {
        return first_ok(static_cast<StateId>(v / n)) && in_comp(static_cast<StateId>(v % n));
      });
    };
    const auto route = [&](std::vector<Node> from, StateId to) {
      return search(from, k, step, [to](Node v) { return v == to; });
    };
    const auto x = fork(*sigma, left_final);
    const auto y = fork(*tau, right_final);
    const StateId sigma2 = static_cast<StateId>(x->node % n);
    const StateId tau2 = static_cast<StateId>(y->node % n);
    const auto u = route(std::vector<Node>(p.initials().begin(), p.initials().end()), *sigma);
    const auto u1 = route({sigma2}, *tau);
    const auto u2 = route({tau2}, *sigma);

    Pattern pattern;
    for (StateId q : members[comp]) {
      pattern.scc.push_back(prod.labels[q]);
    }
    pattern.sigma = prod.labels[*sigma];
    pattern.sigma1 = prod.labels[x->node / n];
    pattern.sigma2 = prod.labels[sigma2];
    pattern.tau = prod.labels[*tau];
    pattern.tau1 = prod.labels[y->node / n];
    pattern.tau2 = prod.labels[tau2];
    pattern.u = u->word;
    pattern.x = x->word;
    pattern.y = y->word;
    pattern.u1 = u1->word;
    pattern.u2 = u2->word;
    return pattern;
  }
  return std::nullopt;
}

Tower materialize_prefix_tower(const Pattern& pattern, std::size_t count) {
  Tower tower{TowerRelation::prefix, {}};
  Word w = pattern.u;
  auto append = [&w](const Word& part) { w.insert(w.end(), part.begin(), part.end()); };
  for (std::size_t i = 0; i < count; ++i) {
    if (i % 2 == 0) {
      if (i > 0) {
        append(pattern.u2);
      }
      append(pattern.x);
      tower.elements.push_back({w, Side::left});
    } else {
      append(pattern.u1);
      append(pattern.y);
      tower.elements.push_back({w, Side::right});
    }
  }
  return tower;
}

PrefixHeight max_prefix_tower_height(const Automaton& a, const Automaton& b,
                                     const Budget& budget) {
  require_same_alphabet(a, b);
  const Automaton da = determinize(a, budget);
  const Automaton db = determinize(b, budget);
  const std::size_t k = a.alphabet_size();
  const std::size_t nb = db.state_count();

  // Reachable product of the two complete DFAs.
  std::unordered_map<Node, StateId> index;
  std::vector<ProductState> states;
  AdjacencyList graph;
  auto intern = [&](StateId x, StateId y) {
    auto [it, inserted] = index.try_emplace(Node{x} * nb + y, static_cast<StateId>(states.size()));
    if (inserted) {
      states.push_back({x, y});
      graph.emplace_back();
    }
    return it->second;
  };
  intern(da.initials().front(), db.initials().front());
  for (std::size_t i = 0; i < states.size(); ++i) {
    const ProductState st = states[i];
    for (Symbol s = 0; s < k; ++s) {
      const StateId t = intern(da.successors(st.left, s).front(), db.successors(st.right, s).front());
      graph[i].push_back(t);
    }
  }

  // side: 1 for X = F_A×(Q_B∖F_B), 2 for Y = (Q_A∖F_A)×F_B, 0 otherwise.
  const std::size_t n = states.size();
  std::vector<int> side(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const bool fa = da.is_final(states[i].left);
    const bool fb = db.is_final(states[i].right);
    if (fa && fb) {
      throw Error(ErrorKind::precondition, "the two languages are not disjoint");
    }
    side[i] = fa ? 1 : (fb ? 2 : 0);
  }
  const Components comps = strongly_connected_components(graph);
  std::vector<int> comp_side(comps.count, 0);
  PrefixHeight result;
  result.product_states = n;
  for (std::size_t i = 0; i < n; ++i) {
    int& cs = comp_side[comps.component[i]];
    if (side[i] != 0) {
      if (cs != 0 && cs != side[i]) {
        result.infinite = true;
        return result;
      }
      cs = side[i];
    }
  }
  // best[c][s]: longest alternating sequence inside c and its descendants
  // whose first element has side s+1. Successor components have smaller ids.
  std::vector<std::vector<std::uint32_t>> succ(comps.count);
  for (std::size_t v = 0; v < n; ++v) {
    for (std::uint32_t w : graph[v]) {
      if (comps.component[w] != comps.component[v]) {
        succ[comps.component[v]].push_back(comps.component[w]);
      }
    }
  }
  std::vector<std::array<std::size_t, 2>> best(comps.count, {0, 0});
  for (std::uint32_t c = 0; c < comps.count; ++c) {
    std::array<std::size_t, 2> below{0, 0};
    for (std::uint32_t d : succ[c]) {
      below[0] = std::max(below[0], best[d][0]);
      below[1] = std::max(below[1], best[d][1]);
    }
    best[c] = below;
    if (comp_side[c] != 0) {
      const int s = comp_side[c] - 1;
      best[c][s] = std::max(best[c][s], 1 + below[1 - s]);
    }
  }
  const std::uint32_t start = comps.component[0];
  result.height = std::max(best[start][0], best[start][1]);
  return result;
}

std::uint64_t prefix_height_dfa_bound(std::uint64_t m, std::uint64_t n) { return m * n / 2; }

BigInt prefix_height_nfa_bound(std::uint64_t m, std::uint64_t n) {
  if (m + n == 0) {
    return 0;
  }
  return BigInt(1) << static_cast<unsigned>(m + n - 1);
}

} // namespace ptsep
