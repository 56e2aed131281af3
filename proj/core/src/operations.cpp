#include "ptsep/operations.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <unordered_map>

#include "ptsep/error.hpp"

namespace ptsep {

namespace {

struct SubsetHash {
  std::size_t operator()(const std::vector<StateId>& v) const noexcept {
    std::size_t h = 0xcbf29ce484222325ULL;
    for (StateId q : v) {
      h ^= q + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
  }
};

bool same_alphabet(const Automaton& a, const Automaton& b) { return a.alphabet() == b.alphabet(); }

} // namespace

void require_same_alphabet(const Automaton& a, const Automaton& b) {
  if (!same_alphabet(a, b)) {
    throw Error(ErrorKind::alphabet_mismatch,
                "automata are over different alphabets (" + std::to_string(a.alphabet_size()) +
                    " vs " + std::to_string(b.alphabet_size()) + " letters, or different order)");
  }
}

StateId ProductAutomaton::id(ProductState s) const {
  const auto it = std::lower_bound(labels.begin(), labels.end(), s);
  if (it == labels.end() || *it != s) {
    throw Error(ErrorKind::precondition, "product state label not present");
  }
  return static_cast<StateId>(it - labels.begin());
}

ProductAutomaton product(const Automaton& a, const Automaton& b, FinalPolicy policy) {
  require_same_alphabet(a, b);
  const std::size_t nb = b.state_count();
  const std::size_t n = a.state_count() * nb;
  auto id = [nb](StateId p, StateId q) { return static_cast<StateId>(std::size_t{p} * nb + q); };

  std::vector<ProductState> labels;
  labels.reserve(n);
  std::vector<StateId> finals;
  for (StateId p = 0; p < a.state_count(); ++p) {
    for (StateId q = 0; q < nb; ++q) {
      labels.push_back({p, q});
      const bool fa = a.is_final(p);
      const bool fb = b.is_final(q);
      const bool accept = (policy == FinalPolicy::both && fa && fb) ||
                          (policy == FinalPolicy::left_only && fa && !fb) ||
                          (policy == FinalPolicy::right_only && !fa && fb);
      if (accept) {
        finals.push_back(id(p, q));
      }
    }
  }
  std::vector<StateId> initials;
  for (StateId p : a.initials()) {
    for (StateId q : b.initials()) {
      initials.push_back(id(p, q));
    }
  }
  std::vector<Transition> transitions;
  for (StateId p = 0; p < a.state_count(); ++p) {
    for (Symbol s = 0; s < a.alphabet_size(); ++s) {
      for (StateId p2 : a.successors(p, s)) {
        for (StateId q = 0; q < nb; ++q) {
          for (StateId q2 : b.successors(q, s)) {
            transitions.push_back({id(p, q), s, id(p2, q2)});
          }
        }
      }
    }
  }
  const bool det = a.is_structurally_deterministic() && b.is_structurally_deterministic();
  return {Automaton(a.alphabet(), n, std::move(initials), std::move(finals),
                    std::move(transitions), det),
          std::move(labels)};
}

DeterminizedAutomaton determinize_with_subsets(const Automaton& a, const Budget& budget) {
  const std::size_t k = a.alphabet_size();
  std::unordered_map<std::vector<StateId>, StateId, SubsetHash> index;
  std::vector<std::vector<StateId>> subsets;
  std::vector<Transition> transitions;
  std::vector<StateId> finals;

  auto intern = [&](std::vector<StateId>&& subset) -> StateId {
    auto [it, inserted] = index.try_emplace(subset, static_cast<StateId>(subsets.size()));
    if (inserted) {
      if (subsets.size() >= budget.max_subsets) {
        throw Error(ErrorKind::budget_exceeded,
                    "subset construction exceeded " + std::to_string(budget.max_subsets) +
                        " subsets");
      }
      subsets.push_back(std::move(subset));
    }
    return it->second;
  };

  std::vector<StateId> start(a.initials().begin(), a.initials().end());
  intern(std::move(start));
  std::vector<char> mark(a.state_count(), 0);
  std::vector<StateId> collected;
  for (std::size_t current = 0; current < subsets.size(); ++current) {
    const auto from = static_cast<StateId>(current);
    for (Symbol s = 0; s < k; ++s) {
      collected.clear();
      for (StateId q : subsets[current]) {
        for (StateId t : a.successors(q, s)) {
          if (mark[t] == 0) {
            mark[t] = 1;
            collected.push_back(t);
          }
        }
      }
      for (StateId t : collected) {
        mark[t] = 0;
      }
      std::sort(collected.begin(), collected.end());
      const StateId to = intern(std::vector<StateId>(collected));
      transitions.push_back({from, s, to});
    }
  }
  for (std::size_t i = 0; i < subsets.size(); ++i) {
    for (StateId q : subsets[i]) {
      if (a.is_final(q)) {
        finals.push_back(static_cast<StateId>(i));
        break;
      }
    }
  }
  Automaton dfa(a.alphabet(), subsets.size(), {0}, std::move(finals), std::move(transitions), true);
  return {std::move(dfa), std::move(subsets)};
}

Automaton determinize(const Automaton& a, const Budget& budget) {
  return determinize_with_subsets(a, budget).automaton;
}

Automaton complete(const Automaton& dfa) {
  if (dfa.is_complete()) {
    return dfa;
  }
  const auto sink = static_cast<StateId>(dfa.state_count());
  std::vector<Transition> transitions = dfa.transitions();
  for (StateId q = 0; q <= sink; ++q) {
    for (Symbol s = 0; s < dfa.alphabet_size(); ++s) {
      if (q == sink || dfa.successors(q, s).empty()) {
        transitions.push_back({q, s, sink});
      }
    }
  }
  std::vector<StateId> initials(dfa.initials().begin(), dfa.initials().end());
  std::vector<StateId> finals(dfa.finals().begin(), dfa.finals().end());
  if (initials.empty()) {
    initials.push_back(sink);
  }
  return Automaton(dfa.alphabet(), dfa.state_count() + 1, std::move(initials), std::move(finals),
                   std::move(transitions), dfa.deterministic());
}

Automaton minimize(const Automaton& input) {
  if (!input.is_structurally_deterministic()) {
    throw Error(ErrorKind::not_deterministic, "minimize requires a deterministic automaton");
  }
  const Automaton d = complete(input);
  const std::size_t k = d.alphabet_size();
  auto next = [&](StateId q, Symbol s) { return d.successors(q, s).front(); };

  // Reachable states.
  std::vector<StateId> reachable;
  std::vector<char> seen(d.state_count(), 0);
  const StateId init = d.initials().front();
  seen[init] = 1;
  reachable.push_back(init);
  for (std::size_t i = 0; i < reachable.size(); ++i) {
    for (Symbol s = 0; s < k; ++s) {
      const StateId t = next(reachable[i], s);
      if (seen[t] == 0) {
        seen[t] = 1;
        reachable.push_back(t);
      }
    }
  }

  // Hopcroft refinement over the reachable states. Blocks are ranges of
  // `elems`; marked states are swapped to the front of their block.
  const std::size_t n = reachable.size();
  std::vector<StateId> cls(d.state_count(), 0);
  std::vector<StateId> elems(reachable);
  std::vector<std::size_t> loc(d.state_count(), 0);
  std::vector<std::size_t> first;
  std::vector<std::size_t> last;
  std::vector<std::size_t> mid;
  std::stable_partition(elems.begin(), elems.end(), [&](StateId q) { return d.is_final(q); });
  const std::size_t final_count = static_cast<std::size_t>(
      std::count_if(reachable.begin(), reachable.end(), [&](StateId q) { return d.is_final(q); }));
  auto add_block = [&](std::size_t from, std::size_t to) {
    const auto b = static_cast<StateId>(first.size());
    first.push_back(from);
    last.push_back(to);
    mid.push_back(from);
    for (std::size_t i = from; i < to; ++i) {
      cls[elems[i]] = b;
    }
  };
  if (final_count > 0) {
    add_block(0, final_count);
  }
  if (final_count < n) {
    add_block(final_count, n);
  }
  for (std::size_t i = 0; i < n; ++i) {
    loc[elems[i]] = i;
  }
  // Inverse transitions in compressed rows: predecessors of t under s are
  // inv[offset[t*k+s] .. offset[t*k+s+1]).
  std::vector<std::size_t> offset(d.state_count() * k + 1, 0);
  for (StateId q : reachable) {
    for (Symbol s = 0; s < k; ++s) {
      ++offset[std::size_t{next(q, s)} * k + s + 1];
    }
  }
  for (std::size_t i = 1; i < offset.size(); ++i) {
    offset[i] += offset[i - 1];
  }
  std::vector<StateId> inv(offset.back());
  {
    std::vector<std::size_t> fill(offset.begin(), offset.end() - 1);
    for (StateId q : reachable) {
      for (Symbol s = 0; s < k; ++s) {
        inv[fill[std::size_t{next(q, s)} * k + s]++] = q;
      }
    }
  }
  std::vector<std::pair<StateId, Symbol>> work;
  std::vector<std::vector<char>> waiting;
  auto push = [&](StateId b, Symbol s) {
    if (waiting[b][s] == 0) {
      waiting[b][s] = 1;
      work.emplace_back(b, s);
    }
  };
  for (StateId b = 0; b < first.size(); ++b) {
    waiting.emplace_back(k, 0);
  }
  if (first.size() == 2) {
    const StateId smaller = final_count <= n - final_count ? 0 : 1;
    for (Symbol s = 0; s < k; ++s) {
      push(smaller, s);
    }
  }
  std::vector<StateId> splitter;
  std::vector<StateId> touched;
  while (!work.empty()) {
    const auto [b, s] = work.back();
    work.pop_back();
    waiting[b][s] = 0;
    splitter.assign(elems.begin() + static_cast<std::ptrdiff_t>(first[b]),
                    elems.begin() + static_cast<std::ptrdiff_t>(last[b]));
    touched.clear();
    for (StateId t : splitter) {
      for (std::size_t e = offset[std::size_t{t} * k + s]; e < offset[std::size_t{t} * k + s + 1]; ++e) {
        const StateId q = inv[e];
        const StateId c = cls[q];
        const std::size_t i = loc[q];
        if (i < mid[c]) {
          continue; // already marked
        }
        if (mid[c] == first[c]) {
          touched.push_back(c);
        }
        const std::size_t j = mid[c]++;
        std::swap(elems[i], elems[j]);
        loc[elems[i]] = i;
        loc[elems[j]] = j;
      }
    }
    for (StateId c : touched) {
      if (mid[c] == last[c]) {
        mid[c] = first[c];
        continue;
      }
      // Marked part [first, mid) becomes a new block.
      const std::size_t from = first[c];
      const std::size_t to = mid[c];
      first[c] = to;
      mid[c] = to;
      const auto nb = static_cast<StateId>(first.size());
      add_block(from, to);
      waiting.emplace_back(k, 0);
      const bool new_smaller = to - from <= last[c] - first[c];
      for (Symbol a = 0; a < k; ++a) {
        if (waiting[c][a] != 0 || new_smaller) {
          push(nb, a);
        } else {
          push(c, a);
        }
      }
    }
  }
  const std::size_t class_count = first.size();

  // Canonical numbering: breadth-first over classes from the initial class.
  std::vector<StateId> representative(class_count, 0);
  std::vector<char> has_rep(class_count, 0);
  for (StateId q : reachable) {
    if (has_rep[cls[q]] == 0) {
      has_rep[cls[q]] = 1;
      representative[cls[q]] = q;
    }
  }
  constexpr StateId unset = ~StateId{0};
  std::vector<StateId> order(class_count, unset);
  std::vector<StateId> queue{cls[init]};
  order[cls[init]] = 0;
  for (std::size_t i = 0; i < queue.size(); ++i) {
    const StateId q = representative[queue[i]];
    for (Symbol s = 0; s < k; ++s) {
      const StateId c = cls[next(q, s)];
      if (order[c] == unset) {
        order[c] = static_cast<StateId>(queue.size());
        queue.push_back(c);
      }
    }
  }
  std::vector<Transition> transitions;
  transitions.reserve(class_count * k);
  std::vector<StateId> finals;
  for (std::size_t i = 0; i < queue.size(); ++i) {
    const StateId q = representative[queue[i]];
    if (d.is_final(q)) {
      finals.push_back(static_cast<StateId>(i));
    }
    for (Symbol s = 0; s < k; ++s) {
      transitions.push_back({static_cast<StateId>(i), s, order[cls[next(q, s)]]});
    }
  }
  return Automaton(d.alphabet(), class_count, {0}, std::move(finals), std::move(transitions),
                   true);
}

Automaton minimal_dfa(const Automaton& a, const Budget& budget) {
  return minimize(determinize(a, budget));
}

Automaton complement(const Automaton& dfa) {
  if (!dfa.is_structurally_deterministic()) {
    throw Error(ErrorKind::not_deterministic, "complement requires a deterministic automaton");
  }
  const Automaton c = complete(dfa);
  std::vector<StateId> finals;
  for (StateId q = 0; q < c.state_count(); ++q) {
    if (!c.is_final(q)) {
      finals.push_back(q);
    }
  }
  std::vector<StateId> initials(c.initials().begin(), c.initials().end());
  return Automaton(c.alphabet(), c.state_count(), std::move(initials), std::move(finals),
                   c.transitions(), true);
}

Automaton intersection(const Automaton& a, const Automaton& b) {
  require_same_alphabet(a, b);
  const std::size_t nb = b.state_count();
  std::unordered_map<std::uint64_t, StateId> index;
  std::vector<ProductState> states;
  auto intern = [&](StateId p, StateId q) {
    const std::uint64_t key = std::uint64_t{p} * nb + q;
    auto [it, inserted] = index.try_emplace(key, static_cast<StateId>(states.size()));
    if (inserted) {
      states.push_back({p, q});
    }
    return it->second;
  };
  std::vector<StateId> initials;
  for (StateId p : a.initials()) {
    for (StateId q : b.initials()) {
      initials.push_back(intern(p, q));
    }
  }
  std::vector<Transition> transitions;
  for (std::size_t i = 0; i < states.size(); ++i) {
    const ProductState st = states[i];
    for (Symbol s = 0; s < a.alphabet_size(); ++s) {
      for (StateId p2 : a.successors(st.left, s)) {
        for (StateId q2 : b.successors(st.right, s)) {
          transitions.push_back({static_cast<StateId>(i), s, intern(p2, q2)});
        }
      }
    }
  }
  std::vector<StateId> finals;
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (a.is_final(states[i].left) && b.is_final(states[i].right)) {
      finals.push_back(static_cast<StateId>(i));
    }
  }
  if (states.empty()) {
    return empty_automaton(a.alphabet());
  }
  const bool det = a.is_structurally_deterministic() && b.is_structurally_deterministic();
  return Automaton(a.alphabet(), states.size(), std::move(initials), std::move(finals),
                   std::move(transitions), det);
}

Automaton union_of(const Automaton& a, const Automaton& b) {
  require_same_alphabet(a, b);
  const auto offset = static_cast<StateId>(a.state_count());
  std::vector<Transition> transitions = a.transitions();
  for (const Transition& t : b.transitions()) {
    transitions.push_back({t.source + offset, t.symbol, t.target + offset});
  }
  std::vector<StateId> initials(a.initials().begin(), a.initials().end());
  for (StateId q : b.initials()) {
    initials.push_back(q + offset);
  }
  std::vector<StateId> finals(a.finals().begin(), a.finals().end());
  for (StateId q : b.finals()) {
    finals.push_back(q + offset);
  }
  return Automaton(a.alphabet(), a.state_count() + b.state_count(), std::move(initials),
                   std::move(finals), std::move(transitions));
}

Automaton difference(const Automaton& a, const Automaton& b, const Budget& budget) {
  require_same_alphabet(a, b);
  return intersection(a, complement(determinize(b, budget)));
}

bool is_empty(const Automaton& a) {
  std::vector<char> seen(a.state_count(), 0);
  std::vector<StateId> stack(a.initials().begin(), a.initials().end());
  for (StateId q : stack) {
    seen[q] = 1;
  }
  while (!stack.empty()) {
    const StateId q = stack.back();
    stack.pop_back();
    if (a.is_final(q)) {
      return false;
    }
    for (Symbol s = 0; s < a.alphabet_size(); ++s) {
      for (StateId t : a.successors(q, s)) {
        if (seen[t] == 0) {
          seen[t] = 1;
          stack.push_back(t);
        }
      }
    }
  }
  return true;
}

bool includes(const Automaton& a, const Automaton& b, const Budget& budget) {
  require_same_alphabet(a, b);
  return is_empty(intersection(b, complement(determinize(a, budget))));
}

bool equivalent(const Automaton& a, const Automaton& b, const Budget& budget) {
  require_same_alphabet(a, b);
  return minimal_dfa(a, budget) == minimal_dfa(b, budget);
}

Automaton trim(const Automaton& a) {
  const std::size_t n = a.state_count();
  std::vector<char> forward(n, 0);
  std::vector<StateId> stack(a.initials().begin(), a.initials().end());
  for (StateId q : stack) {
    forward[q] = 1;
  }
  std::vector<std::vector<StateId>> reverse(n);
  for (StateId q = 0; q < n; ++q) {
    for (Symbol s = 0; s < a.alphabet_size(); ++s) {
      for (StateId t : a.successors(q, s)) {
        reverse[t].push_back(q);
      }
    }
  }
  while (!stack.empty()) {
    const StateId q = stack.back();
    stack.pop_back();
    for (Symbol s = 0; s < a.alphabet_size(); ++s) {
      for (StateId t : a.successors(q, s)) {
        if (forward[t] == 0) {
          forward[t] = 1;
          stack.push_back(t);
        }
      }
    }
  }
  std::vector<char> backward(n, 0);
  for (StateId q : a.finals()) {
    backward[q] = 1;
    stack.push_back(q);
  }
  while (!stack.empty()) {
    const StateId q = stack.back();
    stack.pop_back();
    for (StateId p : reverse[q]) {
      if (backward[p] == 0) {
        backward[p] = 1;
        stack.push_back(p);
      }
    }
  }
  constexpr StateId unset = ~StateId{0};
  std::vector<StateId> rename(n, unset);
  StateId kept = 0;
  for (StateId q = 0; q < n; ++q) {
    if (forward[q] != 0 && backward[q] != 0) {
      rename[q] = kept++;
    }
  }
  std::vector<StateId> initials;
  for (StateId q : a.initials()) {
    if (rename[q] != unset) {
      initials.push_back(rename[q]);
    }
  }
  std::vector<StateId> finals;
  for (StateId q : a.finals()) {
    if (rename[q] != unset) {
      finals.push_back(rename[q]);
    }
  }
  std::vector<Transition> transitions;
  for (const Transition& t : a.transitions()) {
    if (rename[t.source] != unset && rename[t.target] != unset) {
      transitions.push_back({rename[t.source], t.symbol, rename[t.target]});
    }
  }
  const bool det = a.deterministic() && initials.size() == 1;
  return Automaton(a.alphabet(), kept, std::move(initials), std::move(finals),
                   std::move(transitions), det);
}

Automaton with_alphabet(const Automaton& a, const Alphabet& alphabet) {
  std::vector<Symbol> map(a.alphabet_size());
  for (Symbol s = 0; s < a.alphabet_size(); ++s) {
    const auto it = std::find(alphabet.begin(), alphabet.end(), a.alphabet()[s]);
    if (it == alphabet.end()) {
      throw Error(ErrorKind::alphabet_mismatch,
                  "target alphabet lacks symbol '" + a.alphabet()[s] + "'");
    }
    map[s] = static_cast<Symbol>(it - alphabet.begin());
  }
  std::vector<Transition> transitions;
  for (const Transition& t : a.transitions()) {
    transitions.push_back({t.source, map[t.symbol], t.target});
  }
  std::vector<StateId> initials(a.initials().begin(), a.initials().end());
  std::vector<StateId> finals(a.finals().begin(), a.finals().end());
  return Automaton(alphabet, a.state_count(), std::move(initials), std::move(finals),
                   std::move(transitions), a.deterministic());
}

std::pair<Automaton, Automaton> align_alphabets(const Automaton& a, const Automaton& b) {
  if (same_alphabet(a, b)) {
    return {a, b};
  }
  Alphabet merged = a.alphabet();
  for (const std::string& name : b.alphabet()) {
    if (std::find(merged.begin(), merged.end(), name) == merged.end()) {
      merged.push_back(name);
    }
  }
  return {with_alphabet(a, merged), with_alphabet(b, merged)};
}

} // namespace ptsep
