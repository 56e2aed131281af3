#include "ptsep/closures.hpp"

#include <algorithm>
#include <string>
#include <unordered_map>

#include "antichain.hpp"
#include "ptsep/error.hpp"
#include "ptsep/operations.hpp"

namespace ptsep {

namespace detail {

void prune(std::vector<StateId>& set, const Cover& covered) {
  std::vector<StateId> kept;
  for (StateId q : set) {
    bool drop = false;
    for (StateId p : set) {
      if (p != q && covered(q, p) && (!covered(p, q) || p < q)) {
        drop = true;
        break;
      }
    }
    if (!drop) {
      kept.push_back(q);
    }
  }
  set.swap(kept);
}

} // namespace detail

namespace {

using detail::Cover;
using detail::SubsetHash;
using detail::prune;


// Subset construction over `a` where the successor of S under s is
// δ(S, s), plus S itself when `keep` is set, pruned by `covered`.
Automaton antichain_dfa(const Automaton& a, const Cover& covered, bool keep,
                        const Budget& budget) {
  const std::size_t k = a.alphabet_size();
  std::unordered_map<std::vector<StateId>, StateId, SubsetHash> index;
  std::vector<std::vector<StateId>> subsets;
  std::vector<Transition> transitions;
  auto intern = [&](std::vector<StateId> subset) {
    std::sort(subset.begin(), subset.end());
    subset.erase(std::unique(subset.begin(), subset.end()), subset.end());
    prune(subset, covered);
    auto [it, inserted] = index.try_emplace(subset, static_cast<StateId>(subsets.size()));
    if (inserted) {
      if (subsets.size() >= budget.max_subsets) {
        throw Error(ErrorKind::budget_exceeded, "subset construction exceeded " +
                                                    std::to_string(budget.max_subsets) +
                                                    " subsets");
      }
      subsets.push_back(std::move(subset));
    }
    return it->second;
  };
  intern(std::vector<StateId>(a.initials().begin(), a.initials().end()));
  std::vector<StateId> next;
  for (std::size_t current = 0; current < subsets.size(); ++current) {
    for (Symbol s = 0; s < k; ++s) {
      next.clear();
      if (keep) {
        next = subsets[current];
      }
      for (StateId q : subsets[current]) {
        for (StateId t : a.successors(q, s)) {
          next.push_back(t);
        }
      }
      const StateId to = intern(next);
      transitions.push_back({static_cast<StateId>(current), s, to});
    }
  }
  std::vector<StateId> finals;
  for (std::size_t i = 0; i < subsets.size(); ++i) {
    if (std::any_of(subsets[i].begin(), subsets[i].end(),
                    [&](StateId q) { return a.is_final(q); })) {
      finals.push_back(static_cast<StateId>(i));
    }
  }
  return minimize(Automaton(a.alphabet(), subsets.size(), {0}, std::move(finals),
                            std::move(transitions), true));
}

// Deterministic inputs are minimized first: equivalent states would
// otherwise multiply the subsets.
Automaton reduced(const Automaton& a) {
  return a.is_structurally_deterministic() ? trim(minimize(a)) : trim(a);
}

} // namespace

bool is_subsequence(const Word& v, const Word& w) {
  std::size_t i = 0;
  for (std::size_t j = 0; j < w.size() && i < v.size(); ++j) {
    if (v[i] == w[j]) {
      ++i;
    }
  }
  return i == v.size();
}

bool is_prefix(const Word& v, const Word& w) {
  return v.size() <= w.size() && std::equal(v.begin(), v.end(), w.begin());
}

Automaton down_closure(const Automaton& a) {
  const std::size_t n = a.state_count();
  const std::size_t k = a.alphabet_size();
  std::vector<std::vector<StateId>> next(n);
  for (StateId q = 0; q < n; ++q) {
    for (Symbol s = 0; s < k; ++s) {
      for (StateId t : a.successors(q, s)) {
        next[q].push_back(t);
      }
    }
  }

  // Silent closure E(q) is plain graph reachability; δ'(q,σ) = δ(E(q),σ).
  std::vector<Transition> transitions;
  std::vector<StateId> finals;
  std::vector<char> seen(n, 0);
  std::vector<char> target(n, 0);
  std::vector<StateId> closure;
  for (StateId q = 0; q < n; ++q) {
    closure.assign(1, q);
    seen[q] = 1;
    for (std::size_t i = 0; i < closure.size(); ++i) {
      for (StateId t : next[closure[i]]) {
        if (seen[t] == 0) {
          seen[t] = 1;
          closure.push_back(t);
        }
      }
    }
    bool final = false;
    for (StateId p : closure) {
      seen[p] = 0;
      final = final || a.is_final(p);
    }
    if (final) {
      finals.push_back(q);
    }
    for (Symbol s = 0; s < k; ++s) {
      for (StateId p : closure) {
        for (StateId t : a.successors(p, s)) {
          if (target[t] == 0) {
            target[t] = 1;
            transitions.push_back({q, s, t});
          }
        }
      }
      for (StateId p : closure) {
        for (StateId t : a.successors(p, s)) {
          target[t] = 0;
        }
      }
    }
  }
  std::vector<StateId> initials(a.initials().begin(), a.initials().end());
  return Automaton(a.alphabet(), n, std::move(initials), std::move(finals),
                   std::move(transitions));
}

Automaton up_closure(const Automaton& a) {
  std::vector<Transition> transitions = a.transitions();
  for (StateId q = 0; q < a.state_count(); ++q) {
    for (Symbol s = 0; s < a.alphabet_size(); ++s) {
      transitions.push_back({q, s, q});
    }
  }
  std::vector<StateId> initials(a.initials().begin(), a.initials().end());
  std::vector<StateId> finals(a.finals().begin(), a.finals().end());
  return Automaton(a.alphabet(), a.state_count(), std::move(initials), std::move(finals),
                   std::move(transitions));
}

Automaton down_closure_dfa(const Automaton& a, const Budget& budget) {
  const Automaton t = reduced(a);
  const Automaton d = down_closure(t);
  // Everything reachable from p contributes a subset of p's residual.
  Cover covered(t.state_count(), 0);
  std::vector<StateId> stack;
  for (StateId p = 0; p < t.state_count(); ++p) {
    std::vector<char> seen(t.state_count(), 0);
    stack.assign(1, p);
    seen[p] = 1;
    while (!stack.empty()) {
      const StateId q = stack.back();
      stack.pop_back();
      covered.set(q, p, true);
      for (Symbol s = 0; s < t.alphabet_size(); ++s) {
        for (StateId r : t.successors(q, s)) {
          if (seen[r] == 0) {
            seen[r] = 1;
            stack.push_back(r);
          }
        }
      }
    }
  }
  return antichain_dfa(d, covered, false, budget);
}

Automaton up_closure_dfa(const Automaton& a, const Budget& budget) {
  const detail::UpwardSubsets up(a);
  return antichain_dfa(up.automaton(), up.cover(), true, budget);
}

namespace detail {

UpwardSubsets::UpwardSubsets(const Automaton& a) : t_(reduced(a)) {
  const std::size_t n = t_.state_count();
  const std::size_t k = t_.alphabet_size();
  // Greatest relation with: q final ⇒ p final, and every q -s-> q' is
  // matched by p skipping s (q' ≤ p) or reading it (q' ≤ p').
  covered_ = Cover(n, 1);
  for (StateId q = 0; q < n; ++q) {
    for (StateId p = 0; p < n; ++p) {
      if (t_.is_final(q) && !t_.is_final(p)) {
        covered_.set(q, p, false);
      }
    }
  }
  auto holds = [&](StateId q, StateId p) {
    for (Symbol s = 0; s < k; ++s) {
      for (StateId q2 : t_.successors(q, s)) {
        if (covered_(q2, p)) {
          continue;
        }
        const auto ps = t_.successors(p, s);
        if (std::none_of(ps.begin(), ps.end(), [&](StateId p2) { return covered_(q2, p2); })) {
          return false;
        }
      }
    }
    return true;
  };
  std::vector<std::vector<std::vector<StateId>>> pred(k, std::vector<std::vector<StateId>>(n));
  for (StateId q = 0; q < n; ++q) {
    for (Symbol s = 0; s < k; ++s) {
      for (StateId t : t_.successors(q, s)) {
        pred[s][t].push_back(q);
      }
    }
  }
  // Pairs removed but not yet propagated.
  std::vector<std::pair<StateId, StateId>> removed;
  for (StateId q = 0; q < n; ++q) {
    for (StateId p = 0; p < n; ++p) {
      if (covered_(q, p) && !t_.is_final(p) && !holds(q, p)) {
        covered_.set(q, p, false);
        removed.emplace_back(q, p);
      }
    }
  }
  auto recheck = [&](StateId q, StateId p) {
    if (covered_(q, p) && !t_.is_final(p) && !holds(q, p)) {
      covered_.set(q, p, false);
      removed.emplace_back(q, p);
    }
  };
  // Losing q2 ≤ p2 can only break pairs q ≤ p with q -s-> q2 and p = p2 or p -s-> p2.
  while (!removed.empty()) {
    const auto [q2, p2] = removed.back();
    removed.pop_back();
    for (Symbol s = 0; s < k; ++s) {
      for (StateId q : pred[s][q2]) {
        recheck(q, p2);
        for (StateId p : pred[s][p2]) {
          recheck(q, p);
        }
      }
    }
  }
}

std::vector<StateId> UpwardSubsets::initial() const {
  std::vector<StateId> set(t_.initials().begin(), t_.initials().end());
  std::sort(set.begin(), set.end());
  set.erase(std::unique(set.begin(), set.end()), set.end());
  prune(set, covered_);
  return set;
}

void UpwardSubsets::step(const std::vector<StateId>& from, Symbol s, std::vector<StateId>& to) const {
  to = from;
  for (StateId q : from) {
    for (StateId t : t_.successors(q, s)) {
      to.push_back(t);
    }
  }
  std::sort(to.begin(), to.end());
  to.erase(std::unique(to.begin(), to.end()), to.end());
  prune(to, covered_);
}

bool UpwardSubsets::accepting(const std::vector<StateId>& set) const {
  return std::any_of(set.begin(), set.end(), [&](StateId q) { return t_.is_final(q); });
}

} // namespace detail

bool word_embeds_into_language(const Word& w, const Automaton& a) {
  return accepts(down_closure(a), w);
}

bool language_embeds(const Automaton& a, const Automaton& b, const Budget& budget) {
  return includes(down_closure_dfa(b, budget), a, budget);
}

} // namespace ptsep
