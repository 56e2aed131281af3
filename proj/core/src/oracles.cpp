#include "ptsep/oracles.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

#include "ptsep/closures.hpp"
#include "ptsep/error.hpp"
#include "ptsep/operations.hpp"

namespace ptsep {

namespace {

void check_enumeration_budget(std::size_t letters, std::size_t max_len, const Budget& budget) {
  std::size_t total = 1;
  std::size_t layer = 1;
  for (std::size_t i = 1; i <= max_len; ++i) {
    if (letters != 0 && layer > budget.max_words / letters) {
      total = budget.max_words + 1;
      break;
    }
    layer *= letters;
    total += layer;
    if (total > budget.max_words) {
      break;
    }
  }
  if (total > budget.max_words) {
    throw Error(ErrorKind::budget_exceeded,
                "enumerating words up to length " + std::to_string(max_len) + " over " +
                    std::to_string(letters) + " letters exceeds " +
                    std::to_string(budget.max_words) + " words");
  }
}

// Some word of L(a) longer than max_len has v as a subsequence (or prefix).
// Searches configurations (state, letters of v matched, length capped at
// max_len + 1).
bool extends_beyond(const Automaton& a, const Word& v, TowerRelation relation,
                    std::size_t max_len) {
  const std::size_t cap = max_len + 1;
  const std::size_t m = v.size() + 1;
  auto id = [&](StateId q, std::size_t matched, std::size_t len) {
    return (std::size_t{q} * m + matched) * (cap + 1) + len;
  };
  std::vector<char> seen(a.state_count() * m * (cap + 1), 0);
  std::vector<std::tuple<StateId, std::size_t, std::size_t>> stack;
  for (StateId q : a.initials()) {
    seen[id(q, 0, 0)] = 1;
    stack.emplace_back(q, 0, 0);
  }
  while (!stack.empty()) {
    const auto [q, matched, len] = stack.back();
    stack.pop_back();
    if (matched == v.size() && len == cap && a.is_final(q)) {
      return true;
    }
    for (Symbol s = 0; s < a.alphabet_size(); ++s) {
      std::size_t next = matched;
      if (matched < v.size() && v[matched] == s) {
        next = matched + 1;
      } else if (relation == TowerRelation::prefix && matched < v.size()) {
        continue;
      }
      const std::size_t l2 = std::min(len + 1, cap);
      for (StateId t : a.successors(q, s)) {
        if (seen[id(t, next, l2)] == 0) {
          seen[id(t, next, l2)] = 1;
          stack.emplace_back(t, next, l2);
        }
      }
    }
  }
  return false;
}

} // namespace

std::string_view to_string(BruteHeight::Kind kind) noexcept {
  return kind == BruteHeight::Kind::finite ? "finite" : "at_least";
}

std::vector<Word> enumerate_language(const Automaton& a, std::size_t max_len,
                                     const Budget& budget) {
  check_enumeration_budget(a.alphabet_size(), max_len, budget);
  std::vector<Word> accepted;
  struct Item {
    Word word;
    std::vector<StateId> states;
  };
  std::vector<Item> layer{{Word{}, std::vector<StateId>(a.initials().begin(), a.initials().end())}};
  std::vector<char> mark(a.state_count(), 0);
  for (std::size_t len = 0;; ++len) {
    for (const Item& item : layer) {
      const bool ok = std::any_of(item.states.begin(), item.states.end(),
                                  [&](StateId q) { return a.is_final(q); });
      if (ok) {
        accepted.push_back(item.word);
      }
    }
    if (len == max_len) {
      break;
    }
    std::vector<Item> next;
    for (const Item& item : layer) {
      for (Symbol s = 0; s < a.alphabet_size(); ++s) {
        Item child{item.word, {}};
        child.word.push_back(s);
        for (StateId q : item.states) {
          for (StateId t : a.successors(q, s)) {
            if (mark[t] == 0) {
              mark[t] = 1;
              child.states.push_back(t);
            }
          }
        }
        for (StateId t : child.states) {
          mark[t] = 0;
        }
        if (!child.states.empty()) {
          next.push_back(std::move(child));
        }
      }
    }
    layer = std::move(next);
  }
  return accepted;
}

BruteHeight brute_max_tower_height(const Automaton& left, const Automaton& right,
                                   TowerRelation relation, std::size_t max_len,
                                   const Budget& budget) {
  require_same_alphabet(left, right);
  const std::vector<Word> words[2] = {enumerate_language(left, max_len, budget),
                                      enumerate_language(right, max_len, budget)};
  const Automaton* langs[2] = {&left, &right};
  const auto related = [relation](const Word& v, const Word& w) {
    return relation == TowerRelation::prefix ? is_prefix(v, w) : is_subsequence(v, w);
  };

  // best[s][i]: tallest tower ending with words[s][i] on side s. Both lists
  // are in shortlex order, so predecessors (strictly shorter, or the same
  // word on the other side) are settled first.
  std::vector<std::size_t> best[2] = {std::vector<std::size_t>(words[0].size(), 1),
                                      std::vector<std::size_t>(words[1].size(), 1)};
  std::map<Word, std::size_t> index[2];
  for (int s = 0; s < 2; ++s) {
    for (std::size_t i = 0; i < words[s].size(); ++i) {
      index[s][words[s][i]] = i;
    }
  }
  bool shared = false;
  std::size_t pos[2] = {0, 0};
  for (std::size_t len = 0; len <= max_len; ++len) {
    std::size_t end[2];
    for (int s = 0; s < 2; ++s) {
      end[s] = pos[s];
      while (end[s] < words[s].size() && words[s][end[s]].size() == len) {
        ++end[s];
      }
    }
    for (int s = 0; s < 2; ++s) {
      const int o = 1 - s;
      for (std::size_t i = pos[s]; i < end[s]; ++i) {
        for (std::size_t j = 0; j < pos[o]; ++j) {
          if (best[o][j] + 1 > best[s][i] && related(words[o][j], words[s][i])) {
            best[s][i] = best[o][j] + 1;
          }
        }
      }
    }
    // A word in both languages may repeat, alternating sides, up to
    // max_len + 1 times.
    for (std::size_t i = pos[0]; i < end[0]; ++i) {
      const auto it = index[1].find(words[0][i]);
      if (it == index[1].end()) {
        continue;
      }
      shared = true;
      const std::size_t j = it->second;
      for (std::size_t rep = 0; rep <= max_len; ++rep) {
        best[0][i] = std::max(best[0][i], best[1][j] + 1);
        best[1][j] = std::max(best[1][j], best[0][i] + 1);
      }
    }
    pos[0] = end[0];
    pos[1] = end[1];
  }

  std::size_t height = 0;
  for (int s = 0; s < 2; ++s) {
    for (std::size_t h : best[s]) {
      height = std::max(height, h);
    }
  }
  bool open = shared;
  std::size_t extended = height;
  for (int s = 0; s < 2; ++s) {
    // Try the tallest candidates first; only a strict improvement matters.
    std::vector<std::size_t> order(words[s].size());
    for (std::size_t i = 0; i < order.size(); ++i) {
      order[i] = i;
    }
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return best[s][x] > best[s][y]; });
    for (std::size_t i : order) {
      if (best[s][i] + 1 <= extended) {
        break;
      }
      if (extends_beyond(*langs[1 - s], words[s][i], relation, max_len)) {
        open = true;
        extended = best[s][i] + 1;
        break;
      }
    }
  }
  return {open ? BruteHeight::Kind::at_least : BruteHeight::Kind::finite, extended};
}

bool reachability(const Digraph& graph, std::size_t s, std::size_t t) {
  validate_digraph(graph);
  if (s >= graph.vertices || t >= graph.vertices) {
    throw Error(ErrorKind::schema, "source or target outside the vertex range");
  }
  std::vector<char> seen(graph.vertices, 0);
  std::deque<std::size_t> queue{s};
  seen[s] = 1;
  while (!queue.empty()) {
    const std::size_t v = queue.front();
    queue.pop_front();
    if (v == t) {
      return true;
    }
    for (std::size_t w : graph.adjacency[v]) {
      if (seen[w] == 0) {
        seen[w] = 1;
        queue.push_back(w);
      }
    }
  }
  return false;
}

} // namespace ptsep
