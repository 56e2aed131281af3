#include <algorithm>
#include <map>
#include <set>

#include "ptsep/closures.hpp"
#include "ptsep/constructions.hpp"
#include "ptsep/error.hpp"
#include "ptsep/operations.hpp"

namespace ptsep {

namespace {

// Name of the fresh letter guarding a transition into state t of one side.
std::string fresh_letter(DeterminizationVariant variant, const std::string& letter, char side,
                         StateId t) {
  const std::string suffix = std::string(1, side) + std::to_string(t);
  return variant == DeterminizationVariant::per_state ? "y'" + suffix : letter + "'" + suffix;
}

// Keys of the σ states: (s, t) for per_state, (a, t) for per_letter.
std::set<std::pair<std::uint32_t, StateId>> sigma_keys(const Automaton& a,
                                                      DeterminizationVariant variant) {
  std::set<std::pair<std::uint32_t, StateId>> keys;
  for (const Transition& tr : a.transitions()) {
    keys.insert({variant == DeterminizationVariant::per_state ? tr.source : tr.symbol, tr.target});
  }
  return keys;
}

void add_fresh_letters(Alphabet& sigma, const Automaton& a, DeterminizationVariant variant,
                       char side) {
  std::set<std::pair<StateId, Symbol>> used;
  for (const Transition& tr : a.transitions()) {
    used.insert({tr.target, variant == DeterminizationVariant::per_state ? 0 : tr.symbol});
  }
  for (const auto& [t, s] : used) {
    const std::string name = fresh_letter(variant, a.alphabet()[s], side, t);
    if (std::find(sigma.begin(), sigma.end(), name) != sigma.end()) {
      throw Error(ErrorKind::precondition, "fresh letter '" + name + "' clashes with the input");
    }
    sigma.push_back(name);
  }
}

Automaton split_transitions(const Automaton& a, const Alphabet& sigma,
                            DeterminizationVariant variant, char side) {
  const auto keys = sigma_keys(a, variant);
  std::map<std::pair<std::uint32_t, StateId>, StateId> sigma_state;
  auto next = static_cast<StateId>(a.state_count());
  for (const auto& key : keys) {
    sigma_state[key] = next++;
  }
  const auto original = static_cast<Symbol>(a.alphabet_size());
  AutomatonBuilder out(sigma, next);
  out.set_initial(a.initials().front());
  for (StateId q : a.finals()) {
    out.set_final(q);
  }
  for (const Transition& tr : a.transitions()) {
    const StateId mid = sigma_state.at(
        {variant == DeterminizationVariant::per_state ? tr.source : tr.symbol, tr.target});
    out.add_transition(tr.source, fresh_letter(variant, a.alphabet()[tr.symbol], side, tr.target),
                       mid);
    out.add_transition(mid, tr.symbol, tr.target);
  }
  for (const auto& [key, mid] : sigma_state) {
    for (Symbol s = original; s < sigma.size(); ++s) {
      out.add_transition(mid, s, mid);
    }
  }
  return out.build(true);
}

char side_tag(Side side) { return side == Side::left ? 'A' : 'B'; }

} // namespace

DeterminizedPair tower_preserving_determinization(const Automaton& left, const Automaton& right,
                                                  DeterminizationVariant variant) {
  require_same_alphabet(left, right);
  DeterminizedPair pair;
  pair.variant = variant;
  pair.left_source = with_single_initial(left);
  pair.right_source = with_single_initial(right);
  Alphabet sigma = left.alphabet();
  add_fresh_letters(sigma, pair.left_source, variant, 'A');
  add_fresh_letters(sigma, pair.right_source, variant, 'B');
  pair.left = split_transitions(pair.left_source, sigma, variant, 'A');
  pair.right = split_transitions(pair.right_source, sigma, variant, 'B');
  return pair;
}

Tower transform_tower(const Tower& tower, const DeterminizedPair& pair) {
  std::vector<std::vector<StateId>> paths;
  for (const TowerElement& e : tower.elements) {
    const Automaton& src = e.side == Side::left ? pair.left_source : pair.right_source;
    auto path = accepting_path(src, e.word);
    if (!path) {
      throw Error(ErrorKind::precondition, "tower word '" + format_word(src.alphabet(), e.word) +
                                               "' is rejected by its automaton");
    }
    paths.push_back(std::move(*path));
  }
  return transform_tower(tower, pair, paths);
}

Tower transform_tower(const Tower& tower, const DeterminizedPair& pair,
                      const std::vector<std::vector<StateId>>& paths) {
  const TowerCheck check = check_tower(pair.left_source, pair.right_source, tower);
  if (!check.ok) {
    throw Error(ErrorKind::precondition, "not a tower of the source automata: " + check.diagnostic);
  }
  const std::size_t r = tower.height();
  if (paths.size() != r) {
    throw Error(ErrorKind::precondition, "expected one accepting path per tower element");
  }
  Tower out{TowerRelation::subsequence, {}};
  if (r == 0) {
    return out;
  }
  // position[i][k]: position in w_r of the k-th letter of w_i, through the
  // composition of greedy embeddings.
  const Word& top = tower.elements.back().word;
  std::vector<std::vector<std::size_t>> position(r);
  for (std::size_t k = 0; k < top.size(); ++k) {
    position[r - 1].push_back(k);
  }
  for (std::size_t i = r - 1; i-- > 0;) {
    const Word& w = tower.elements[i].word;
    const Word& up = tower.elements[i + 1].word;
    std::size_t j = 0;
    for (Symbol s : w) {
      while (up[j] != s) {
        ++j;
      }
      position[i].push_back(position[i + 1][j++]);
    }
  }

  // fresh[i][j]: the guard letter p_{i,j}, or nothing when x_{i,j} = ε.
  constexpr Symbol none = ~Symbol{0};
  std::vector<std::vector<Symbol>> fresh(r, std::vector<Symbol>(top.size(), none));
  for (std::size_t i = 0; i < r; ++i) {
    const TowerElement& e = tower.elements[i];
    const Automaton& src = e.side == Side::left ? pair.left_source : pair.right_source;
    const Automaton& dst = e.side == Side::left ? pair.left : pair.right;
    const std::vector<StateId>& path = paths[i];
    const bool consistent = path.size() == e.word.size() + 1 && src.is_initial(path.front()) &&
                            src.is_final(path.back());
    if (!consistent) {
      throw Error(ErrorKind::precondition, "path " + std::to_string(i) +
                                               " is not an accepting path of its word");
    }
    for (std::size_t k = 0; k < e.word.size(); ++k) {
      const auto succ = src.successors(path[k], e.word[k]);
      if (std::find(succ.begin(), succ.end(), path[k + 1]) == succ.end()) {
        throw Error(ErrorKind::precondition, "path " + std::to_string(i) + " uses a missing transition at position " + std::to_string(k));
      }
      fresh[i][position[i][k]] = dst.symbol(
          fresh_letter(pair.variant, src.alphabet()[e.word[k]], side_tag(e.side), path[k + 1]));
    }
  }
  for (std::size_t i = 0; i < r; ++i) {
    Word w;
    for (std::size_t j = 0; j < top.size(); ++j) {
      if (fresh[i][j] == none) {
        continue;
      }
      for (std::size_t h = i + 1; h-- > 0;) {
        if (fresh[h][j] != none) {
          w.push_back(fresh[h][j]);
        }
      }
      w.push_back(top[j]);
    }
    out.elements.push_back({std::move(w), tower.elements[i].side});
  }
  return out;
}

} // namespace ptsep
