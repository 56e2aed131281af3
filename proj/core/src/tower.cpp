#include "ptsep/tower.hpp"

#include "ptsep/closures.hpp"
#include "ptsep/operations.hpp"

namespace ptsep {

std::string_view to_string(TowerRelation relation) noexcept {
  return relation == TowerRelation::prefix ? "prefix" : "subsequence";
}

std::string_view to_string(Side side) noexcept { return side == Side::left ? "left" : "right"; }

TowerCheck check_tower(const Automaton& left, const Automaton& right, const Tower& tower) {
  require_same_alphabet(left, right);
  const Alphabet& sigma = left.alphabet();
  auto fail = [](std::size_t i, std::string message) {
    return TowerCheck{false, i, "element " + std::to_string(i) + ": " + std::move(message)};
  };
  for (std::size_t i = 0; i < tower.elements.size(); ++i) {
    const TowerElement& e = tower.elements[i];
    for (Symbol s : e.word) {
      if (s >= sigma.size()) {
        return fail(i, "symbol id " + std::to_string(s) + " is outside the alphabet");
      }
    }
    if (i > 0) {
      const TowerElement& prev = tower.elements[i - 1];
      if (prev.side == e.side) {
        return fail(i, "same side as the previous element (" + std::string(to_string(e.side)) +
                           ")");
      }
      const bool related = tower.relation == TowerRelation::prefix
                               ? is_prefix(prev.word, e.word)
                               : is_subsequence(prev.word, e.word);
      if (!related) {
        return fail(i, "previous word '" + format_word(sigma, prev.word) + "' is not a " +
                           std::string(tower.relation == TowerRelation::prefix ? "prefix"
                                                                                : "subsequence") +
                           " of '" + format_word(sigma, e.word) + "'");
      }
    }
    const Automaton& lang = e.side == Side::left ? left : right;
    if (!accepts(lang, e.word)) {
      return fail(i, "word '" + format_word(sigma, e.word) + "' is not in the " +
                         std::string(to_string(e.side)) + " language");
    }
  }
  return {};
}

} // namespace ptsep
