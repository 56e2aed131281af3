#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "ptsep/automaton.hpp"

namespace ptsep {

enum class TowerRelation { subsequence, prefix };
enum class Side { left, right };

std::string_view to_string(TowerRelation relation) noexcept;
std::string_view to_string(Side side) noexcept;
constexpr Side opposite(Side side) noexcept { return side == Side::left ? Side::right : Side::left; }

struct TowerElement {
  Word word;
  Side side;

  bool operator==(const TowerElement&) const = default;
};

/// Words alternating between a left and a right language, each related to
/// the next by the declared relation. The height is the number of elements.
struct Tower {
  TowerRelation relation = TowerRelation::subsequence;
  std::vector<TowerElement> elements;

  std::size_t height() const noexcept { return elements.size(); }
  bool operator==(const Tower&) const = default;
};

struct TowerCheck {
  bool ok = true;
  /// Index of the first offending element (meaningless when ok).
  std::size_t index = 0;
  std::string diagnostic;
};

/// Checks alternation, the relation between consecutive words, and that each
/// word belongs to its side's language; reports the first failure.
TowerCheck check_tower(const Automaton& left, const Automaton& right, const Tower& tower);

inline bool verify_tower(const Automaton& left, const Automaton& right, const Tower& tower) {
  return check_tower(left, right, tower).ok;
}

} // namespace ptsep
