#pragma once

#include <cstddef>

namespace ptsep {

/// Caps for the worst-case exponential procedures. Exceeding a cap raises
/// Error(budget_exceeded); nothing is ever silently truncated.
struct Budget {
  /// Maximum number of materialized subsets in one subset construction.
  std::size_t max_subsets = std::size_t{1} << 21;
  /// Maximum number of candidate words visited by an enumeration.
  std::size_t max_words = std::size_t{1} << 22;

  /// Defaults, lowered by the PTSEP_BUDGET environment variable when set.
  static Budget from_environment();
};

/// Process-wide default, read from the environment on first use.
const Budget& default_budget();

} // namespace ptsep
