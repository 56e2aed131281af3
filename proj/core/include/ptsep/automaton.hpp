#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ptsep {

using StateId = std::uint32_t;
using Symbol = std::uint32_t;
using Word = std::vector<Symbol>;
using Alphabet = std::vector<std::string>;

struct Transition {
  StateId source;
  Symbol symbol;
  StateId target;

  auto operator<=>(const Transition&) const = default;
};

/// A finite automaton (Q, Σ, δ, Q₀, F) over a named, ordered alphabet.
///
/// States are 0..state_count()-1 and symbols index into alphabet(). The
/// transition relation is stored in compressed rows keyed by (state, symbol),
/// sorted and free of duplicates, so two automata built from the same data
/// compare equal. Partial transition functions are allowed.
///
/// `deterministic()` is the declared flag; when it is set the constructor
/// checks that there is exactly one initial state and at most one target per
/// (state, symbol). Instances are immutable.
class Automaton {
public:
  Automaton() = default;
  Automaton(Alphabet alphabet, std::size_t state_count, std::vector<StateId> initials,
            std::vector<StateId> finals, std::vector<Transition> transitions,
            bool deterministic = false);

  const Alphabet& alphabet() const noexcept { return alphabet_; }
  std::size_t alphabet_size() const noexcept { return alphabet_.size(); }
  std::size_t state_count() const noexcept { return state_count_; }

  std::span<const StateId> initials() const noexcept { return initials_; }
  std::span<const StateId> finals() const noexcept { return finals_; }
  bool is_initial(StateId q) const;
  bool is_final(StateId q) const { return final_flags_.at(q) != 0; }

  std::span<const StateId> successors(StateId q, Symbol a) const;
  std::size_t transition_count() const noexcept { return targets_.size(); }
  std::vector<Transition> transitions() const;

  bool deterministic() const noexcept { return deterministic_; }
  /// One initial state and at most one successor per (state, symbol).
  bool is_structurally_deterministic() const;
  /// Every (state, symbol) has at least one successor.
  bool is_complete() const;

  std::optional<Symbol> symbol_id(std::string_view name) const;
  /// Symbol id of `name`; throws Error(invalid_word) when it is not a letter.
  Symbol symbol(std::string_view name) const;

  friend bool operator==(const Automaton&, const Automaton&) = default;

private:
  std::size_t row(StateId q, Symbol a) const { return std::size_t{q} * alphabet_.size() + a; }

  Alphabet alphabet_;
  std::size_t state_count_ = 0;
  std::vector<StateId> initials_;
  std::vector<StateId> finals_;
  std::vector<char> final_flags_;
  std::vector<std::uint32_t> offsets_;
  std::vector<StateId> targets_;
  bool deterministic_ = false;
};

/// Incremental construction helper; `build()` validates and freezes.
class AutomatonBuilder {
public:
  explicit AutomatonBuilder(Alphabet alphabet, std::size_t state_count = 0);

  StateId add_state();
  StateId add_states(std::size_t count);
  std::size_t state_count() const noexcept { return state_count_; }
  const Alphabet& alphabet() const noexcept { return alphabet_; }

  AutomatonBuilder& add_transition(StateId source, Symbol symbol, StateId target);
  AutomatonBuilder& add_transition(StateId source, std::string_view symbol, StateId target);
  AutomatonBuilder& set_initial(StateId q);
  AutomatonBuilder& set_final(StateId q);

  Automaton build(bool deterministic = false) const;

private:
  Alphabet alphabet_;
  std::size_t state_count_;
  std::vector<StateId> initials_;
  std::vector<StateId> finals_;
  std::vector<Transition> transitions_;
};

/// Word from symbol names; throws Error(invalid_word) on unknown names.
Word make_word(const Alphabet& alphabet, std::span<const std::string> names);
Word make_word(const Alphabet& alphabet, std::initializer_list<std::string_view> names);
std::vector<std::string> word_names(const Alphabet& alphabet, const Word& word);
/// Space-separated rendering; "ε" for the empty word.
std::string format_word(const Alphabet& alphabet, const Word& word);

/// Throws Error(invalid_word) if some symbol is outside the alphabet.
void check_word(const Automaton& a, const Word& w);

/// State-set simulation.
bool accepts(const Automaton& a, const Word& w);

/// States of some accepting run of `w` (|w|+1 entries), preferring the
/// smallest state id at every position, or nullopt if `w` is rejected.
std::optional<std::vector<StateId>> accepting_path(const Automaton& a, const Word& w);

/// Shortest accepted word, lexicographically least by symbol index among the
/// shortest ones; nullopt for the empty language.
std::optional<Word> shortest_word(const Automaton& a);

/// Automaton accepting exactly {w}.
Automaton word_automaton(const Alphabet& alphabet, const Word& w);
/// Automaton accepting Σ*.
Automaton universal_automaton(const Alphabet& alphabet);
/// Automaton accepting ∅ (a single non-accepting state).
Automaton empty_automaton(const Alphabet& alphabet);

} // namespace ptsep
