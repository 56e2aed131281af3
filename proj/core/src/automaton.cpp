#include "ptsep/automaton.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <set>
#include <sstream>

#include "ptsep/budget.hpp"
#include "ptsep/error.hpp"

namespace ptsep {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
  case ErrorKind::invalid_automaton: return "invalid-automaton";
  case ErrorKind::invalid_word: return "invalid-word";
  case ErrorKind::alphabet_mismatch: return "alphabet-mismatch";
  case ErrorKind::not_deterministic: return "not-deterministic";
  case ErrorKind::not_minimal: return "not-minimal";
  case ErrorKind::budget_exceeded: return "budget-exceeded";
  case ErrorKind::schema: return "schema";
  case ErrorKind::precondition: return "precondition";
  case ErrorKind::overflow: return "overflow";
  case ErrorKind::io: return "io";
  }
  return "unknown";
}

Budget Budget::from_environment() {
  Budget budget;
  if (const char* raw = std::getenv("PTSEP_BUDGET"); raw != nullptr && *raw != '\0') {
    char* end = nullptr;
    const unsigned long long value = std::strtoull(raw, &end, 10);
    if (end != nullptr && *end == '\0' && value > 0) {
      budget.max_subsets = static_cast<std::size_t>(value);
      budget.max_words = static_cast<std::size_t>(value);
    }
  }
  return budget;
}

const Budget& default_budget() {
  static const Budget budget = Budget::from_environment();
  return budget;
}

namespace {

std::vector<StateId> sorted_unique(std::vector<StateId> ids) {
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  return ids;
}

[[noreturn]] void invalid(const std::string& message) {
  throw Error(ErrorKind::invalid_automaton, message);
}

} // namespace

Automaton::Automaton(Alphabet alphabet, std::size_t state_count, std::vector<StateId> initials,
                     std::vector<StateId> finals, std::vector<Transition> transitions,
                     bool deterministic)
    : alphabet_(std::move(alphabet)), state_count_(state_count),
      initials_(sorted_unique(std::move(initials))), finals_(sorted_unique(std::move(finals))),
      deterministic_(deterministic) {
  if (alphabet_.empty()) {
    invalid("alphabet must not be empty");
  }
  std::set<std::string_view> seen;
  for (std::size_t i = 0; i < alphabet_.size(); ++i) {
    if (alphabet_[i].empty()) {
      invalid("alphabet[" + std::to_string(i) + "]: empty symbol name");
    }
    if (!seen.insert(alphabet_[i]).second) {
      invalid("alphabet[" + std::to_string(i) + "]: duplicate symbol '" + alphabet_[i] + "'");
    }
  }
  for (StateId q : initials_) {
    if (q >= state_count_) {
      invalid("initial state " + std::to_string(q) + " out of range");
    }
  }
  final_flags_.assign(state_count_, 0);
  for (StateId q : finals_) {
    if (q >= state_count_) {
      invalid("final state " + std::to_string(q) + " out of range");
    }
    final_flags_[q] = 1;
  }
  std::sort(transitions.begin(), transitions.end());
  transitions.erase(std::unique(transitions.begin(), transitions.end()), transitions.end());
  const std::size_t rows = state_count_ * alphabet_.size();
  offsets_.assign(rows + 1, 0);
  for (const Transition& t : transitions) {
    if (t.source >= state_count_ || t.target >= state_count_) {
      invalid("transition (" + std::to_string(t.source) + ", " + std::to_string(t.symbol) + ", " +
              std::to_string(t.target) + ") references a state out of range");
    }
    if (t.symbol >= alphabet_.size()) {
      invalid("transition symbol id " + std::to_string(t.symbol) + " out of range");
    }
    ++offsets_[row(t.source, t.symbol) + 1];
  }
  for (std::size_t r = 0; r < rows; ++r) {
    offsets_[r + 1] += offsets_[r];
  }
  targets_.reserve(transitions.size());
  for (const Transition& t : transitions) {
    targets_.push_back(t.target);
  }
  if (deterministic_ && !is_structurally_deterministic()) {
    invalid("automaton is flagged deterministic but has " +
            std::to_string(initials_.size()) +
            " initial states or a (state, symbol) pair with several targets");
  }
}

bool Automaton::is_initial(StateId q) const {
  return std::binary_search(initials_.begin(), initials_.end(), q);
}

std::span<const StateId> Automaton::successors(StateId q, Symbol a) const {
  const std::size_t r = row(q, a);
  return {targets_.data() + offsets_[r], targets_.data() + offsets_[r + 1]};
}

std::vector<Transition> Automaton::transitions() const {
  std::vector<Transition> out;
  out.reserve(targets_.size());
  for (StateId q = 0; q < state_count_; ++q) {
    for (Symbol a = 0; a < alphabet_.size(); ++a) {
      for (StateId t : successors(q, a)) {
        out.push_back({q, a, t});
      }
    }
  }
  return out;
}

bool Automaton::is_structurally_deterministic() const {
  if (initials_.size() != 1) {
    return false;
  }
  for (std::size_t r = 0; r + 1 < offsets_.size(); ++r) {
    if (offsets_[r + 1] - offsets_[r] > 1) {
      return false;
    }
  }
  return true;
}

bool Automaton::is_complete() const {
  for (std::size_t r = 0; r + 1 < offsets_.size(); ++r) {
    if (offsets_[r + 1] == offsets_[r]) {
      return false;
    }
  }
  return true;
}

std::optional<Symbol> Automaton::symbol_id(std::string_view name) const {
  for (Symbol a = 0; a < alphabet_.size(); ++a) {
    if (alphabet_[a] == name) {
      return a;
    }
  }
  return std::nullopt;
}

Symbol Automaton::symbol(std::string_view name) const {
  if (auto id = symbol_id(name)) {
    return *id;
  }
  throw Error(ErrorKind::invalid_word, "unknown symbol '" + std::string(name) + "'");
}

AutomatonBuilder::AutomatonBuilder(Alphabet alphabet, std::size_t state_count)
    : alphabet_(std::move(alphabet)), state_count_(state_count) {}

StateId AutomatonBuilder::add_state() { return static_cast<StateId>(state_count_++); }

StateId AutomatonBuilder::add_states(std::size_t count) {
  const auto first = static_cast<StateId>(state_count_);
  state_count_ += count;
  return first;
}

AutomatonBuilder& AutomatonBuilder::add_transition(StateId source, Symbol symbol, StateId target) {
  transitions_.push_back({source, symbol, target});
  return *this;
}

AutomatonBuilder& AutomatonBuilder::add_transition(StateId source, std::string_view symbol,
                                                   StateId target) {
  const auto it = std::find(alphabet_.begin(), alphabet_.end(), symbol);
  if (it == alphabet_.end()) {
    throw Error(ErrorKind::invalid_word, "unknown symbol '" + std::string(symbol) + "'");
  }
  return add_transition(source, static_cast<Symbol>(it - alphabet_.begin()), target);
}

AutomatonBuilder& AutomatonBuilder::set_initial(StateId q) {
  initials_.push_back(q);
  return *this;
}

AutomatonBuilder& AutomatonBuilder::set_final(StateId q) {
  finals_.push_back(q);
  return *this;
}

Automaton AutomatonBuilder::build(bool deterministic) const {
  return Automaton(alphabet_, state_count_, initials_, finals_, transitions_, deterministic);
}

Word make_word(const Alphabet& alphabet, std::span<const std::string> names) {
  Word w;
  w.reserve(names.size());
  for (const std::string& name : names) {
    const auto it = std::find(alphabet.begin(), alphabet.end(), name);
    if (it == alphabet.end()) {
      throw Error(ErrorKind::invalid_word, "unknown symbol '" + name + "'");
    }
    w.push_back(static_cast<Symbol>(it - alphabet.begin()));
  }
  return w;
}

Word make_word(const Alphabet& alphabet, std::initializer_list<std::string_view> names) {
  std::vector<std::string> owned(names.begin(), names.end());
  return make_word(alphabet, std::span<const std::string>(owned));
}

std::vector<std::string> word_names(const Alphabet& alphabet, const Word& word) {
  std::vector<std::string> names;
  names.reserve(word.size());
  for (Symbol a : word) {
    if (a >= alphabet.size()) {
      throw Error(ErrorKind::invalid_word, "symbol id " + std::to_string(a) + " out of range");
    }
    names.push_back(alphabet[a]);
  }
  return names;
}

std::string format_word(const Alphabet& alphabet, const Word& word) {
  if (word.empty()) {
    return "ε";
  }
  std::ostringstream out;
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (i > 0) {
      out << ' ';
    }
    out << (word[i] < alphabet.size() ? alphabet[word[i]] : "?" + std::to_string(word[i]));
  }
  return out.str();
}

void check_word(const Automaton& a, const Word& w) {
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] >= a.alphabet_size()) {
      throw Error(ErrorKind::invalid_word, "word position " + std::to_string(i) + ": symbol id " +
                                               std::to_string(w[i]) + " is not in the alphabet");
    }
  }
}

bool accepts(const Automaton& a, const Word& w) {
  check_word(a, w);
  std::vector<char> current(a.state_count(), 0);
  for (StateId q : a.initials()) {
    current[q] = 1;
  }
  std::vector<char> next(a.state_count(), 0);
  for (Symbol s : w) {
    std::fill(next.begin(), next.end(), 0);
    bool any = false;
    for (StateId q = 0; q < a.state_count(); ++q) {
      if (current[q] == 0) {
        continue;
      }
      for (StateId t : a.successors(q, s)) {
        next[t] = 1;
        any = true;
      }
    }
    if (!any) {
      return false;
    }
    current.swap(next);
  }
  for (StateId q : a.finals()) {
    if (current[q] != 0) {
      return true;
    }
  }
  return false;
}

std::optional<std::vector<StateId>> accepting_path(const Automaton& a, const Word& w) {
  check_word(a, w);
  const std::size_t n = a.state_count();
  // layers[i][q]: q is reachable after reading w[0..i) from an initial state.
  std::vector<std::vector<char>> layers(w.size() + 1, std::vector<char>(n, 0));
  for (StateId q : a.initials()) {
    layers[0][q] = 1;
  }
  for (std::size_t i = 0; i < w.size(); ++i) {
    for (StateId q = 0; q < n; ++q) {
      if (layers[i][q] != 0) {
        for (StateId t : a.successors(q, w[i])) {
          layers[i + 1][t] = 1;
        }
      }
    }
  }
  // co[i][q]: from q, the suffix w[i..) reaches a final state.
  std::vector<std::vector<char>> co(w.size() + 1, std::vector<char>(n, 0));
  for (StateId q : a.finals()) {
    co[w.size()][q] = 1;
  }
  for (std::size_t i = w.size(); i-- > 0;) {
    for (StateId q = 0; q < n; ++q) {
      for (StateId t : a.successors(q, w[i])) {
        if (co[i + 1][t] != 0) {
          co[i][q] = 1;
          break;
        }
      }
    }
  }
  std::vector<StateId> path;
  path.reserve(w.size() + 1);
  std::optional<StateId> current;
  for (StateId q = 0; q < n; ++q) {
    if (layers[0][q] != 0 && co[0][q] != 0) {
      current = q;
      break;
    }
  }
  if (!current) {
    return std::nullopt;
  }
  path.push_back(*current);
  for (std::size_t i = 0; i < w.size(); ++i) {
    std::optional<StateId> next;
    for (StateId t : a.successors(*current, w[i])) {
      if (co[i + 1][t] != 0) {
        next = t;
        break;
      }
    }
    current = next;
    path.push_back(*current);
  }
  return path;
}

std::optional<Word> shortest_word(const Automaton& a) {
  // Breadth-first search processing symbols in index order: the first
  // discovery of a state is along the least shortest word reaching it.
  const std::size_t n = a.state_count();
  std::vector<char> seen(n, 0);
  std::vector<StateId> parent(n, 0);
  std::vector<Symbol> via(n, 0);
  std::vector<char> root(n, 0);
  std::deque<StateId> queue;
  for (StateId q : a.initials()) {
    seen[q] = 1;
    root[q] = 1;
    queue.push_back(q);
    if (a.is_final(q)) {
      return Word{};
    }
  }
  auto rebuild = [&](StateId q) {
    Word w;
    while (root[q] == 0) {
      w.push_back(via[q]);
      q = parent[q];
    }
    std::reverse(w.begin(), w.end());
    return w;
  };
  while (!queue.empty()) {
    const StateId q = queue.front();
    queue.pop_front();
    for (Symbol s = 0; s < a.alphabet_size(); ++s) {
      for (StateId t : a.successors(q, s)) {
        if (seen[t] != 0) {
          continue;
        }
        seen[t] = 1;
        parent[t] = q;
        via[t] = s;
        if (a.is_final(t)) {
          return rebuild(t);
        }
        queue.push_back(t);
      }
    }
  }
  return std::nullopt;
}

Automaton word_automaton(const Alphabet& alphabet, const Word& w) {
  AutomatonBuilder b(alphabet, w.size() + 1);
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] >= alphabet.size()) {
      throw Error(ErrorKind::invalid_word, "symbol id " + std::to_string(w[i]) + " out of range");
    }
    b.add_transition(static_cast<StateId>(i), w[i], static_cast<StateId>(i + 1));
  }
  b.set_initial(0).set_final(static_cast<StateId>(w.size()));
  return b.build(true);
}

Automaton universal_automaton(const Alphabet& alphabet) {
  AutomatonBuilder b(alphabet, 1);
  for (Symbol s = 0; s < alphabet.size(); ++s) {
    b.add_transition(0, s, 0);
  }
  b.set_initial(0).set_final(0);
  return b.build(true);
}

Automaton empty_automaton(const Alphabet& alphabet) {
  AutomatonBuilder b(alphabet, 1);
  b.set_initial(0);
  return b.build(true);
}

} // namespace ptsep
