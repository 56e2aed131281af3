#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ptsep {

enum class ErrorKind {
  invalid_automaton,
  invalid_word,
  alphabet_mismatch,
  not_deterministic,
  not_minimal,
  budget_exceeded,
  schema,
  precondition,
  overflow,
  io,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Every failure raised by the library. The kind lets callers (the CLI in
/// particular) map failures to exit codes without parsing messages.
class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

private:
  ErrorKind kind_;
};

} // namespace ptsep
