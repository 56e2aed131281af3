#pragma once

// Internal helpers shared by the closure determinizations and the separator.

#include <cstddef>
#include <vector>

#include "ptsep/automaton.hpp"

namespace ptsep::detail {

struct SubsetHash {
  std::size_t operator()(const std::vector<StateId>& v) const noexcept {
    std::size_t h = 0xcbf29ce484222325ULL;
    for (StateId q : v) {
      h ^= q + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
  }
};

// n×n relation; covered(q, p) means q's residual is contained in p's.
class Cover {
public:
  Cover() = default;
  Cover(std::size_t n, char value) : n_(n), bits_(n * n, value) {}
  bool operator()(StateId q, StateId p) const { return bits_[std::size_t{q} * n_ + p] != 0; }
  void set(StateId q, StateId p, bool v) { bits_[std::size_t{q} * n_ + p] = v ? 1 : 0; }

private:
  std::size_t n_ = 0;
  std::vector<char> bits_;
};

// Keeps the elements of `set` not covered by another element; among
// mutually covering states the smallest id stays.
void prune(std::vector<StateId>& set, const Cover& covered);

// Deterministic view of up(L(a)): a state is an antichain of states of a
// reduced copy of `a`, pruned under an upward simulation.
class UpwardSubsets {
public:
  explicit UpwardSubsets(const Automaton& a);

  const Automaton& automaton() const noexcept { return t_; }
  const Cover& cover() const noexcept { return covered_; }
  std::vector<StateId> initial() const;
  // to = prune(from ∪ δ(from, s)), sorted.
  void step(const std::vector<StateId>& from, Symbol s, std::vector<StateId>& to) const;
  bool accepting(const std::vector<StateId>& set) const;

private:
  Automaton t_;
  Cover covered_;
};

} // namespace ptsep::detail
