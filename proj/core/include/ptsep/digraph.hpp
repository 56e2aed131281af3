#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace ptsep {

using AdjacencyList = std::vector<std::vector<std::uint32_t>>;

/// Strongly connected components. Components are numbered in the order
/// Tarjan's algorithm closes them, which is a reverse topological order of
/// the condensation: every edge goes from a component to one with a smaller
/// or equal number.
struct Components {
  std::vector<std::uint32_t> component;
  std::size_t count = 0;
};

Components strongly_connected_components(const AdjacencyList& graph);

/// Vertices reachable from `sources` (sources included).
std::vector<char> reachable_from(const AdjacencyList& graph,
                                 const std::vector<std::uint32_t>& sources);

} // namespace ptsep
