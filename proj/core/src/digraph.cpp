#include "ptsep/digraph.hpp"

#include <algorithm>
#include <limits>

namespace ptsep {

Components strongly_connected_components(const AdjacencyList& graph) {
  constexpr std::uint32_t unset = std::numeric_limits<std::uint32_t>::max();
  const std::size_t n = graph.size();
  Components result;
  result.component.assign(n, unset);
  std::vector<std::uint32_t> index(n, unset);
  std::vector<std::uint32_t> low(n, 0);
  std::vector<char> on_stack(n, 0);
  std::vector<std::uint32_t> stack;
  // Explicit call stack of (vertex, next edge position).
  std::vector<std::pair<std::uint32_t, std::size_t>> frames;
  std::uint32_t counter = 0;

  for (std::uint32_t root = 0; root < n; ++root) {
    if (index[root] != unset) {
      continue;
    }
    frames.emplace_back(root, 0);
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = 1;
    while (!frames.empty()) {
      auto& [v, pos] = frames.back();
      if (pos < graph[v].size()) {
        const std::uint32_t w = graph[v][pos++];
        if (index[w] == unset) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = 1;
          frames.emplace_back(w, 0);
        } else if (on_stack[w] != 0) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      const std::uint32_t done = v;
      frames.pop_back();
      if (!frames.empty()) {
        const std::uint32_t parent = frames.back().first;
        low[parent] = std::min(low[parent], low[done]);
      }
      if (low[done] == index[done]) {
        const auto id = static_cast<std::uint32_t>(result.count++);
        std::uint32_t w = 0;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = 0;
          result.component[w] = id;
        } while (w != done);
      }
    }
  }
  return result;
}

std::vector<char> reachable_from(const AdjacencyList& graph,
                                 const std::vector<std::uint32_t>& sources) {
  std::vector<char> seen(graph.size(), 0);
  std::vector<std::uint32_t> stack;
  for (std::uint32_t s : sources) {
    if (seen[s] == 0) {
      seen[s] = 1;
      stack.push_back(s);
    }
  }
  while (!stack.empty()) {
    const std::uint32_t v = stack.back();
    stack.pop_back();
    for (std::uint32_t w : graph[v]) {
      if (seen[w] == 0) {
        seen[w] = 1;
        stack.push_back(w);
      }
    }
  }
  return seen;
}

} // namespace ptsep
