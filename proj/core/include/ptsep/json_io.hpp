#pragma once

#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "ptsep/automaton.hpp"
#include "ptsep/constructions.hpp"
#include "ptsep/tower.hpp"

namespace ptsep {

using Json = nlohmann::ordered_json;

/// {"alphabet": [...], "states": n, "initials": [...], "finals": [...],
///  "deterministic": bool, "transitions": [[src, "sym", tgt], ...]}
Json automaton_to_json(const Automaton& a);
/// Throws Error(schema) naming the offending JSON pointer, e.g.
/// "/transitions/3/2: state 7 out of range".
Automaton automaton_from_json(const Json& j);

/// {"relation": "prefix", "elements": [{"word": ["b","a1"], "side": "left"}, ...]}
Json tower_to_json(const Tower& tower, const Alphabet& alphabet);
Tower tower_from_json(const Json& j, const Alphabet& alphabet);

/// {"gates": [{"kind": "ZERO"}, {"kind": "AND", "left": 1, "right": 2}, ...]}
Json circuit_to_json(const Circuit& circuit);
Circuit circuit_from_json(const Json& j);

struct GraphInstance {
  Digraph graph;
  std::size_t source = 0;
  std::size_t target = 0;
};

/// {"vertices": n, "adjacency": [[...], ...], "source": s, "target": t}
Json graph_to_json(const GraphInstance& g);
GraphInstance graph_from_json(const Json& j);

/// Parses a file; syntax errors become Error(schema) with line and column,
/// unreadable files Error(io).
Json read_json_file(const std::filesystem::path& path);
/// Pretty-printed with a trailing newline; throws Error(io) on failure.
void write_json_file(const std::filesystem::path& path, const Json& j);
/// Parses text; syntax errors are reported with line and column.
Json parse_json(const std::string& text, const std::string& origin = "<input>");

} // namespace ptsep
