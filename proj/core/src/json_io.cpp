#include "ptsep/json_io.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "ptsep/error.hpp"

namespace ptsep {

namespace {

[[noreturn]] void schema_error(const std::string& pointer, const std::string& message) {
  throw Error(ErrorKind::schema, (pointer.empty() ? "/" : pointer) + ": " + message);
}

const Json& member(const Json& j, const std::string& pointer, const char* key) {
  if (!j.is_object()) {
    schema_error(pointer, "expected an object");
  }
  const auto it = j.find(key);
  if (it == j.end()) {
    schema_error(pointer, std::string("missing field \"") + key + "\"");
  }
  return *it;
}

std::size_t natural(const Json& j, const std::string& pointer) {
  if (!j.is_number_integer() || j.get<long long>() < 0) {
    schema_error(pointer, "expected a non-negative integer");
  }
  return j.get<std::size_t>();
}

const Json& array(const Json& j, const std::string& pointer) {
  if (!j.is_array()) {
    schema_error(pointer, "expected an array");
  }
  return j;
}

std::string string_value(const Json& j, const std::string& pointer) {
  if (!j.is_string()) {
    schema_error(pointer, "expected a string");
  }
  return j.get<std::string>();
}

StateId state_id(const Json& j, const std::string& pointer, std::size_t states) {
  const std::size_t q = natural(j, pointer);
  if (q >= states) {
    schema_error(pointer, "state " + std::to_string(q) + " out of range (states = " +
                              std::to_string(states) + ")");
  }
  return static_cast<StateId>(q);
}

Word word_from_json(const Json& j, const std::string& pointer, const Alphabet& alphabet) {
  Word w;
  const Json& arr = array(j, pointer);
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string p = pointer + "/" + std::to_string(i);
    const std::string name = string_value(arr[i], p);
    const auto it = std::find(alphabet.begin(), alphabet.end(), name);
    if (it == alphabet.end()) {
      schema_error(p, "unknown symbol \"" + name + "\"");
    }
    w.push_back(static_cast<Symbol>(it - alphabet.begin()));
  }
  return w;
}

const char* gate_name(GateKind kind) {
  switch (kind) {
  case GateKind::zero:
    return "ZERO";
  case GateKind::one:
    return "ONE";
  case GateKind::conj:
    return "AND";
  case GateKind::disj:
    return "OR";
  }
  return "?";
}

} // namespace

Json automaton_to_json(const Automaton& a) {
  Json transitions = Json::array();
  for (const Transition& t : a.transitions()) {
    transitions.push_back(Json::array({t.source, a.alphabet()[t.symbol], t.target}));
  }
  return Json{{"alphabet", a.alphabet()},
              {"states", a.state_count()},
              {"initials", std::vector<StateId>(a.initials().begin(), a.initials().end())},
              {"finals", std::vector<StateId>(a.finals().begin(), a.finals().end())},
              {"deterministic", a.deterministic()},
              {"transitions", std::move(transitions)}};
}

Automaton automaton_from_json(const Json& j) {
  const Json& sigma = array(member(j, "", "alphabet"), "/alphabet");
  Alphabet alphabet;
  std::set<std::string> names;
  for (std::size_t i = 0; i < sigma.size(); ++i) {
    const std::string p = "/alphabet/" + std::to_string(i);
    std::string name = string_value(sigma[i], p);
    if (name.empty()) {
      schema_error(p, "empty symbol name");
    }
    if (!names.insert(name).second) {
      schema_error(p, "duplicate symbol \"" + name + "\"");
    }
    alphabet.push_back(std::move(name));
  }
  if (alphabet.empty()) {
    schema_error("/alphabet", "alphabet is empty");
  }
  const std::size_t states = natural(member(j, "", "states"), "/states");
  std::vector<StateId> initials;
  const Json& init = array(member(j, "", "initials"), "/initials");
  for (std::size_t i = 0; i < init.size(); ++i) {
    initials.push_back(state_id(init[i], "/initials/" + std::to_string(i), states));
  }
  std::vector<StateId> finals;
  const Json& fin = array(member(j, "", "finals"), "/finals");
  for (std::size_t i = 0; i < fin.size(); ++i) {
    finals.push_back(state_id(fin[i], "/finals/" + std::to_string(i), states));
  }
  bool deterministic = false;
  if (const auto it = j.find("deterministic"); it != j.end()) {
    if (!it->is_boolean()) {
      schema_error("/deterministic", "expected a boolean");
    }
    deterministic = it->get<bool>();
  }
  std::vector<Transition> transitions;
  const Json& trs = array(member(j, "", "transitions"), "/transitions");
  for (std::size_t i = 0; i < trs.size(); ++i) {
    const std::string p = "/transitions/" + std::to_string(i);
    const Json& t = array(trs[i], p);
    if (t.size() != 3) {
      schema_error(p, "expected [source, symbol, target]");
    }
    const StateId src = state_id(t[0], p + "/0", states);
    const std::string name = string_value(t[1], p + "/1");
    const auto it = std::find(alphabet.begin(), alphabet.end(), name);
    if (it == alphabet.end()) {
      schema_error(p + "/1", "unknown symbol \"" + name + "\"");
    }
    const StateId tgt = state_id(t[2], p + "/2", states);
    transitions.push_back({src, static_cast<Symbol>(it - alphabet.begin()), tgt});
  }
  try {
    return Automaton(std::move(alphabet), states, std::move(initials), std::move(finals),
                     std::move(transitions), deterministic);
  } catch (const Error& e) {
    schema_error("", e.what());
  }
}

Json tower_to_json(const Tower& tower, const Alphabet& alphabet) {
  Json elements = Json::array();
  for (const TowerElement& e : tower.elements) {
    elements.push_back(
        Json{{"word", word_names(alphabet, e.word)}, {"side", std::string(to_string(e.side))}});
  }
  return Json{{"relation", std::string(to_string(tower.relation))},
              {"elements", std::move(elements)}};
}

Tower tower_from_json(const Json& j, const Alphabet& alphabet) {
  Tower tower;
  const std::string relation = string_value(member(j, "", "relation"), "/relation");
  if (relation == "prefix") {
    tower.relation = TowerRelation::prefix;
  } else if (relation == "subsequence") {
    tower.relation = TowerRelation::subsequence;
  } else {
    schema_error("/relation", "expected \"prefix\" or \"subsequence\"");
  }
  const Json& elements = array(member(j, "", "elements"), "/elements");
  for (std::size_t i = 0; i < elements.size(); ++i) {
    const std::string p = "/elements/" + std::to_string(i);
    const Word w = word_from_json(member(elements[i], p, "word"), p + "/word", alphabet);
    const std::string side = string_value(member(elements[i], p, "side"), p + "/side");
    if (side != "left" && side != "right") {
      schema_error(p + "/side", "expected \"left\" or \"right\"");
    }
    tower.elements.push_back({w, side == "left" ? Side::left : Side::right});
  }
  return tower;
}

Json circuit_to_json(const Circuit& circuit) {
  Json gates = Json::array();
  for (const Gate& g : circuit.gates) {
    Json entry{{"kind", gate_name(g.kind)}};
    if (g.kind == GateKind::conj || g.kind == GateKind::disj) {
      entry["left"] = g.left;
      entry["right"] = g.right;
    }
    gates.push_back(std::move(entry));
  }
  return Json{{"gates", std::move(gates)}};
}

Circuit circuit_from_json(const Json& j) {
  Circuit circuit;
  const Json& gates = array(member(j, "", "gates"), "/gates");
  for (std::size_t i = 0; i < gates.size(); ++i) {
    const std::string p = "/gates/" + std::to_string(i);
    const std::string kind = string_value(member(gates[i], p, "kind"), p + "/kind");
    Gate g;
    if (kind == "ZERO") {
      g.kind = GateKind::zero;
    } else if (kind == "ONE") {
      g.kind = GateKind::one;
    } else if (kind == "AND" || kind == "OR") {
      g.kind = kind == "AND" ? GateKind::conj : GateKind::disj;
      g.left = natural(member(gates[i], p, "left"), p + "/left");
      g.right = natural(member(gates[i], p, "right"), p + "/right");
      for (const auto& [operand, field] : {std::pair{g.left, "/left"}, {g.right, "/right"}}) {
        if (operand < 1 || operand > i) {
          schema_error(p + field, "operand must reference an earlier gate (1-based)");
        }
      }
    } else {
      schema_error(p + "/kind", "expected ZERO, ONE, AND or OR");
    }
    circuit.gates.push_back(g);
  }
  if (circuit.gates.empty()) {
    schema_error("/gates", "circuit has no gates");
  }
  return circuit;
}

Json graph_to_json(const GraphInstance& g) {
  return Json{{"vertices", g.graph.vertices},
              {"adjacency", g.graph.adjacency},
              {"source", g.source},
              {"target", g.target}};
}

GraphInstance graph_from_json(const Json& j) {
  GraphInstance g;
  g.graph.vertices = natural(member(j, "", "vertices"), "/vertices");
  const Json& adj = array(member(j, "", "adjacency"), "/adjacency");
  if (adj.size() != g.graph.vertices) {
    schema_error("/adjacency", "expected " + std::to_string(g.graph.vertices) + " rows");
  }
  for (std::size_t v = 0; v < adj.size(); ++v) {
    const std::string p = "/adjacency/" + std::to_string(v);
    std::vector<std::size_t> row;
    const Json& r = array(adj[v], p);
    for (std::size_t i = 0; i < r.size(); ++i) {
      const std::string pi = p + "/" + std::to_string(i);
      const std::size_t w = natural(r[i], pi);
      if (w >= g.graph.vertices) {
        schema_error(pi, "vertex " + std::to_string(w) + " out of range");
      }
      row.push_back(w);
    }
    g.graph.adjacency.push_back(std::move(row));
  }
  g.source = natural(member(j, "", "source"), "/source");
  g.target = natural(member(j, "", "target"), "/target");
  if (g.source >= g.graph.vertices) {
    schema_error("/source", "vertex out of range");
  }
  if (g.target >= g.graph.vertices) {
    schema_error("/target", "vertex out of range");
  }
  return g;
}

Json parse_json(const std::string& text, const std::string& origin) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    std::size_t line = 1;
    std::size_t column = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw Error(ErrorKind::schema, origin + ":" + std::to_string(line) + ":" +
                                       std::to_string(column) + ": invalid JSON");
  }
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorKind::io, "cannot read " + path.string());
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_json(buffer.str(), path.string());
}

void write_json_file(const std::filesystem::path& path, const Json& j) {
  std::ofstream out(path);
  if (!out) {
    throw Error(ErrorKind::io, "cannot write " + path.string());
  }
  out << j.dump(2) << '\n';
  if (!out) {
    throw Error(ErrorKind::io, "failed writing " + path.string());
  }
}

} // namespace ptsep
