#include <gtest/gtest.h>

#include <filesystem>

#include "languages.hpp"
#include "ptsep/constructions.hpp"
#include "ptsep/error.hpp"
#include "ptsep/json_io.hpp"

namespace ptsep {
namespace {

std::string schema_message(const Json& j) {
  try {
    automaton_from_json(j);
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::schema);
    return e.what();
  }
  ADD_FAILURE() << "no error";
  return {};
}

TEST(AutomatonJson, RoundTrip) {
  for (const FamilyInstance& f : {gen_quadratic(4), gen_exp(2), gen_2exp(2), gen_expdfa(3)}) {
    EXPECT_EQ(automaton_from_json(automaton_to_json(f.left)), f.left);
    EXPECT_EQ(automaton_from_json(automaton_to_json(f.right)), f.right);
  }
}

TEST(AutomatonJson, Layout) {
  const Json j = automaton_to_json(testing::a_ba_star());
  EXPECT_EQ(j.dump(), R"({"alphabet":["a","b"],"states":3,"initials":[0],"finals":[1],)"
                      R"("deterministic":true,"transitions":[[0,"a",1],[1,"b",2],[2,"a",1]]})");
}

TEST(AutomatonJson, StateOutOfRange) {
  Json j = automaton_to_json(testing::a_ba_star());
  j["transitions"][2][2] = 7;
  EXPECT_EQ(schema_message(j), "/transitions/2/2: state 7 out of range (states = 3)");
  j = automaton_to_json(testing::a_ba_star());
  j["finals"][0] = 3;
  EXPECT_EQ(schema_message(j), "/finals/0: state 3 out of range (states = 3)");
}

TEST(AutomatonJson, DuplicateLetter) {
  Json j = automaton_to_json(testing::a_ba_star());
  j["alphabet"][1] = "a";
  EXPECT_NE(schema_message(j).find("/alphabet/1"), std::string::npos);
}

TEST(AutomatonJson, UnknownSymbolAndMissingField) {
  Json j = automaton_to_json(testing::a_ba_star());
  j["transitions"][0][1] = "z";
  EXPECT_NE(schema_message(j).find("/transitions/0/1"), std::string::npos);
  j = automaton_to_json(testing::a_ba_star());
  j.erase("states");
  EXPECT_NE(schema_message(j).find("states"), std::string::npos);
}

TEST(AutomatonJson, NondeterministicFlagIsChecked) {
  Json j = automaton_to_json(testing::ends_with({"a", "b"}, "a"));
  j["deterministic"] = true;
  EXPECT_NE(schema_message(j).find("deterministic"), std::string::npos);
}

TEST(Json, SyntaxErrorsCarryPosition) {
  try {
    parse_json("{\n  \"states\": 3,\n  oops\n}", "x.json");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::schema);
    EXPECT_EQ(std::string(e.what()).rfind("x.json:3:", 0), 0u) << e.what();
  }
}

TEST(Json, Files) {
  const auto path = std::filesystem::temp_directory_path() / "ptsep_json_io_test.json";
  write_json_file(path, automaton_to_json(testing::b_ab_star()));
  EXPECT_EQ(automaton_from_json(read_json_file(path)), testing::b_ab_star());
  std::filesystem::remove(path);
  try {
    read_json_file(path);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::io);
  }
}

TEST(TowerJson, RoundTrip) {
  const FamilyInstance f = gen_exp(2);
  const Json j = tower_to_json(*f.tower, f.left.alphabet());
  EXPECT_EQ(j["relation"], "prefix");
  EXPECT_EQ(j["elements"][2]["word"], (Json{"b", "a1"}));
  EXPECT_EQ(j["elements"][2]["side"], "left");
  EXPECT_EQ(tower_from_json(j, f.left.alphabet()), *f.tower);
}

TEST(TowerJson, BadSide) {
  Json j = tower_to_json(*gen_exp(1).tower, gen_exp(1).left.alphabet());
  j["elements"][1]["side"] = "middle";
  try {
    tower_from_json(j, gen_exp(1).left.alphabet());
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("/elements/1/side"), std::string::npos);
  }
}

TEST(CircuitJson, RoundTrip) {
  const Circuit c{{{GateKind::zero}, {GateKind::one}, {GateKind::conj, 1, 2}, {GateKind::disj, 3, 3}}};
  const Json j = circuit_to_json(c);
  EXPECT_EQ(j["gates"][2]["kind"], "AND");
  const Circuit back = circuit_from_json(j);
  ASSERT_EQ(back.gates.size(), 4u);
  EXPECT_EQ(back.gates[3].kind, GateKind::disj);
  EXPECT_EQ(back.gates[3].left, 3u);
  Json bad = j;
  bad["gates"][2]["right"] = 4;
  EXPECT_THROW(circuit_from_json(bad), Error);
}

TEST(GraphJson, RoundTrip) {
  const GraphInstance g{Digraph{3, {{1}, {2}, {}}}, 0, 2};
  const GraphInstance back = graph_from_json(graph_to_json(g));
  EXPECT_EQ(back.graph.adjacency, g.graph.adjacency);
  EXPECT_EQ(back.target, 2u);
  Json bad = graph_to_json(g);
  bad["adjacency"][0][0] = 5;
  EXPECT_THROW(graph_from_json(bad), Error);
}

} // namespace
} // namespace ptsep
