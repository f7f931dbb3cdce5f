#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hpp"

using namespace incl;
using namespace incl::testing;

namespace {

bool in_nu(const ReductionOutput& out) {
  return msm(model_of(out), out.team, out.formula).max_subteam.contains(out.query_row);
}

Circuit circuit(std::initializer_list<std::pair<const char*, Gate>> gates, const char* output = "1") {
  Circuit c;
  c.output = output;
  for (const auto& [id, g] : gates) c.gates.emplace(id, g);
  return c;
}

Gate gate(Gate::Op op, const char* l, const char* r) { return Gate{op, l, r, false}; }
Gate input(bool value) { return Gate{Gate::Op::Input, "", "", value}; }

}  // namespace

TEST_CASE("reachability oracle") {
  Digraph g = fixture_graph("reach_graph.json");
  CHECK(reach_solve(g, v("a"), v("b")));
  CHECK_FALSE(reach_solve(g, v("b"), v("a")));
  CHECK(reach_solve(g, v("a"), v("a")));
  CHECK_THROWS_AS(reach_solve(g, v("a"), v("q")), DomainError);
}

TEST_CASE("reachability reduction") {
  Digraph g = fixture_graph("reach_graph.json");
  auto out = reduce_reach(g, v("a"), v("b"), false);
  CHECK(team_to_json(out.team) == fixture_text("reach_team.json"));
  CHECK(out.query_row == row({"a", "b"}));
  CHECK(to_string(out.formula) == "x <= y");
  CHECK(in_nu(out));
  CHECK(msm_brute(model_of(out), out.team, out.formula).contains(out.query_row));
  auto both = reduce_reach(g, v("a"), v("b"), true);
  CHECK(to_string(both.formula) == "x <= y & y <= x");
  CHECK(in_nu(both));

  Digraph edge(values_of({"a", "b"}), {{v("a"), v("b")}});
  auto small = reduce_reach(edge, v("a"), v("b"), false);
  CHECK(small.team == Team({"x", "y"}, {row({"a", "b"}), row({"b", "a"})}));
  CHECK(in_nu(small));

  Digraph cyclic(values_of({"a", "b"}), {{v("a"), v("b")}, {v("b"), v("a")}});
  CHECK_THROWS_AS(reduce_reach(cyclic, v("a"), v("b"), false), PreconditionError);
}

TEST_CASE("deterministic reachability reduction") {
  Digraph g = fixture_graph("detreach_graph.json");
  auto out = reduce_detreach(g, v("a"), v("b"));
  CHECK(team_to_json(out.team) == fixture_text("detreach_team.json"));
  std::vector<std::string> y{"y"};
  CHECK(is_key(out.team, y));
  CHECK(out.query_row == row({"a", "0"}));
  CHECK_FALSE(detreach_solve(g, v("a"), v("b")));
  CHECK_FALSE(in_nu(out));

  Digraph line(values_of({"a", "0", "b"}), {{v("a"), v("0")}, {v("0"), v("b")}, {v("b"), v("b")}});
  CHECK(detreach_solve(line, v("a"), v("b")));
  CHECK(in_nu(reduce_detreach(line, v("a"), v("b"))));

  CHECK_THROWS_AS(reduce_detreach(fixture_graph("reach_graph.json"), v("a"), v("b")), PreconditionError);
  Digraph loop(values_of({"a", "0", "b"}),
               {{v("a"), v("0")}, {v("0"), v("a")}, {v("b"), v("b")}});
  CHECK_THROWS_AS(reduce_detreach(loop, v("a"), v("b")), PreconditionError);
}

TEST_CASE("circuit evaluation") {
  Circuit example_circuit = circuit_from_json(fixture_text("circuit_circuit.json"));
  CHECK_THROWS_AS(mcvp_solve(example_circuit), PreconditionError);
  CHECK(mcvp_solve(example_circuit, CyclePolicy::LeastFixpoint));
  CHECK_FALSE(mcvp_solve(circuit({{"1", input(false)}})));
  CHECK_FALSE(mcvp_solve(circuit({{"1", gate(Gate::Op::And, "T", "F")}})));
  CHECK(mcvp_solve(circuit({{"1", gate(Gate::Op::Or, "2", "F")}, {"2", input(true)}})));
  CHECK_THROWS_AS(mcvp_solve(circuit({{"1", gate(Gate::Op::Or, "7", "F")}})), PreconditionError);
  CHECK_THROWS_AS(mcvp_solve(circuit({{"g", gate(Gate::Op::Or, "T", "F")}}, "g")), PreconditionError);
}

TEST_CASE("circuit reduction") {
  Circuit example_circuit = circuit_from_json(fixture_text("circuit_circuit.json"));
  for (auto variant : {McvpVariant::XzYz, McvpVariant::XyYz, McvpVariant::XyXz}) {
    auto out = reduce_mcvp(example_circuit, variant);
    CHECK(team_to_json(out.team) == fixture_text("circuit_team.json"));
    CHECK(out.query_row == row({"1", "T", "T"}));
    CHECK(in_nu(out));
    MsmOptions wide;
    wide.brute_max_rows = 16;
    CHECK(msm_brute(model_of(out), out.team, out.formula, wide).contains(out.query_row));
  }
  CHECK(to_string(reduce_mcvp(example_circuit, McvpVariant::XyXz).formula) == "x <= y & x <= z");
  CHECK(mcvp_variant_from_string("xy_yz") == McvpVariant::XyYz);
  CHECK(to_string(McvpVariant::XzYz) == "xz_yz");
  CHECK_THROWS_AS(mcvp_variant_from_string("yz"), DomainError);

  Circuit no = circuit({{"1", gate(Gate::Op::And, "F", "F")}});
  CHECK_FALSE(mcvp_solve(no));
  for (auto variant : {McvpVariant::XzYz, McvpVariant::XyYz, McvpVariant::XyXz}) {
    auto out = reduce_mcvp(no, variant);
    CHECK_FALSE(msm_brute(model_of(out), out.team, out.formula).contains(out.query_row));
  }
  CHECK_THROWS_AS(reduce_mcvp(circuit({{"1", input(true)}}), McvpVariant::XzYz), PreconditionError);
}

TEST_CASE("keyed reachability reduction") {
  Digraph g = fixture_graph("keyed_graph.json");
  auto out = reduce_reach_keyed(g, v("a"), v("b"));
  CHECK(team_to_json(out.team) == fixture_text("keyed_team.json"));
  std::vector<std::string> z{"z"};
  CHECK(is_key(out.team, z));
  CHECK(out.query_row == row({"0", "1", "a"}));
  CHECK(reach_solve(g, v("a"), v("b")));
  CHECK_FALSE(in_nu(out));
  CHECK_FALSE(msm_brute(model_of(out), out.team, out.formula).contains(out.query_row));

  std::vector<std::pair<Value, Value>> edges;
  for (const auto& e : g.edges()) {
    if (e != std::pair{v("0"), v("b")}) edges.push_back(e);
  }
  edges.emplace_back(v("0"), v("2"));
  std::vector<Value> vs(g.vertices().begin(), g.vertices().end());
  Digraph cut(vs, edges);
  auto out2 = reduce_reach_keyed(cut, v("a"), v("b"));
  CHECK_FALSE(reach_solve(cut, v("a"), v("b")));
  CHECK(in_nu(out2));
  CHECK(msm_brute(model_of(out2), out2.team, out2.formula).contains(out2.query_row));

  CHECK_THROWS_AS(reduce_reach_keyed(g, v("a"), v("a")), PreconditionError);
  CHECK_THROWS_AS(reduce_reach_keyed(fixture_graph("reach_graph.json"), v("a"), v("b")), PreconditionError);
}

TEST_CASE("pebble game") {
  GameInstance example_game = game_from_json(fixture_text("game_game.json"));
  auto outcome = game_solve(example_game);
  CHECK(outcome.immediate == std::set<Value>{v("b")});
  CHECK(outcome.winning == std::set<Value>{v("a"), v("3"), v("b")});

  GameInstance single{Digraph(values_of({"u"}), {}), v("u")};
  CHECK(game_solve(single).winning == std::set<Value>{v("u")});
  CHECK(game_solve(single).immediate == std::set<Value>{v("u")});

  GameInstance edge{Digraph(values_of({"u", "w"}), {{v("u"), v("w")}}), v("u")};
  CHECK_FALSE(game_solve(edge).winning.contains(v("u")));
}

TEST_CASE("game reduction") {
  GameInstance example_game = game_from_json(fixture_text("game_game.json"));
  auto out = reduce_game(example_game);
  CHECK(team_to_json(out.team) == fixture_text("game_team.json"));
  CHECK(model_to_json(*out.model) == model_to_json(fixture_model("game_model.json")));
  CHECK(out.query_row == row({"0", "a"}));
  CHECK(to_string(out.formula) == "A z. !E(y,z) | z <= x");
  CHECK(out.formula == parse_formula("A z. (!E(y,z) | z <= x)"));
  Team nu = msm(*out.model, out.team, out.formula).max_subteam;
  CHECK(nu == fixture_team("game_nu.json"));
  CHECK(nu.contains(out.query_row));

  CHECK(msm(*out.model, Team({"x", "y"}), out.formula).max_subteam.empty());
  GameInstance orphan{example_game.graph, v("0")};
  CHECK_THROWS_AS(reduce_game(orphan), PreconditionError);
}

TEST_CASE("lifting maximal subteams to model checking") {
  Model m(values_of({"0", "1", "2", "a", "b"}), {{"P", Relation{1, {row({"a"})}}}});
  Team x = fixture_team("reach_team.json");
  Formula alpha = parse_formula("x <= y");
  Formula beta = parse_formula("P(u)");
  Team y({"u"}, {row({"a"}), row({"b"})});

  Team lifted = msm_to_mc_lift(m, x, row({"a", "b"}), alpha, beta, y);
  CHECK(lifted.size() == 1 + 5);
  CHECK(mc(m, lifted, Formula::disj(alpha, beta)));
  CHECK(satisfies_team(m, lifted, Formula::disj(alpha, beta)));

  Team lifted2 = msm_to_mc_lift(m, x, row({"1", "0"}), alpha, beta, y);
  CHECK_FALSE(mc(m, lifted2, Formula::disj(alpha, beta)));
  CHECK_FALSE(satisfies_team(m, lifted2, Formula::disj(alpha, beta)));

  Team all_a({"u"}, {row({"a"})});
  CHECK_THROWS_AS(msm_to_mc_lift(m, x, row({"a", "b"}), alpha, beta, all_a), PreconditionError);
  Team none_a({"u"}, {row({"b"})});
  CHECK_THROWS_AS(msm_to_mc_lift(m, x, row({"a", "b"}), alpha, beta, none_a), PreconditionError);
  Team clash({"x"}, {row({"a"}), row({"b"})});
  CHECK_THROWS_AS(msm_to_mc_lift(m, x, row({"a", "b"}), alpha, parse_formula("P(x)"), clash),
                  PreconditionError);
}

TEST_CASE("random reductions agree with their oracles") {
  Rng rng(71);
  for (int i = 0; i < 60; ++i) {
    Digraph g = random_dag(rng, uniform(rng, 2, 7), 0.35);
    std::vector<Value> vs(g.vertices().begin(), g.vertices().end());
    Value a = vs[uniform(rng, 0, vs.size() - 1)], b = vs[uniform(rng, 0, vs.size() - 1)];
    bool r = reach_solve(g, a, b);
    CHECK(in_nu(reduce_reach(g, a, b, false)) == r);
    CHECK(in_nu(reduce_reach(g, a, b, true)) == r);

    Digraph d = random_det_graph(rng, uniform(rng, 0, 6));
    auto det = reduce_detreach(d, v("a"), v("b"));
    CHECK(in_nu(det) == detreach_solve(d, v("a"), v("b")));

    Digraph k = random_keyed_graph(rng, uniform(rng, 1, 6));
    auto keyed = reduce_reach_keyed(k, v("a"), v("b"));
    std::vector<std::string> z{"z"};
    CHECK(is_key(keyed.team, z));
    CHECK(in_nu(keyed) == !reach_solve(k, v("a"), v("b")));

    Circuit c = random_circuit(rng, uniform(rng, 1, 8));
    bool val = mcvp_solve(c);
    for (auto variant : {McvpVariant::XzYz, McvpVariant::XyYz, McvpVariant::XyXz}) {
      CHECK(in_nu(reduce_mcvp(c, variant)) == val);
    }

    GameInstance gi = random_game(rng, uniform(rng, 2, 6), 0.4);
    auto out = reduce_game(gi);
    auto w = game_solve(gi).winning;
    std::vector<bool> keep(out.team.size());
    for (std::size_t s = 0; s < out.team.size(); ++s) keep[s] = w.contains(out.team.row(s)[1]);
    CHECK(msm(*out.model, out.team, out.formula).max_subteam == out.team.select(keep));
  }
}
