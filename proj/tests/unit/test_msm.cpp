#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hpp"

using namespace incl;
using namespace incl::testing;

namespace {

Team xy(std::vector<Row> rows) { return Team({"x", "y"}, std::move(rows)); }

struct ReachExample {
  Model model = fixture_model("reach_model.json");
  Team team = fixture_team("reach_team.json");
  Team nu = fixture_team("reach_nu.json");
};

}  // namespace

TEST_CASE("brute force maximal subteam") {
  ReachExample f;
  CHECK(msm_brute(f.model, f.team, parse_formula("x <= y")) == f.nu);
  CHECK(msm_brute(f.model, f.team, parse_formula("x=x")) == f.team);
  Model ab = bare_model(values_of({"a", "b"}));
  CHECK(msm_brute(ab, xy({row({"a", "b"})}), parse_formula("x <= y")).empty());

  MsmOptions small;
  small.brute_max_rows = 5;
  CHECK_THROWS_AS(msm_brute(f.model, f.team, parse_formula("x <= y"), small), GuardExceeded);
  small.brute_max_rows = 12;
  small.brute_max_domain = 4;
  CHECK_THROWS_AS(msm_brute(f.model, f.team, parse_formula("E z. z <= y"), small), GuardExceeded);
  CHECK_THROWS_AS(msm_brute(f.model, f.team, parse_formula("x <= w")), DomainError);
}

TEST_CASE("brute force agrees with the reference evaluator subteam by subteam") {
  Rng rng(31);
  std::vector<std::string> vars{"x", "y"};
  for (int i = 0; i < 60; ++i) {
    Model m = random_model(rng, 3);
    Team t = random_team(rng, vars, m, 1, 6);
    Formula f = random_qf(rng, vars, uniform(rng, 1, 4));
    Team nu = msm_brute(m, t, f);
    Team expect(vars);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << t.size()); ++mask) {
      Team y = t.select_mask(mask);
      if (satisfies_team(m, y, f)) expect = team_union(expect, y);
    }
    CAPTURE(to_string(f));
    CHECK(nu == expect);
  }
}

TEST_CASE("graph method") {
  ReachExample f;
  CHECK(msm_graph(f.model, f.team, {"x"}, {"y"}, std::nullopt, false) == f.nu);
  CHECK(msm_graph(f.model, f.team, {"x"}, {"y"}, std::nullopt, true) == f.nu);
  CHECK(msm_brute(f.model, f.team, parse_formula("x <= y & y <= x")) == f.nu);
  Model ab = bare_model(values_of({"a", "b"}));
  CHECK(msm_graph(ab, xy({row({"a", "b"})}), {"x"}, {"y"}, std::nullopt, false).empty());
  CHECK_THROWS_AS(msm_graph(ab, xy({}), {"x"}, {"y"}, parse_formula("x <= y"), false), UnsupportedFragment);

  // A side condition removes the edge (0,a) -> (a,b), breaking the cycle.
  Formula alpha = parse_formula("!x='0'");
  CHECK(msm_graph(f.model, f.team, {"x"}, {"y"}, alpha, false).empty());
}

TEST_CASE("graph method: bidirectional keeps only rows between cycles") {
  Model m = bare_model(values_of({"a", "b", "c"}));
  // a <-> b cycle, plus the row (b,c) that points into it but has no predecessor.
  Team t = xy({row({"a", "b"}), row({"b", "a"}), row({"b", "c"})});
  CHECK(msm_graph(m, t, {"x"}, {"y"}, std::nullopt, false) == t);
  CHECK(msm_graph(m, t, {"x"}, {"y"}, std::nullopt, true) == xy({row({"a", "b"}), row({"b", "a"})}));
  CHECK(msm_brute(m, t, parse_formula("x <= y & y <= x")) == xy({row({"a", "b"}), row({"b", "a"})}));
}

TEST_CASE("removal") {
  Model m = bare_model(values_of({"a", "b", "c"}));
  Team aa = xy({row({"a", "a"})});
  CHECK(msm_removal(aa, {parse_formula("x <= y")}) == aa);
  std::size_t rounds = 0;
  CHECK(msm_removal(xy({row({"a", "b"}), row({"b", "c"})}), {parse_formula("x <= y")}, &rounds).empty());
  CHECK(rounds == 2);
  CHECK_THROWS_AS(msm_removal(aa, {parse_formula("x=y")}), UnsupportedFragment);
}

TEST_CASE("removal on the circuit team") {
  Model m = fixture_model("circuit_model.json");
  Team t = fixture_team("circuit_team.json");
  Team marked = fixture_team("circuit_marked.json");
  auto sigma = flatten_conjunction(parse_formula("x <= z & y <= z"));
  Team nu = msm_removal(t, sigma);
  MsmOptions wide;
  wide.brute_max_rows = 16;
  CHECK(nu == msm_brute(m, t, conjunction_of(sigma), wide));
  CHECK(marked.is_subteam_of(nu));
  CHECK(satisfies_team(m, marked, conjunction_of(sigma)));
  CHECK(nu.contains(row({"1", "T", "T"})));
}

TEST_CASE("compositional rules") {
  ReachExample f;
  Formula either = parse_formula("x <= y | y <= x");
  Team left = msm_brute(f.model, f.team, parse_formula("x <= y"));
  Team right = msm_brute(f.model, f.team, parse_formula("y <= x"));
  CHECK(msm_compose(f.model, f.team, either) == team_union(left, right));
  CHECK(msm_compose(f.model, f.team, either) == msm_brute(f.model, f.team, either));
  CHECK(msm_compose(f.model, f.team, parse_formula("x <= y & x=x")) == f.nu);

  Model ab = bare_model(values_of({"a", "b"}));
  Team y = Team({"y"}, {row({"a"})});
  CHECK(msm_compose(ab, y, parse_formula("E u. u <= y")) == y);
  CHECK(msm_brute(ab, y, parse_formula("E u. u <= y")) == y);
  CHECK(is_compositional(parse_formula("E u. (u <= y & E(u,y))")));
  CHECK_FALSE(is_compositional(parse_formula("x <= y & y <= z")));
}

TEST_CASE("game method") {
  ReachExample f;
  CHECK(msm_game(f.model, f.team, parse_formula("x <= y")) == f.nu);
  Model ab = bare_model(values_of({"a", "b"}));
  Team aa = xy({row({"a", "a"})});
  Formula g = parse_formula("x <= y & x='a'");
  CHECK(msm_game(ab, aa, g) == aa);
  CHECK(msm_brute(ab, aa, g) == aa);
  CHECK(msm_game(ab, xy({row({"a", "b"})}), parse_formula("x <= y")).empty());
  CHECK_THROWS_AS(msm_game(ab, aa, parse_formula("E z. z <= x")), UnsupportedFragment);
}

TEST_CASE("dispatcher") {
  ReachExample f;
  auto r = msm(f.model, f.team, parse_formula("x <= y"));
  CHECK(r.method == Method::Removal);
  CHECK(r.max_subteam == f.nu);
  CHECK(r.witness == std::optional<std::string>("2 deletion rounds"));
  CHECK(msm(f.model, f.team, parse_formula("x <= y & !x=y")).method == Method::Graph);
  CHECK(msm(f.model, f.team, parse_formula("x <= y | y <= x")).method == Method::Compositional);
  CHECK(msm(f.model, f.team, parse_formula("(x <= y | y <= x) & (x=y | y <= x)")).method == Method::Game);
  CHECK(select_method(parse_formula("A z. (z <= x & z <= y)")) == Method::Brute);
  CHECK(select_method(parse_formula("A z. (!E(y,z) | z <= x)")) == Method::Compositional);

  Formula fo = parse_formula("x='a' | y='a'");
  CHECK(msm(f.model, f.team, fo).max_subteam == xy({row({"0", "a"}), row({"a", "b"})}));
  CHECK(msm(f.model, Team({"x", "y"}), parse_formula("x <= y")).max_subteam.empty());
  CHECK_THROWS_AS(msm(f.model, f.team, parse_formula("x <= z")), DomainError);
  CHECK_THROWS_AS(msm(f.model, xy({row({"q", "q"})}), parse_formula("x <= y")), DomainError);
}

TEST_CASE("model checking") {
  ReachExample f;
  CHECK(mc(f.model, f.nu, parse_formula("x <= y")));
  CHECK_FALSE(mc(f.model, f.team, parse_formula("x <= y")));
  CHECK(mc(f.model, Team({"x", "y"}), parse_formula("x <= y & y <= x | x=y")) == true);
}

TEST_CASE("all methods agree with brute force on random instances") {
  Rng rng(41);
  std::vector<std::string> vars{"x", "y", "z"};
  for (int i = 0; i < 300; ++i) {
    Model m = random_model(rng, uniform(rng, 2, 4));
    Team t = random_team(rng, vars, m, 0, 8);
    Formula inc = random_inclusion(rng, vars);
    Formula f = random_qf(rng, vars, uniform(rng, 1, 4));
    Team oracle = msm_brute(m, t, f);
    CAPTURE(to_string(f));
    CHECK(msm_game(m, t, f) == oracle);
    if (is_compositional(f)) CHECK(msm_compose(m, t, f) == oracle);
    CHECK(msm(m, t, f).max_subteam == oracle);

    Formula alpha = random_fo(rng, vars, 2);
    Formula g = Formula::conj(inc, alpha);
    Team graph = msm_graph(m, t, inc.included(), inc.including(), alpha, false);
    CHECK(graph == msm_brute(m, t, g));
  }
}

TEST_CASE("nu is idempotent and mc matches nu") {
  Rng rng(42);
  std::vector<std::string> vars{"x", "y"};
  for (int i = 0; i < 200; ++i) {
    Model m = random_model(rng, 3);
    Team t = random_team(rng, vars, m, 0, 8);
    Formula f = random_qf(rng, vars, uniform(rng, 1, 4));
    Team nu = msm(m, t, f).max_subteam;
    CHECK(msm(m, nu, f).max_subteam == nu);
    CHECK(mc(m, nu, f));
    CHECK(mc(m, t, f) == (nu == t));
    CHECK(mc(m, t, f) == satisfies_team(m, t, f));
  }
}

TEST_CASE("disjunction, existential and first-order conjunct identities") {
  Rng rng(43);
  std::vector<std::string> vars{"x", "y"};
  for (int i = 0; i < 150; ++i) {
    Model m = random_model(rng, uniform(rng, 2, 3));
    Team t = random_team(rng, vars, m, 1, 4);
    Formula a = random_qf(rng, vars, uniform(rng, 1, 3));
    Formula b = random_qf(rng, vars, uniform(rng, 1, 3));
    CHECK(msm_brute(m, t, Formula::disj(a, b)) == team_union(msm_brute(m, t, a), msm_brute(m, t, b)));

    Formula psi = random_fo(rng, vars, 2);
    CHECK(msm_brute(m, t, Formula::conj(a, psi)) == msm_brute(m, msm_brute(m, t, psi), a));

    Formula body = random_qf(rng, {"x", "y", "w"}, uniform(rng, 1, 3));
    Formula ex = Formula::exists("w", body);
    Team ext = extend_all(t, "w", m.domain());
    Team sub = msm_brute(m, ext, body);
    std::vector<bool> keep(t.size());
    for (std::size_t s = 0; s < t.size(); ++s) {
      for (Value val : m.domain()) {
        Row r = t.row(s);
        r.push_back(val);
        if (sub.contains(r)) keep[s] = true;
      }
    }
    CAPTURE(to_string(ex));
    CHECK(msm_brute(m, t, ex) == t.select(keep));
    CHECK(msm_compose(m, t, ex) == t.select(keep));
  }
}

TEST_CASE("universal rule agrees with brute force") {
  Rng rng(44);
  for (int i = 0; i < 100; ++i) {
    Model m = random_model(rng, 2);
    Team t = random_team(rng, {"x", "y"}, m, 1, 4);
    Formula body = Formula::disj(random_literal(rng, {"y", "z"}), random_inclusion(rng, {"x", "y", "z"}, 1));
    Formula f = Formula::forall("z", body);
    CAPTURE(to_string(f));
    CHECK(msm_compose(m, t, f) == msm_brute(m, t, f));
  }
}
