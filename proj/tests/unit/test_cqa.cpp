#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "support.hpp"

using namespace incl;
using namespace incl::testing;

namespace {

std::vector<Formula> deps(const std::string& text) { return flatten_conjunction(parse_formula(text)); }

}  // namespace

TEST_CASE("subset repair") {
  Team db = fixture_team("reach_team.json");
  Team cycle = fixture_team("reach_nu.json");
  CHECK(subset_repair(db, deps("x <= y")) == cycle);
  CHECK(subset_repair(cycle, deps("x <= y")) == cycle);
  Team hopeless({"x", "y"}, {row({"a", "b"}), row({"c", "d"})});
  CHECK(subset_repair(hopeless, deps("x <= y")).empty());
  CHECK(subset_repair(db, {}) == db);
  CHECK_THROWS_AS(subset_repair(db, deps("x,y <= y,x")), DomainError);
}

TEST_CASE("repair checking") {
  Team db = fixture_team("reach_team.json");
  Team cycle = fixture_team("reach_nu.json");
  CHECK(is_subset_repair(cycle, db, deps("x <= y")));
  CHECK_FALSE(is_subset_repair(Team({"x", "y"}), db, deps("x <= y")));
  CHECK(is_subset_repair(cycle, cycle, deps("x <= y")));
  Team outside({"x", "y"}, {row({"q", "q"})});
  CHECK_THROWS_AS(is_subset_repair(outside, db, deps("x <= y")), PreconditionError);
}

TEST_CASE("atomic consistent answers") {
  Team db = fixture_team("reach_team.json");
  CHECK(consistent_answer_atomic(db, deps("x <= y"), row({"a", "b"})));
  CHECK_FALSE(consistent_answer_atomic(db, deps("x <= y"), row({"1", "0"})));
  Team cycle = fixture_team("reach_nu.json");
  for (const auto& r : cycle.rows()) CHECK(consistent_answer_atomic(cycle, deps("x <= y"), r));
  CHECK_THROWS_AS(consistent_answer_atomic(db, deps("x <= y"), row({"a"})), DomainError);
}

TEST_CASE("CSV and dependency files") {
  std::istringstream csv("src, dst\n\na,b\nb, a\n");
  Team t = read_csv_team(csv);
  CHECK(t.vars() == std::vector<std::string>{"src", "dst"});
  CHECK(t.size() == 2);
  std::istringstream ragged("x,y\na\n");
  CHECK_THROWS_AS(read_csv_team(ragged), DomainError);
  std::istringstream blank("\n\n");
  CHECK_THROWS_AS(read_csv_team(blank), DomainError);

  std::istringstream d("# foreign keys\nsrc <= dst\n\ndst <= src\n");
  auto ds = read_dependencies(d);
  CHECK(ds.size() == 2);
  CHECK(ds[1] == parse_formula("dst <= src"));
  std::istringstream bad("src = dst\n");
  CHECK_THROWS_AS(read_dependencies(bad), DomainError);
}

TEST_CASE("repairs match brute force on random databases") {
  Rng rng(91);
  std::vector<std::string> vars{"x", "y", "z"};
  for (int i = 0; i < 100; ++i) {
    Model m = random_model(rng, 3);
    Team db = random_team(rng, vars, m, 0, 10);
    std::vector<Formula> sigma;
    std::size_t count = uniform(rng, 1, 3);
    for (std::size_t k = 0; k < count; ++k) sigma.push_back(random_inclusion(rng, vars, 1));
    Team repair = subset_repair(db, sigma);
    CHECK(repair == msm_brute(m, db, conjunction_of(sigma)));
    CHECK(satisfies_team(m, repair, conjunction_of(sigma)));
    CHECK(is_subset_repair(repair, db, sigma));
    for (const auto& r : db.rows()) CHECK(consistent_answer_atomic(db, sigma, r) == repair.contains(r));
  }
}
