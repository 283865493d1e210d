#include "doctest.h"

#include <sstream>

#include "dbbo/config.hpp"
#include "dbbo/exhibits.hpp"

using namespace dbbo;

namespace {

ExperimentConfig parse(const std::string& text) {
  std::istringstream in(text);
  return parse_config(in);
}

ConfigError error_of(const std::string& text) {
  try {
    parse(text);
  } catch (const ConfigError& e) {
    return e;
  }
  FAIL("expected a ConfigError");
  return ConfigError(0, "", "");
}

const std::string minimal =
    "# comment line\n"
    "master_seed = 42\n"
    "runs_per_cell=5\n"
    "algorithm=ea_gt0,lambda=2,p=1/n   # trailing comment\n"
    "algorithm=rls\n"
    "problem=leadingones,50|60,0|3,9\n";

}  // namespace

TEST_CASE("parse a complete config") {
  const auto c = parse(minimal);
  CHECK(c.master_seed == 42);
  CHECK(c.runs_per_cell == 5);
  CHECK_FALSE(c.budget.has_value());
  REQUIRE(c.algorithms.size() == 2);
  CHECK(c.algorithms[0] == AlgorithmSpec::static_ea(2));
  CHECK(c.algorithms[1] == AlgorithmSpec::rls());
  REQUIRE(c.problems.size() == 1);
  CHECK(c.problems[0].family == ProblemFamily::leading_ones);
  CHECK(c.problems[0].dimensions == std::vector<std::size_t>{50, 60});
  CHECK(c.problems[0].instance_ids == std::vector<std::uint64_t>{0, 3});
  CHECK(c.problems[0].instance_seed == 9u);
  CHECK(expand_cells(c).size() == 8);

  const auto b = parse(minimal + "budget=1000\njobs=2\n");
  CHECK(b.budget == 1000u);
  CHECK(b.jobs == 2);
  CHECK_FALSE(parse(minimal + "budget=1000\nbudget=unlimited\n").budget.has_value());
}

TEST_CASE("errors carry line and field") {
  auto e = error_of(minimal + "runs_per_cell=ten\n");
  CHECK(e.line() == 7);
  CHECK(e.field() == "runs_per_cell");

  e = error_of(minimal + "\nalgorithm=ea_gt0,lambda=0\n");
  CHECK(e.line() == 8);
  CHECK(e.field() == "algorithm");

  e = error_of("problem=sphere,10\n");
  CHECK(e.line() == 1);
  CHECK(e.field() == "problem");

  e = error_of(minimal + "colour=blue\n");
  CHECK(e.field() == "colour");

  e = error_of(minimal + "just some words\n");
  CHECK(e.line() == 7);

  CHECK(error_of(minimal + "budget=0\n").field() == "budget");
  CHECK(error_of(minimal + "problem=onemax,0\n").field() == "problem");
  CHECK(error_of("algorithm=rls\n").line() == 0);  // no problem configured
  CHECK_THROWS_AS(load_config("/nonexistent/dbbo.cfg"), ConfigError);
}

TEST_CASE("overrides") {
  auto c = parse(minimal);
  apply_override(c, "runs_per_cell=10");
  CHECK(c.runs_per_cell == 10);
  apply_override(c, "master_seed=7");
  CHECK(c.master_seed == 7);
  apply_override(c, "algorithm=two_rate,lambda=8,r0=2");
  REQUIRE(c.algorithms.size() == 1);
  CHECK(c.algorithms[0] == AlgorithmSpec::two_rate(8));
  apply_override(c, "problem=onemax,20");
  REQUIRE(c.problems.size() == 1);
  CHECK(c.problems[0].instance_ids == std::vector<std::uint64_t>{0});
  CHECK_THROWS_AS(apply_override(c, "runs_per_cell"), ConfigError);
  CHECK_THROWS_AS(apply_override(c, "runs_per_cell=0"), ConfigError);
  CHECK_THROWS_AS(apply_override(c, "bogus=1"), ConfigError);
}

TEST_CASE("problem lines") {
  const auto p = parse_problem("onemax,500|1000");
  CHECK(p.family == ProblemFamily::one_max);
  CHECK(p.dimensions == std::vector<std::size_t>{500, 1000});
  CHECK_FALSE(p.instance_seed.has_value());
  CHECK_THROWS(parse_problem("onemax"));
  CHECK_THROWS(parse_problem("onemax,10,0,1,2"));
  CHECK_THROWS(parse_problem("onemax,ten"));
  CHECK_THROWS(parse_problem("onemax,10,-1"));
}

TEST_CASE("exhibit configurations") {
  CHECK(parse_exhibit("fig2") == Exhibit::fig2);
  CHECK(parse_exhibit("table1") == Exhibit::table1);
  CHECK_THROWS_AS(parse_exhibit("fig9"), std::invalid_argument);
  CHECK_THROWS(exhibit_config(Exhibit::table1, 0));

  for (auto e : {Exhibit::fig1, Exhibit::fig2, Exhibit::fig3, Exhibit::fig4}) {
    const auto c = exhibit_config(e, 5);
    CHECK_NOTHROW(c.validate());
    CHECK(c.runs_per_cell == 100);
    CHECK(c.master_seed == 5);
  }
  const auto fig2 = exhibit_config(Exhibit::fig2, 0);
  REQUIRE(fig2.problems.size() == 1);
  CHECK(fig2.problems[0].dimensions == std::vector<std::size_t>{3000});
  bool has_50 = false, has_2 = false;
  for (const auto& a : fig2.algorithms) {
    has_50 = has_50 || a == AlgorithmSpec::static_ea(50);
    has_2 = has_2 || a == AlgorithmSpec::static_ea(2);
  }
  CHECK(has_50);
  CHECK(has_2);
  CHECK(exhibit_config(Exhibit::fig1, 0).problems[0].dimensions.size() == 6);
  CHECK(exhibit_config(Exhibit::fig3, 0).problems[0].family == ProblemFamily::leading_ones);
}
