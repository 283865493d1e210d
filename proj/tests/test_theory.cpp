#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "dbbo/theory.hpp"

using namespace dbbo::theory;

namespace {

double bound(std::size_t n, std::size_t lambda, double p, BoundVariant v) { return eval_theorem1({n, lambda, p, v}); }

double percent(std::size_t n, std::size_t lambda) {
  const double nd = static_cast<double>(n);
  return 100.0 * bound(n, lambda, 1.0 / nd, BoundVariant::resampling) / (nd * nd);
}

// Probability that at least one of `lambda` offspring of a parent with `lo`
// leading ones has more leading ones, by enumerating all flip masks.
double enumerate_success(std::size_t n, double p, std::size_t lambda, std::size_t lo) {
  double single = 0.0;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    double prob = 1.0;
    for (std::size_t i = 0; i < n; ++i) prob *= (mask >> i & 1u) ? p : 1.0 - p;
    bool keeps_prefix = true;
    for (std::size_t i = 0; i < lo; ++i) keeps_prefix = keeps_prefix && !(mask >> i & 1u);
    if (keeps_prefix && (mask >> lo & 1u)) single += prob;
  }
  return 1.0 - std::pow(1.0 - single, static_cast<double>(lambda));
}

}  // namespace

TEST_CASE("published bound table") {
  const double expected[4][6] = {
      {54.317, 54.313, 54.311, 54.309, 54.308, 54.308},
      {54.349, 54.328, 54.322, 54.310, 54.308, 54.308},
      {54.444, 54.376, 54.353, 54.315, 54.309, 54.308},
      {55.883, 55.091, 54.829, 54.386, 54.316, 54.310},
  };
  const auto cells = tabulate_table1();
  REQUIRE(cells.size() == 24);
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const auto& c = cells[i];
    INFO("lambda=" << c.lambda << " n=" << c.n << " value=" << c.percent_of_n2);
    CHECK(c.lambda == table1_lambdas[i / 6]);
    CHECK(c.n == table1_dimensions[i % 6]);
    CHECK(std::abs(c.percent_of_n2 - expected[i / 6][i % 6]) <= 0.0005);
  }
}

TEST_CASE("lambda = 1 matches the closed form") {
  for (std::size_t n : {10u, 100u, 1000u}) {
    for (double p : {0.01, 1.0 / static_cast<double>(n), 0.1}) {
      const double sum = bound(n, 1, p, BoundVariant::classic);
      const double closed = eval_oea_closed_form(n, p, false);
      CHECK(std::abs(sum / closed - 1.0) <= 1e-9);
      const double rsum = bound(n, 1, p, BoundVariant::resampling);
      CHECK(std::abs(rsum / eval_oea_closed_form(n, p, true) - 1.0) <= 1e-9);
    }
  }
}

TEST_CASE("resampling scales the sum term") {
  for (std::size_t n : {7u, 500u, 3000u}) {
    for (std::size_t lambda : {1u, 3u, 50u}) {
      for (double p : {1e-4, 1.0 / static_cast<double>(n), 0.05}) {
        const double classic = bound(n, lambda, p, BoundVariant::classic) - 1.0;
        const double resampling = bound(n, lambda, p, BoundVariant::resampling) - 1.0;
        const double factor = -std::expm1(static_cast<double>(n) * std::log1p(-p));
        CHECK(resampling == doctest::Approx(classic * factor).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("bound is non-decreasing in lambda and the table in n") {
  for (std::size_t n : {10u, 500u, 3000u}) {
    const double p = 1.0 / static_cast<double>(n);
    double previous = 0.0;
    for (std::size_t lambda = 1; lambda <= 64; lambda *= 2) {
      const double b = bound(n, lambda, p, BoundVariant::resampling);
      CHECK(b >= previous);
      previous = b;
    }
  }
  for (std::size_t lambda : table1_lambdas) {
    double previous = 1e9;
    for (std::size_t n : table1_dimensions) {
      const double pc = percent(n, lambda);
      CHECK(pc <= previous);
      previous = pc;
    }
  }
}

TEST_CASE("closed forms") {
  CHECK(std::abs(eval_oea_closed_form(500, 1e-9, true) / 125001.0 - 1.0) <= 1e-3);
  const double at_opt = eval_oea_closed_form(500, 1.59 / 500, false);
  CHECK(at_opt <= eval_oea_closed_form(500, 1.0 / 500, false));
  CHECK(at_opt <= eval_oea_closed_form(500, 2.5 / 500, false));
  CHECK(at_opt / (500.0 * 500.0) == doctest::Approx(0.77).epsilon(0.005));
  CHECK(eval_oea_closed_form(1, 0.5, false) == doctest::Approx(2.0));
  CHECK(bound(500, 7, 0.002, BoundVariant::oea_closed_form) == eval_oea_closed_form(500, 0.002, false));
  CHECK(bound(500, 7, 0.002, BoundVariant::oea_resampling_closed_form) == eval_oea_closed_form(500, 0.002, true));
}

TEST_CASE("per-generation success probability") {
  CHECK(success_probability_per_generation(10, 0.1, 1, 0) == doctest::Approx(0.1));
  CHECK(success_probability_per_generation(10, 0.1, 1, 4) == doctest::Approx(0.1 * std::pow(0.9, 4)));
  CHECK(success_probability_per_generation(3, 0.5, 2, 1) == doctest::Approx(0.4375));
  for (std::size_t lo = 0; lo < 5; ++lo) {
    for (std::size_t lambda : {1u, 2u, 7u}) {
      CHECK(success_probability_per_generation(5, 0.3, lambda, lo) ==
            doctest::Approx(enumerate_success(5, 0.3, lambda, lo)).epsilon(1e-12));
    }
  }
  CHECK_THROWS(success_probability_per_generation(3, 0.5, 2, 3));
}

TEST_CASE("invalid queries") {
  CHECK_THROWS_AS(bound(10, 1, 0.0, BoundVariant::classic), std::domain_error);
  CHECK_THROWS_AS(bound(10, 1, 1.0, BoundVariant::classic), std::domain_error);
  CHECK_THROWS_AS(bound(10, 1, -0.5, BoundVariant::resampling), std::domain_error);
  CHECK_THROWS_AS(bound(10, 1, std::nan(""), BoundVariant::resampling), std::domain_error);
  CHECK_THROWS_AS(bound(0, 1, 0.5, BoundVariant::classic), std::domain_error);
  CHECK_THROWS_AS(bound(10, 0, 0.5, BoundVariant::classic), std::domain_error);
  CHECK_THROWS_AS(eval_oea_closed_form(10, 1.5, true), std::domain_error);
  CHECK_THROWS(bound(100000, 1, 0.5, BoundVariant::classic));
}
