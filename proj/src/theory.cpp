#include "dbbo/theory.hpp"

#include <cmath>
#include <stdexcept>

namespace dbbo::theory {

namespace {

void check_domain(std::size_t n, double p) {
  if (n < 1) throw std::domain_error("dimension must be at least 1");
  if (!(p > 0.0 && p < 1.0)) throw std::domain_error("mutation rate must lie in (0, 1)");
}

// Neumaier's variant of Kahan summation.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      compensation_ += (sum_ - t) + x;
    } else {
      compensation_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + compensation_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

// 1 - (1-p)^n
double at_least_one_flip(std::size_t n, double p) {
  return -std::expm1(static_cast<double>(n) * std::log1p(-p));
}

}  // namespace

double eval_theorem1(const BoundQuery& q) {
  switch (q.variant) {
    case BoundVariant::oea_closed_form: return eval_oea_closed_form(q.n, q.p, false);
    case BoundVariant::oea_resampling_closed_form: return eval_oea_closed_form(q.n, q.p, true);
    case BoundVariant::classic:
    case BoundVariant::resampling: break;
  }
  check_domain(q.n, q.p);
  if (q.lambda < 1) throw std::domain_error("lambda must be at least 1");

  const double log_keep = std::log1p(-q.p);
  const double lambda = static_cast<double>(q.lambda);
  CompensatedSum sum;
  for (std::size_t j = 0; j < q.n; ++j) {
    const double improve_one = q.p * std::exp(static_cast<double>(j) * log_keep);
    const double improve_any = -std::expm1(lambda * std::log1p(-improve_one));
    sum.add(1.0 / improve_any);
  }
  const double factor = q.variant == BoundVariant::resampling ? at_least_one_flip(q.n, q.p) : 1.0;
  const double bound = 1.0 + factor * (lambda / 2.0) * sum.value();
  if (!std::isfinite(bound)) throw std::overflow_error("bound overflows double precision");
  return bound;
}

double eval_oea_closed_form(std::size_t n, double p, bool resampling) {
  check_domain(n, p);
  const double log_keep = std::log1p(-p);
  // (1-p)^{1-n} - (1-p) = (1-p) * ((1-p)^{-n} - 1)
  const double bracket = (1.0 - p) * std::expm1(-static_cast<double>(n) * log_keep);
  const double factor = resampling ? at_least_one_flip(n, p) : 1.0;
  const double value = factor * bracket / (2.0 * p * p) + 1.0;
  if (!std::isfinite(value)) throw std::overflow_error("closed form overflows double precision");
  return value;
}

double success_probability_per_generation(std::size_t n, double p, std::size_t lambda,
                                          std::size_t leading_ones) {
  check_domain(n, p);
  if (lambda < 1) throw std::domain_error("lambda must be at least 1");
  if (leading_ones >= n) throw std::domain_error("current LeadingOnes value must be below n");
  const double improve_one = p * std::exp(static_cast<double>(leading_ones) * std::log1p(-p));
  return -std::expm1(static_cast<double>(lambda) * std::log1p(-improve_one));
}

std::vector<Table1Cell> tabulate_table1() {
  std::vector<Table1Cell> cells;
  for (auto lambda : table1_lambdas) {
    for (auto n : table1_dimensions) {
      const double nd = static_cast<double>(n);
      const double bound = eval_theorem1({n, lambda, 1.0 / nd, BoundVariant::resampling});
      cells.push_back({lambda, n, 100.0 * bound / (nd * nd)});
    }
  }
  return cells;
}

}  // namespace dbbo::theory
