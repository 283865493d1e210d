#pragma once

#include <cstddef>
#include <vector>

namespace dbbo::theory {

enum class BoundVariant {
  classic,                     // (1+lambda) EA, standard bit mutation
  resampling,                  // (1+lambda) EA>0, Bin>0 mutation strengths
  oea_closed_form,             // (1+1) EA closed form
  oea_resampling_closed_form,  // (1+1) EA>0 closed form
};

struct BoundQuery {
  std::size_t n = 1;
  std::size_t lambda = 1;
  double p = 0.5;
  BoundVariant variant = BoundVariant::resampling;
};

/// Expected-evaluation upper bound of the (1+lambda) EA (classic) or
/// (1+lambda) EA>0 (resampling) with static rate p on n-dimensional
/// LeadingOnes:
///
///   1 + c * (lambda / 2) * sum_{j=0}^{n-1} 1 / (1 - (1 - p(1-p)^j)^lambda)
///
/// with c = 1 (classic) or c = 1 - (1-p)^n (resampling). The sum is
/// accumulated with Neumaier compensation and every power goes through
/// log1p/expm1. The two closed-form variants forward to eval_oea_closed_form
/// (lambda is ignored). Throws std::domain_error outside 0 < p < 1, n >= 1,
/// lambda >= 1.
double eval_theorem1(const BoundQuery& query);

/// Exact (1+1) EA time on LeadingOnes, (1/(2p^2))((1-p)^{1-n} - (1-p)) + 1,
/// or its resampling version with the leading factor 1 - (1-p)^n.
double eval_oea_closed_form(std::size_t n, double p, bool resampling);

/// 1 - (1 - p(1-p)^lo)^lambda: probability that a generation started from a
/// parent with `leading_ones` correct leading bits improves.
double success_probability_per_generation(std::size_t n, double p, std::size_t lambda,
                                          std::size_t leading_ones);

struct Table1Cell {
  std::size_t lambda;
  std::size_t n;
  double percent_of_n2;  // 100 * bound / n^2, unrounded
};

inline const std::vector<std::size_t> table1_lambdas{1, 2, 5, 50};
inline const std::vector<std::size_t> table1_dimensions{500, 1000, 1500, 10000, 100000, 500000};

/// Resampling bound with p = 1/n over the lambda x n grid above, in row-major
/// order (lambda outer).
std::vector<Table1Cell> tabulate_table1();

}  // namespace dbbo::theory
