#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dbbo/core.hpp"
#include "dbbo/problems.hpp"
#include "dbbo/run_record.hpp"
#include "dbbo/variation.hpp"

namespace dbbo {

class ConfigurationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class AlgorithmKind { static_ea, two_rate_ea, adaptive_lambda_ea, rls };

enum class LambdaRule { halve_on_success, reset_on_success, divide_by_successes };

/// How the per-bit mutation rate is obtained.
struct RatePolicy {
  enum class Kind { fixed, per_dimension, p_star };
  Kind kind = Kind::per_dimension;
  /// fixed: p itself; per_dimension: c in p = c/n; unused for p_star.
  double value = 1.0;

  static RatePolicy fixed(double p) { return {Kind::fixed, p}; }
  static RatePolicy per_dimension(double c) { return {Kind::per_dimension, c}; }
  static RatePolicy p_star() { return {Kind::p_star, 0.0}; }

  /// p_star is ln(lambda)/(2n), kept inside [1/n^2, 1/2].
  double rate(std::size_t n, std::size_t lambda) const;

  std::string to_string() const;
  friend bool operator==(const RatePolicy&, const RatePolicy&) = default;
};

inline constexpr std::size_t default_lambda_max = std::size_t{1} << 30;

struct AlgorithmSpec {
  AlgorithmKind kind = AlgorithmKind::static_ea;
  std::size_t lambda_init = 1;
  RatePolicy rate = RatePolicy::per_dimension(1.0);
  double r_init = 2.0;
  LambdaRule lambda_rule = LambdaRule::divide_by_successes;
  std::size_t lambda_max = default_lambda_max;

  static AlgorithmSpec static_ea(std::size_t lambda, RatePolicy rate = RatePolicy::per_dimension(1.0));
  static AlgorithmSpec two_rate(std::size_t lambda = 50, double r_init = 2.0);
  static AlgorithmSpec adaptive_lambda(LambdaRule rule, std::size_t lambda_init = 50);
  static AlgorithmSpec rls();

  /// Throws ConfigurationError on an invalid parameter combination.
  void validate() const;

  /// e.g. `ea_gt0,lambda=50,p=1/n`, `two_rate,lambda=50,r0=2`,
  /// `adaptlambda,rule=div_s,lambda0=50`, `rls`.
  std::string descriptor() const;

  friend bool operator==(const AlgorithmSpec&, const AlgorithmSpec&) = default;
};

/// Inverse of AlgorithmSpec::descriptor(). Throws ConfigurationError.
AlgorithmSpec parse_algorithm(std::string_view descriptor);

/// Counts evaluations, feeds the run record and enforces the stopping rule
/// (optimum queried or budget exhausted).
class Evaluator {
 public:
  Evaluator(const ProblemInstance& instance, RunRecord& record,
            std::optional<std::uint64_t> budget = std::nullopt);

  int evaluate(const BitString& x);

  std::uint64_t evaluations() const noexcept { return evaluations_; }
  bool optimum_found() const noexcept { return optimum_found_; }
  bool budget_exhausted() const noexcept { return budget_ && evaluations_ >= *budget_; }
  bool done() const noexcept { return optimum_found_ || budget_exhausted(); }
  const ProblemInstance& instance() const noexcept { return instance_; }

 private:
  const ProblemInstance& instance_;
  RunRecord& record_;
  std::optional<std::uint64_t> budget_;
  std::uint64_t evaluations_ = 0;
  bool optimum_found_ = false;
};

struct GenerationState {
  BitString parent;
  int parent_fitness = 0;
  std::size_t lambda = 1;
  double r = 2.0;
  std::uint64_t evaluations_used = 0;
};

/// What happened in one generation; used for invariant checks.
struct GenerationReport {
  std::size_t offspring_evaluated = 0;
  std::size_t min_strength = 0;
  std::size_t max_strength = 0;
  /// Offspring at least as good as the parent before selection.
  std::size_t successes = 0;
  bool strict_improvement = false;
};

/// Scratch buffers reused across generations of one run.
class Workspace {
 public:
  explicit Workspace(std::size_t n) : sampler(n) {}
  FlipSampler sampler;
  std::vector<std::uint32_t> chosen_flips;
};

enum class RateGroup { low, high };

/// Two-rate update: adopt the winner's factor (r/2 for the low group, 2r for
/// the high group) or take r/2 or 2r (`draw_high`), then clamp to [2, n/4].
/// Without a winner only the random branch applies.
double next_rate(double r, std::optional<RateGroup> winner, bool adopt_winner, bool draw_high,
                 std::size_t n);

/// Success-based offspring population update, clamped to [1, lambda_max].
/// `successes` is s for divide_by_successes and 0/1 (strict improvement
/// found) for the other rules.
std::size_t next_lambda(LambdaRule rule, std::size_t lambda, std::size_t successes,
                        std::size_t lambda_max = default_lambda_max);

/// Sample-and-evaluate initial point (evaluation 1).
GenerationState initialize(const AlgorithmSpec& spec, Evaluator& evaluator, Rng& rng);

GenerationReport step_static(GenerationState& state, const AlgorithmSpec& spec, Evaluator& evaluator,
                             Rng& rng, Workspace& workspace);
GenerationReport step_two_rate(GenerationState& state, const AlgorithmSpec& spec, Evaluator& evaluator,
                               Rng& rng, Workspace& workspace);
GenerationReport step_adaptive_lambda(GenerationState& state, const AlgorithmSpec& spec,
                                      Evaluator& evaluator, Rng& rng, Workspace& workspace);
GenerationReport step_rls(GenerationState& state, Evaluator& evaluator, Rng& rng, Workspace& workspace);

/// Dispatches on spec.kind.
GenerationReport step(GenerationState& state, const AlgorithmSpec& spec, Evaluator& evaluator, Rng& rng,
                      Workspace& workspace);

/// Runs until the optimum is queried or the budget is spent. A budget stop
/// yields success = false; it is not an error.
RunRecord run(const AlgorithmSpec& spec, const ProblemInstance& instance,
              std::optional<std::uint64_t> budget, Rng& rng);

}  // namespace dbbo
