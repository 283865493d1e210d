#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "dbbo/run_record.hpp"

namespace dbbo {

struct OptimizationTimeSummary {
  double mean = 0.0;
  double std_dev = 0.0;
  double standard_error = 0.0;
  double per_n_log_n = 0.0;
  double per_n_squared = 0.0;
  std::size_t successes = 0;
  std::size_t runs = 0;
};

/// Arithmetic mean of the optimization time over successful runs together
/// with the n ln n and n^2 normalizations. nullopt when no run succeeded.
std::optional<OptimizationTimeSummary> mean_optimization_time(std::span<const RunRecord> records);

struct TargetStats {
  double mean = 0.0;  // over runs that hit the target
  double std_dev = 0.0;
  double median = 0.0;
  std::size_t hits = 0;

  double standard_error() const;
};

/// Per-target first-hitting statistics T(v) across runs.
struct FixedTargetTable {
  std::size_t dimension = 0;
  std::size_t runs = 0;
  std::map<int, TargetStats> targets;

  /// T(v) when at least one run hit v.
  std::optional<double> mean(int target) const;
  const TargetStats* find(int target) const;

  double n_log_n() const;
  double n_squared() const;
};

/// Targets default to every value in [0..n]. Entries with zero hits are kept
/// (hits = 0, mean = NaN) so hit fractions stay visible.
FixedTargetTable fixed_target_curve(std::span<const RunRecord> records,
                                    std::optional<std::vector<int>> targets = std::nullopt);

/// Targets whose mean does not exceed `cap`, in increasing order. Display
/// helper; the table itself is unchanged.
std::vector<int> targets_within_cap(const FixedTargetTable& table, double cap);

/// G(i) = T(i) - T(i-1).
std::optional<double> gradient(const FixedTargetTable& table, int target);

/// Mean of G(j) over j in [target, target + window).
std::optional<double> rolling_gradient(const FixedTargetTable& table, int target, int window = 5);

/// R(i) = rolling G_a / rolling G_b - 1 over [i, i + window); nullopt when a
/// gradient is missing or the B average is zero.
std::optional<double> relative_difference(const FixedTargetTable& a, const FixedTargetTable& b, int target,
                                          int window = 5);

}  // namespace dbbo
