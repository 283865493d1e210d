#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace dbbo {

/// Fixed-target trace of one run: for each fitness value v in [0..n], the
/// evaluation count at which a point of fitness >= v was first evaluated.
struct RunRecord {
  std::string algorithm;
  std::string problem;
  std::uint64_t run_index = 0;
  std::uint64_t seed = 0;
  std::vector<std::optional<std::uint64_t>> first_hit;
  int final_fitness = -1;
  std::uint64_t total_evaluations = 0;
  bool success = false;

  RunRecord() = default;
  explicit RunRecord(std::size_t n) : first_hit(n + 1) {}

  std::size_t dimension() const noexcept { return first_hit.empty() ? 0 : first_hit.size() - 1; }

  std::optional<std::uint64_t> hit(int target) const {
    if (target < 0 || static_cast<std::size_t>(target) >= first_hit.size()) return std::nullopt;
    return first_hit[static_cast<std::size_t>(target)];
  }

  /// Optimization time, when the optimum was reached.
  std::optional<std::uint64_t> optimization_time() const {
    return success ? hit(static_cast<int>(dimension())) : std::nullopt;
  }
};

/// An improvement point: the best-so-far fitness rose to `fitness` at
/// evaluation `evaluations`. The raw data files store these.
struct Improvement {
  int fitness;
  std::uint64_t evaluations;
  friend bool operator==(const Improvement&, const Improvement&) = default;
};

/// Registers the evaluation with index `eval_count` that returned `fitness`.
/// Every target v <= fitness without a hit gets `eval_count`. Throws
/// std::logic_error unless eval_count exceeds every earlier call.
void record_evaluation(RunRecord& record, std::uint64_t eval_count, int fitness);

/// Largest target v with first_hit(v) <= budget; -1 when nothing was hit
/// by then. Throws std::invalid_argument for budget < 1.
int fixed_budget_value(const RunRecord& record, std::int64_t budget);

std::vector<Improvement> improvements(const RunRecord& record);

/// Rebuilds first_hit from improvement points of a run in dimension n.
RunRecord record_from_improvements(std::size_t n, const std::vector<Improvement>& points);

}  // namespace dbbo
