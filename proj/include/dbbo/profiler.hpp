#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "dbbo/algorithms.hpp"
#include "dbbo/problems.hpp"
#include "dbbo/run_record.hpp"

namespace dbbo {

struct ProblemSet {
  ProblemFamily family = ProblemFamily::one_max;
  std::vector<std::size_t> dimensions;
  std::vector<std::uint64_t> instance_ids{0};
  /// Seed for instance generation; the experiment master seed when unset.
  std::optional<std::uint64_t> instance_seed;
};

struct ExperimentConfig {
  std::vector<AlgorithmSpec> algorithms;
  std::vector<ProblemSet> problems;
  std::size_t runs_per_cell = 100;
  std::uint64_t master_seed = 0;
  std::optional<std::uint64_t> budget;
  std::size_t jobs = 1;

  void validate() const;
};

/// One (algorithm, family, dimension, instance) combination.
struct Cell {
  AlgorithmSpec algorithm;
  ProblemFamily family = ProblemFamily::one_max;
  std::size_t dimension = 0;
  std::uint64_t instance_id = 0;
  std::uint64_t instance_seed = 0;

  ProblemInstance instance() const;
  /// File-name-safe identifier, e.g. `ea_gt0_lambda_1_p_1_n__onemax_n500_i0`.
  std::string file_stem() const;
};

std::vector<Cell> expand_cells(const ExperimentConfig& config);

struct CellResult {
  Cell cell;
  std::vector<RunRecord> records;
  /// Empty unless the cell failed (run error or I/O error).
  std::string error;
};

struct ExperimentOptions {
  /// When set, raw, aggregated and summary files are written here.
  std::optional<std::filesystem::path> output_dir;
  /// Called once per finished cell, in cell order.
  std::function<void(const CellResult&, std::size_t index, std::size_t total)> on_cell;
};

/// Runs every cell with runs_per_cell independent runs; run k is seeded
/// with derive_seed(master_seed, k). Deterministic for a fixed config.
std::vector<CellResult> run_experiment(const ExperimentConfig& config, const ExperimentOptions& options = {});

// Data files. All integers base 10, '\n' line ends.

/// `run_index,seed,target,evaluations`, one row per improvement point,
/// sorted by (run_index, target).
void write_raw(std::ostream& out, const std::vector<RunRecord>& records);
std::vector<RunRecord> read_raw(std::istream& in, std::size_t dimension);

/// `target,mean_evals,std_evals,hits,runs`; `cap` keeps only rows with
/// mean <= cap.
void write_aggregate(std::ostream& out, const std::vector<RunRecord>& records,
                     std::optional<double> cap = std::nullopt);

/// `algorithm,family,dimension,instance,runs,mean_opt_time,success_rate`
void write_summary(std::ostream& out, const std::vector<CellResult>& cells);

/// `algorithm,dimension,mean_opt_time,norm_nlogn,norm_n2`
void write_normalized(std::ostream& out, const std::vector<CellResult>& cells);

struct SummaryRow {
  std::string algorithm;
  ProblemFamily family;
  std::size_t dimension;
  std::uint64_t instance;
  std::size_t runs;
};
std::vector<SummaryRow> read_summary(std::istream& in);

/// Re-reads the raw files listed in `dir/summary.csv`. The instance seed is
/// not part of the summary, so cells carry instance_seed = 0.
std::vector<CellResult> load_results(const std::filesystem::path& dir);

/// Writes `<stem>.agg.csv` for every cell plus `normalized.csv`.
void write_aggregates(const std::filesystem::path& dir, const std::vector<CellResult>& cells,
                      std::optional<double> cap = std::nullopt);

}  // namespace dbbo
