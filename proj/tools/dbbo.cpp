// dbbo: run, aggregate and reproduce fixed-target benchmarks of (1+lambda)
// EA>0 variants on OneMax and LeadingOnes.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dbbo/config.hpp"
#include "dbbo/csv.hpp"
#include "dbbo/exhibits.hpp"
#include "dbbo/profiler.hpp"
#include "dbbo/stats.hpp"
#include "dbbo/theory.hpp"

namespace fs = std::filesystem;
using namespace dbbo;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_runtime = 1;
constexpr int exit_usage = 2;

struct RunOptions {
  std::string config_path;
  std::string out_dir = "results";
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> jobs;
  std::vector<std::string> overrides;
};

std::optional<std::uint64_t> seed_from_env() {
  const char* env = std::getenv("DBBO_SEED");
  if (!env || !*env) return std::nullopt;
  try {
    return std::stoull(env);
  } catch (const std::exception&) {
    throw ConfigError(0, "DBBO_SEED", std::string("not an unsigned integer: '") + env + "'");
  }
}

void apply_common(ExperimentConfig& config, const RunOptions& opts) {
  if (opts.seed) {
    config.master_seed = *opts.seed;
  } else if (auto env = seed_from_env()) {
    config.master_seed = *env;
  }
  if (opts.jobs) config.jobs = *opts.jobs;
  for (const auto& o : opts.overrides) apply_override(config, o);
}

void print_progress(const CellResult& cell, std::size_t index, std::size_t total) {
  const auto& c = cell.cell;
  std::printf("[%zu/%zu] %s  %s n=%zu i=%llu: ", index + 1, total, c.algorithm.descriptor().c_str(),
              std::string(to_string(c.family)).c_str(), c.dimension,
              static_cast<unsigned long long>(c.instance_id));
  if (!cell.error.empty()) {
    std::printf("FAILED (%s)\n", cell.error.c_str());
  } else if (auto s = mean_optimization_time(cell.records)) {
    std::printf("%zu/%zu successful, mean %.1f evals\n", s->successes, s->runs, s->mean);
  } else {
    std::printf("no successful run\n");
  }
  std::fflush(stdout);
}

void print_summary_table(const std::vector<CellResult>& cells) {
  std::printf("\n%-44s %-12s %7s %14s %10s %10s\n", "algorithm", "problem", "n", "mean_evals", "/(n ln n)",
              "/n^2");
  for (const auto& cell : cells) {
    const auto s = mean_optimization_time(cell.records);
    std::printf("%-44s %-12s %7zu %14s %10s %10s\n", cell.cell.algorithm.descriptor().c_str(),
                std::string(to_string(cell.cell.family)).c_str(), cell.cell.dimension,
                s ? csv::number(s->mean, 1).c_str() : "-", s ? csv::number(s->per_n_log_n, 4).c_str() : "-",
                s ? csv::number(s->per_n_squared, 4).c_str() : "-");
  }
}

int execute(const ExperimentConfig& config, const fs::path& out, std::vector<CellResult>* keep = nullptr) {
  ExperimentOptions options;
  options.output_dir = out;
  options.on_cell = print_progress;
  auto cells = run_experiment(config, options);
  print_summary_table(cells);
  bool ok = true;
  for (const auto& c : cells) ok = ok && c.error.empty();
  std::printf("\noutput written to %s\n", out.string().c_str());
  if (keep) *keep = std::move(cells);
  return ok ? exit_ok : exit_runtime;
}

int cmd_run(const RunOptions& opts) {
  ExperimentConfig config = load_config(opts.config_path);
  apply_common(config, opts);
  config.validate();
  return execute(config, opts.out_dir);
}

int cmd_aggregate(const std::string& in_dir, const std::string& out_dir, std::optional<double> cap) {
  const auto cells = load_results(in_dir);
  write_aggregates(out_dir, cells, cap);
  {
    std::ofstream summary(fs::path(out_dir) / "summary.csv", std::ios::binary);
    write_summary(summary, cells);
  }
  print_summary_table(cells);
  return exit_ok;
}

int cmd_theory(std::optional<std::size_t> n, std::size_t lambda, std::optional<double> p,
               const std::string& variant, const std::string& out) {
  if (!n) {
    if (out.empty()) {
      write_table1(std::cout);
    } else {
      std::ofstream file(out, std::ios::binary);
      write_table1(file);
      write_table1(std::cout);
    }
    return exit_ok;
  }
  theory::BoundQuery q;
  q.n = *n;
  q.lambda = lambda;
  q.p = p ? *p : 1.0 / static_cast<double>(*n);
  if (variant == "classic") {
    q.variant = theory::BoundVariant::classic;
  } else if (variant == "resampling") {
    q.variant = theory::BoundVariant::resampling;
  } else if (variant == "oea") {
    q.variant = theory::BoundVariant::oea_closed_form;
  } else if (variant == "oea_resampling") {
    q.variant = theory::BoundVariant::oea_resampling_closed_form;
  } else {
    throw ConfigError(0, "variant", "expected classic, resampling, oea or oea_resampling");
  }
  const double bound = theory::eval_theorem1(q);
  const double nd = static_cast<double>(q.n);
  std::printf("n,lambda,p,variant,expected_evals,percent_of_n2\n%zu,%zu,%.17g,%s,%.6f,%.6f\n", q.n, q.lambda, q.p,
              variant.c_str(), bound, 100.0 * bound / (nd * nd));
  return exit_ok;
}

const std::vector<RunRecord>* find_cell(const std::vector<CellResult>& cells, const AlgorithmSpec& spec) {
  for (const auto& c : cells) {
    if (c.cell.algorithm == spec && c.error.empty()) return &c.records;
  }
  return nullptr;
}

int cmd_reproduce(const std::string& id, const RunOptions& opts) {
  Exhibit exhibit;
  try {
    exhibit = parse_exhibit(id);
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return exit_usage;
  }
  const fs::path out = opts.out_dir;
  fs::create_directories(out);
  if (exhibit == Exhibit::table1) {
    std::ofstream file(out / "table1.csv", std::ios::binary);
    write_table1(file);
    write_table1(std::cout);
    return file ? exit_ok : exit_runtime;
  }

  ExperimentConfig config = exhibit_config(exhibit, 0);
  apply_common(config, opts);
  config.validate();
  std::vector<CellResult> cells;
  int status = execute(config, out, &cells);

  if (exhibit == Exhibit::fig2) {
    write_aggregates(out, cells, fig2_display_cap);
    for (const auto& c : cells) {
      if (c.error.empty()) write_gradients(out / (c.cell.file_stem() + ".grad.csv"), c.records, 5, fig2_display_cap);
    }
    const auto* big = find_cell(cells, AlgorithmSpec::static_ea(50));
    const auto* small = find_cell(cells, AlgorithmSpec::static_ea(2));
    if (big && small) write_relative_difference(out / "relative_difference.csv", *big, *small, 5);
  }
  return status;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fixed-target benchmarking of (1+lambda) EA>0 variants on OneMax and LeadingOnes"};
  app.require_subcommand(1);

  RunOptions run_opts;
  auto add_run_flags = [&](CLI::App* sub) {
    sub->add_option("--out", run_opts.out_dir, "Output directory");
    sub->add_option("--seed", run_opts.seed, "Master seed (falls back to $DBBO_SEED)");
    sub->add_option("--jobs", run_opts.jobs, "Worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--override", run_opts.overrides, "KEY=VALUE config override (repeatable)");
  };

  auto* run_cmd = app.add_subcommand("run", "Run the experiment described by a config file");
  run_cmd->add_option("--config", run_opts.config_path, "Config file")->required();
  add_run_flags(run_cmd);

  std::string agg_in;
  std::string agg_out;
  std::optional<double> agg_cap;
  auto* agg_cmd = app.add_subcommand("aggregate", "Recompute aggregated CSVs from raw files");
  agg_cmd->add_option("--in", agg_in, "Directory holding summary.csv and raw files")->required();
  agg_cmd->add_option("--out", agg_out, "Output directory (defaults to --in)");
  agg_cmd->add_option("--cap", agg_cap, "Drop targets whose mean exceeds this many evaluations");

  std::optional<std::size_t> th_n;
  std::size_t th_lambda = 1;
  std::optional<double> th_p;
  std::string th_variant = "resampling";
  std::string th_out;
  auto* theory_cmd = app.add_subcommand("theory", "Print the LeadingOnes bound table, or one bound with --n");
  theory_cmd->add_option("--n", th_n, "Dimension for a single bound");
  theory_cmd->add_option("--lambda", th_lambda, "Offspring population size")->check(CLI::PositiveNumber);
  theory_cmd->add_option("--p", th_p, "Mutation rate (default 1/n)");
  theory_cmd->add_option("--variant", th_variant, "classic | resampling | oea | oea_resampling");
  theory_cmd->add_option("--out", th_out, "Also write the table to this file");

  std::string exhibit_id;
  auto* repro_cmd = app.add_subcommand("reproduce", "Regenerate the data behind fig1..fig4 or table1");
  repro_cmd->add_option("exhibit", exhibit_id, "fig1 | fig2 | fig3 | fig4 | table1")->required();
  add_run_flags(repro_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? exit_ok : exit_usage;
  }

  try {
    if (*run_cmd) return cmd_run(run_opts);
    if (*agg_cmd) return cmd_aggregate(agg_in, agg_out.empty() ? agg_in : agg_out, agg_cap);
    if (*theory_cmd) return cmd_theory(th_n, th_lambda, th_p, th_variant, th_out);
    if (*repro_cmd) return cmd_reproduce(exhibit_id, run_opts);
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return exit_usage;
  } catch (const ConfigurationError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return exit_usage;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return exit_runtime;
  }
  return exit_usage;
}
