#include "dbbo/profiler.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <charconv>
#include <fstream>
#include <istream>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include "dbbo/csv.hpp"
#include "dbbo/stats.hpp"

namespace dbbo {

// ---- run records -----------------------------------------------------------

void record_evaluation(RunRecord& record, std::uint64_t eval_count, int fitness) {
  if (eval_count <= record.total_evaluations) {
    throw std::logic_error("record_evaluation: evaluation count " + std::to_string(eval_count) +
                           " does not exceed " + std::to_string(record.total_evaluations));
  }
  if (fitness < 0 || static_cast<std::size_t>(fitness) >= record.first_hit.size()) {
    throw std::out_of_range("record_evaluation: fitness " + std::to_string(fitness) + " outside [0..n]");
  }
  record.total_evaluations = eval_count;
  for (int v = record.final_fitness + 1; v <= fitness; ++v) {
    record.first_hit[static_cast<std::size_t>(v)] = eval_count;
  }
  if (fitness > record.final_fitness) record.final_fitness = fitness;
  if (static_cast<std::size_t>(fitness) == record.dimension()) record.success = true;
}

int fixed_budget_value(const RunRecord& record, std::int64_t budget) {
  if (budget < 1) throw std::invalid_argument("fixed_budget_value: budget must be at least 1");
  int best = -1;
  for (std::size_t v = 0; v < record.first_hit.size(); ++v) {
    const auto& t = record.first_hit[v];
    if (!t || *t > static_cast<std::uint64_t>(budget)) break;
    best = static_cast<int>(v);
  }
  return best;
}

std::vector<Improvement> improvements(const RunRecord& record) {
  std::vector<Improvement> out;
  for (std::size_t v = 0; v < record.first_hit.size(); ++v) {
    const auto& t = record.first_hit[v];
    if (!t) break;
    const bool last_of_level =
        v + 1 == record.first_hit.size() || !record.first_hit[v + 1] || *record.first_hit[v + 1] != *t;
    if (last_of_level) out.push_back({static_cast<int>(v), *t});
  }
  return out;
}

RunRecord record_from_improvements(std::size_t n, const std::vector<Improvement>& points) {
  RunRecord record(n);
  auto sorted = points;
  std::sort(sorted.begin(), sorted.end(),
            [](const Improvement& a, const Improvement& b) { return a.evaluations < b.evaluations; });
  for (const auto& p : sorted) record_evaluation(record, p.evaluations, p.fitness);
  return record;
}

// ---- experiment ------------------------------------------------------------

void ExperimentConfig::validate() const {
  if (algorithms.empty()) throw ConfigurationError("no algorithm configured");
  if (problems.empty()) throw ConfigurationError("no problem configured");
  if (runs_per_cell < 1) throw ConfigurationError("runs_per_cell must be at least 1");
  if (jobs < 1) throw ConfigurationError("jobs must be at least 1");
  if (budget && *budget == 0) throw ConfigurationError("budget must be positive");
  for (const auto& a : algorithms) a.validate();
  for (const auto& p : problems) {
    if (p.dimensions.empty()) throw ConfigurationError("problem without dimensions");
    if (p.instance_ids.empty()) throw ConfigurationError("problem without instance ids");
    for (auto n : p.dimensions) {
      if (n < 1) throw ConfigurationError("dimension must be at least 1");
    }
  }
}

ProblemInstance Cell::instance() const {
  return generate_instance(family, dimension, instance_id, instance_seed);
}

std::string Cell::file_stem() const {
  const std::string alg = algorithm.descriptor();
  std::string safe;
  for (char c : alg) {
    const bool keep = std::isalnum(static_cast<unsigned char>(c)) || c == '.' || c == '-';
    safe += keep ? c : '_';
  }
  return safe + "__" + std::string(to_string(family)) + "_n" + std::to_string(dimension) + "_i" +
         std::to_string(instance_id);
}

std::vector<Cell> expand_cells(const ExperimentConfig& config) {
  std::vector<Cell> cells;
  for (const auto& p : config.problems) {
    for (auto n : p.dimensions) {
      for (auto id : p.instance_ids) {
        for (const auto& a : config.algorithms) {
          cells.push_back(Cell{a, p.family, n, id, p.instance_seed.value_or(config.master_seed)});
        }
      }
    }
  }
  return cells;
}

namespace {

void write_cell_files(const std::filesystem::path& dir, CellResult& cell) {
  const auto stem = cell.cell.file_stem();
  {
    std::ofstream raw(dir / (stem + ".raw.csv"), std::ios::binary);
    write_raw(raw, cell.records);
    if (!raw) throw std::runtime_error("cannot write " + (dir / (stem + ".raw.csv")).string());
  }
  {
    std::ofstream agg(dir / (stem + ".agg.csv"), std::ios::binary);
    write_aggregate(agg, cell.records);
    if (!agg) throw std::runtime_error("cannot write " + (dir / (stem + ".agg.csv")).string());
  }
}

}  // namespace

std::vector<CellResult> run_experiment(const ExperimentConfig& config, const ExperimentOptions& options) {
  config.validate();
  const auto cells = expand_cells(config);
  const std::size_t runs = config.runs_per_cell;

  std::vector<CellResult> results(cells.size());
  std::vector<std::optional<ProblemInstance>> instances(cells.size());
  for (std::size_t c = 0; c < cells.size(); ++c) {
    results[c].cell = cells[c];
    results[c].records.resize(runs);
    try {
      instances[c] = cells[c].instance();
    } catch (const std::exception& e) {
      results[c].error = e.what();
    }
  }

  if (options.output_dir) std::filesystem::create_directories(*options.output_dir);

  // Tasks are (cell, run) pairs handed out in order; a cell is finalized
  // (files written, callback fired) by whichever worker completes its last
  // run, but only after every earlier cell, so output order is fixed.
  const std::size_t total_tasks = cells.size() * runs;
  std::atomic<std::size_t> next_task{0};
  std::vector<std::atomic<std::size_t>> remaining(cells.size());
  for (auto& r : remaining) r.store(runs);
  std::mutex error_mutex;
  std::mutex finalize_mutex;
  std::vector<bool> cell_done(cells.size(), false);
  std::size_t next_to_finalize = 0;

  auto finalize_ready = [&] {
    std::lock_guard lock(finalize_mutex);
    while (next_to_finalize < cells.size() && cell_done[next_to_finalize]) {
      auto& result = results[next_to_finalize];
      if (result.error.empty() && options.output_dir) {
        try {
          write_cell_files(*options.output_dir, result);
        } catch (const std::exception& e) {
          result.error = e.what();
        }
      }
      if (!result.error.empty()) result.records.clear();
      if (options.on_cell) options.on_cell(result, next_to_finalize, cells.size());
      ++next_to_finalize;
    }
  };

  auto worker = [&] {
    while (true) {
      const std::size_t task = next_task.fetch_add(1);
      if (task >= total_tasks) return;
      const std::size_t c = task / runs;
      const std::size_t k = task % runs;
      if (instances[c]) {
        try {
          Rng rng(derive_seed(config.master_seed, k));
          RunRecord record = run(cells[c].algorithm, *instances[c], config.budget, rng);
          record.run_index = k;
          results[c].records[k] = std::move(record);
        } catch (const std::exception& e) {
          std::lock_guard lock(error_mutex);
          if (results[c].error.empty()) results[c].error = e.what();
        }
      }
      if (remaining[c].fetch_sub(1) == 1) {
        {
          std::lock_guard lock(finalize_mutex);
          cell_done[c] = true;
        }
        finalize_ready();
      }
    }
  };

  const std::size_t threads = std::max<std::size_t>(1, std::min(config.jobs, total_tasks));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  finalize_ready();

  if (options.output_dir) {
    std::ofstream summary(*options.output_dir / "summary.csv", std::ios::binary);
    write_summary(summary, results);
    std::ofstream normalized(*options.output_dir / "normalized.csv", std::ios::binary);
    write_normalized(normalized, results);
    if (!summary || !normalized) throw std::runtime_error("cannot write summary files");
  }
  return results;
}

// ---- files -----------------------------------------------------------------

void write_raw(std::ostream& out, const std::vector<RunRecord>& records) {
  out << "run_index,seed,target,evaluations\n";
  std::vector<const RunRecord*> sorted;
  for (const auto& r : records) sorted.push_back(&r);
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const RunRecord* a, const RunRecord* b) { return a->run_index < b->run_index; });
  for (const auto* r : sorted) {
    for (const auto& p : improvements(*r)) {
      out << r->run_index << ',' << r->seed << ',' << p.fitness << ',' << p.evaluations << '\n';
    }
  }
}

namespace {

template <class T>
T parse_int(const std::string& text, const char* what, std::size_t line) {
  T value{};
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw std::runtime_error("line " + std::to_string(line) + ": invalid " + what + " '" + text + "'");
  }
  return value;
}

}  // namespace

std::vector<RunRecord> read_raw(std::istream& in, std::size_t dimension) {
  std::string line;
  if (!std::getline(in, line) || line != "run_index,seed,target,evaluations") {
    throw std::runtime_error("raw file: missing or unexpected header");
  }
  std::vector<RunRecord> out;
  std::vector<Improvement> points;
  std::optional<std::uint64_t> current_run;
  std::uint64_t current_seed = 0;
  auto flush = [&] {
    if (!current_run) return;
    RunRecord r = record_from_improvements(dimension, points);
    r.run_index = *current_run;
    r.seed = current_seed;
    out.push_back(std::move(r));
    points.clear();
  };
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    auto f = csv::split(line);
    if (f.size() != 4) throw std::runtime_error("line " + std::to_string(line_no) + ": expected 4 fields");
    const auto run_index = parse_int<std::uint64_t>(f[0], "run_index", line_no);
    const auto seed = parse_int<std::uint64_t>(f[1], "seed", line_no);
    const auto target = parse_int<int>(f[2], "target", line_no);
    const auto evals = parse_int<std::uint64_t>(f[3], "evaluations", line_no);
    if (!current_run || *current_run != run_index) {
      flush();
      current_run = run_index;
      current_seed = seed;
    }
    points.push_back({target, evals});
  }
  flush();
  return out;
}

void write_aggregate(std::ostream& out, const std::vector<RunRecord>& records, std::optional<double> cap) {
  const auto table = fixed_target_curve(records);
  out << "target,mean_evals,std_evals,hits,runs\n";
  for (const auto& [v, stats] : table.targets) {
    if (cap && !(stats.hits > 0 && stats.mean <= *cap)) continue;
    out << v << ',' << csv::number(stats.mean, 4) << ',' << csv::number(stats.std_dev, 4) << ','
        << stats.hits << ',' << table.runs << '\n';
  }
}

void write_summary(std::ostream& out, const std::vector<CellResult>& cells) {
  out << "algorithm,family,dimension,instance,runs,mean_opt_time,success_rate\n";
  for (const auto& c : cells) {
    const auto summary = mean_optimization_time(c.records);
    const std::size_t runs = c.records.size();
    const double success_rate =
        runs == 0 ? 0.0 : static_cast<double>(summary ? summary->successes : 0) / static_cast<double>(runs);
    out << csv::row({c.cell.algorithm.descriptor(), std::string(to_string(c.cell.family)),
                     std::to_string(c.cell.dimension), std::to_string(c.cell.instance_id),
                     std::to_string(runs), summary ? csv::number(summary->mean, 4) : "nan",
                     csv::number(success_rate, 4)})
        << '\n';
  }
}

void write_normalized(std::ostream& out, const std::vector<CellResult>& cells) {
  out << "algorithm,dimension,mean_opt_time,norm_nlogn,norm_n2\n";
  for (const auto& c : cells) {
    const auto s = mean_optimization_time(c.records);
    out << csv::row({c.cell.algorithm.descriptor(), std::to_string(c.cell.dimension),
                     s ? csv::number(s->mean, 4) : "nan", s ? csv::number(s->per_n_log_n, 6) : "nan",
                     s ? csv::number(s->per_n_squared, 6) : "nan"})
        << '\n';
  }
}

std::vector<SummaryRow> read_summary(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != "algorithm,family,dimension,instance,runs,mean_opt_time,success_rate") {
    throw std::runtime_error("summary file: missing or unexpected header");
  }
  std::vector<SummaryRow> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    auto f = csv::split(line);
    if (f.size() != 7) throw std::runtime_error("summary line " + std::to_string(line_no) + ": expected 7 fields");
    rows.push_back({f[0], parse_family(f[1]), parse_int<std::size_t>(f[2], "dimension", line_no),
                    parse_int<std::uint64_t>(f[3], "instance", line_no),
                    parse_int<std::size_t>(f[4], "runs", line_no)});
  }
  return rows;
}

std::vector<CellResult> load_results(const std::filesystem::path& dir) {
  std::ifstream summary(dir / "summary.csv");
  if (!summary) throw std::runtime_error("cannot open " + (dir / "summary.csv").string());
  std::vector<CellResult> out;
  for (const auto& row : read_summary(summary)) {
    CellResult cell;
    cell.cell = Cell{parse_algorithm(row.algorithm), row.family, row.dimension, row.instance, 0};
    const auto path = dir / (cell.cell.file_stem() + ".raw.csv");
    std::ifstream raw(path);
    if (!raw) throw std::runtime_error("cannot open " + path.string());
    cell.records = read_raw(raw, row.dimension);
    const auto problem = cell.cell.instance().descriptor();
    for (auto& r : cell.records) {
      r.algorithm = row.algorithm;
      r.problem = problem;
    }
    out.push_back(std::move(cell));
  }
  return out;
}

void write_aggregates(const std::filesystem::path& dir, const std::vector<CellResult>& cells,
                      std::optional<double> cap) {
  std::filesystem::create_directories(dir);
  for (const auto& c : cells) {
    if (!c.error.empty()) continue;
    const auto path = dir / (c.cell.file_stem() + ".agg.csv");
    std::ofstream out(path, std::ios::binary);
    write_aggregate(out, c.records, cap);
    if (!out) throw std::runtime_error("cannot write " + path.string());
  }
  std::ofstream normalized(dir / "normalized.csv", std::ios::binary);
  write_normalized(normalized, cells);
  if (!normalized) throw std::runtime_error("cannot write normalized.csv");
}

}  // namespace dbbo
