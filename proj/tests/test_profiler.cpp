#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "dbbo/profiler.hpp"

using namespace dbbo;
namespace fs = std::filesystem;

namespace {

RunRecord trace(std::size_t n, const std::vector<int>& fitness) {
  RunRecord r(n);
  for (std::size_t i = 0; i < fitness.size(); ++i) record_evaluation(r, i + 1, fitness[i]);
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch_dir(const std::string& name) {
  auto dir = fs::temp_directory_path() / ("dbbo_test_" + name);
  fs::remove_all(dir);
  return dir;
}

}  // namespace

TEST_CASE("record_evaluation fills skipped targets") {
  const auto r = trace(5, {2, 2, 3, 3, 5});
  const std::vector<std::optional<std::uint64_t>> expected{1, 1, 1, 3, 5, 5};
  CHECK(r.first_hit == expected);
  CHECK(r.success);
  CHECK(r.final_fitness == 5);
  CHECK(r.total_evaluations == 5);
  CHECK(r.optimization_time() == 5u);
}

TEST_CASE("constant fitness sets only the initial targets") {
  const auto r = trace(6, {3, 3, 3, 3});
  for (int v = 0; v <= 3; ++v) CHECK(r.hit(v) == 1u);
  for (int v = 4; v <= 6; ++v) CHECK_FALSE(r.hit(v).has_value());
  CHECK_FALSE(r.success);
}

TEST_CASE("lower fitness values never overwrite earlier hits") {
  const auto r = trace(6, {3, 1, 4, 2});
  CHECK(r.hit(3) == 1u);
  CHECK(r.hit(4) == 3u);
}

TEST_CASE("record_evaluation rejects out-of-order counts") {
  RunRecord r(4);
  record_evaluation(r, 1, 1);
  record_evaluation(r, 2, 1);
  CHECK_THROWS_AS(record_evaluation(r, 2, 3), std::logic_error);
  CHECK_THROWS_AS(record_evaluation(r, 1, 3), std::logic_error);
  CHECK_THROWS(record_evaluation(r, 5, 9));
}

TEST_CASE("fixed_budget_value inverts first_hit") {
  const auto r = trace(5, {2, 2, 3, 3, 5});
  CHECK(fixed_budget_value(r, 4) == 3);
  CHECK(fixed_budget_value(r, 1) == 2);
  CHECK(fixed_budget_value(r, 5) == 5);
  CHECK(fixed_budget_value(r, 1000) == 5);
  CHECK_THROWS_AS(fixed_budget_value(r, 0), std::invalid_argument);
}

TEST_CASE("first_hit is monotone and Galois-inverse to fixed_budget_value") {
  Rng rng(4);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng.uniform_index(40);
    std::vector<int> fitness;
    const std::size_t evals = 1 + rng.uniform_index(60);
    for (std::size_t i = 0; i < evals; ++i) fitness.push_back(static_cast<int>(rng.uniform_index(n + 1)));
    const auto r = trace(n, fitness);
    for (std::size_t v = 1; v <= n; ++v) {
      if (r.first_hit[v]) {
        REQUIRE(r.first_hit[v - 1]);
        REQUIRE(*r.first_hit[v - 1] <= *r.first_hit[v]);
        REQUIRE(fixed_budget_value(r, static_cast<std::int64_t>(*r.first_hit[v])) >= static_cast<int>(v));
      }
    }
    REQUIRE(*r.hit(r.final_fitness) <= r.total_evaluations);
    REQUIRE(record_from_improvements(n, improvements(r)).first_hit == r.first_hit);
  }
}

TEST_CASE("raw files round-trip") {
  std::vector<RunRecord> records{trace(5, {2, 2, 3, 3, 5}), trace(5, {0, 4, 4, 5})};
  records[0].run_index = 0;
  records[0].seed = 11;
  records[1].run_index = 1;
  records[1].seed = 12;
  std::stringstream ss;
  write_raw(ss, records);
  CHECK(ss.str() ==
        "run_index,seed,target,evaluations\n"
        "0,11,2,1\n0,11,3,3\n0,11,5,5\n"
        "1,12,0,1\n1,12,4,2\n1,12,5,4\n");
  const auto back = read_raw(ss, 5);
  REQUIRE(back.size() == 2);
  CHECK(back[0].first_hit == records[0].first_hit);
  CHECK(back[1].first_hit == records[1].first_hit);
  CHECK(back[1].seed == 12);

  std::stringstream bad("run_index,seed,target\n");
  CHECK_THROWS(read_raw(bad, 5));
}

TEST_CASE("aggregate file schema") {
  std::vector<RunRecord> records{trace(3, {1, 2, 3}), trace(3, {1, 1, 1, 3})};
  std::stringstream ss;
  write_aggregate(ss, records);
  CHECK(ss.str() ==
        "target,mean_evals,std_evals,hits,runs\n"
        "0,1.0000,0.0000,2,2\n"
        "1,1.0000,0.0000,2,2\n"
        "2,3.0000,1.4142,2,2\n"
        "3,3.5000,0.7071,2,2\n");
  std::stringstream capped;
  write_aggregate(capped, records, 1.0);
  CHECK(capped.str() == "target,mean_evals,std_evals,hits,runs\n0,1.0000,0.0000,2,2\n1,1.0000,0.0000,2,2\n");
}

namespace {

ExperimentConfig small_config() {
  ExperimentConfig config;
  config.algorithms = {AlgorithmSpec::static_ea(1), AlgorithmSpec::two_rate(4)};
  config.problems = {ProblemSet{ProblemFamily::one_max, {30}, {0}, {}}};
  config.runs_per_cell = 100;
  config.master_seed = 77;
  return config;
}

}  // namespace

TEST_CASE("experiment bookkeeping and files") {
  const auto dir = scratch_dir("experiment");
  ExperimentOptions options;
  options.output_dir = dir;
  std::vector<std::size_t> seen;
  options.on_cell = [&](const CellResult&, std::size_t i, std::size_t total) {
    CHECK(total == 2);
    seen.push_back(i);
  };
  const auto results = run_experiment(small_config(), options);
  REQUIRE(results.size() == 2);
  CHECK(seen == std::vector<std::size_t>{0, 1});
  std::size_t total_records = 0;
  for (const auto& c : results) {
    CHECK(c.error.empty());
    total_records += c.records.size();
    for (std::size_t k = 0; k < c.records.size(); ++k) {
      CHECK(c.records[k].run_index == k);
      CHECK(c.records[k].seed == derive_seed(77, k));
      CHECK(c.records[k].success);
    }
  }
  CHECK(total_records == 200);

  std::size_t raw_files = 0;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.path().string().ends_with(".raw.csv")) ++raw_files;
  }
  CHECK(raw_files == 2);
  CHECK(fs::exists(dir / "summary.csv"));
  CHECK(fs::exists(dir / "normalized.csv"));
  CHECK(fs::exists(dir / (results[0].cell.file_stem() + ".agg.csv")));

  const auto summary = slurp(dir / "summary.csv");
  CHECK(summary.starts_with("algorithm,family,dimension,instance,runs,mean_opt_time,success_rate\n"
                            "\"ea_gt0,lambda=1,p=1/n\",onemax,30,0,100,"));

  // Replaying any stored record reproduces its trace.
  const auto inst = results[1].cell.instance();
  for (std::size_t k : {0u, 17u, 99u}) {
    Rng rng(results[1].records[k].seed);
    const auto again = run(results[1].cell.algorithm, inst, std::nullopt, rng);
    CHECK(again.first_hit == results[1].records[k].first_hit);
  }

  const auto loaded = load_results(dir);
  REQUIRE(loaded.size() == 2);
  for (std::size_t c = 0; c < 2; ++c) {
    REQUIRE(loaded[c].records.size() == 100);
    for (std::size_t k = 0; k < 100; ++k) {
      CHECK(loaded[c].records[k].first_hit == results[c].records[k].first_hit);
    }
  }
}

TEST_CASE("same master seed, byte-identical raw files, independent of job count") {
  auto config = small_config();
  config.runs_per_cell = 20;
  const auto a = scratch_dir("det_a");
  const auto b = scratch_dir("det_b");
  run_experiment(config, {a, {}});
  config.jobs = 3;
  run_experiment(config, {b, {}});
  for (const auto& entry : fs::directory_iterator(a)) {
    CHECK(slurp(entry.path()) == slurp(b / entry.path().filename()));
  }
  config.master_seed = 78;
  const auto c = scratch_dir("det_c");
  run_experiment(config, {c, {}});
  const auto stem = expand_cells(config)[0].file_stem() + ".raw.csv";
  CHECK(slurp(a / stem) != slurp(c / stem));
}

TEST_CASE("a failing cell does not abort the others") {
  auto config = small_config();
  config.runs_per_cell = 5;
  const auto dir = scratch_dir("failing");
  const auto cells = expand_cells(config);
  // A directory squatting on the raw file name makes that cell's write fail.
  fs::create_directories(dir / (cells[0].file_stem() + ".raw.csv"));
  const auto results = run_experiment(config, {dir, {}});
  REQUIRE(results.size() == 2);
  CHECK_FALSE(results[0].error.empty());
  CHECK(results[0].records.empty());
  CHECK(results[1].error.empty());
  CHECK(results[1].records.size() == 5);
  CHECK(fs::is_regular_file(dir / (cells[1].file_stem() + ".raw.csv")));
  CHECK(fs::exists(dir / "summary.csv"));
}

TEST_CASE("budget exhaustion is recorded as failure") {
  auto config = small_config();
  config.runs_per_cell = 2;
  config.budget = 5;
  for (const auto& c : run_experiment(config)) {
    CHECK(c.error.empty());
    for (const auto& r : c.records) {
      CHECK_FALSE(r.success);
      CHECK(r.total_evaluations == 5);
    }
  }
}

TEST_CASE("config validation") {
  ExperimentConfig config;
  CHECK_THROWS(config.validate());
  config = small_config();
  config.runs_per_cell = 0;
  CHECK_THROWS(config.validate());
  config = small_config();
  config.problems[0].dimensions.clear();
  CHECK_THROWS(config.validate());
}
