#include "dbbo/exhibits.hpp"

#include <fstream>
#include <ostream>

#include "dbbo/csv.hpp"
#include "dbbo/stats.hpp"
#include "dbbo/theory.hpp"

namespace dbbo {

Exhibit parse_exhibit(std::string_view id) {
  if (id == "fig1") return Exhibit::fig1;
  if (id == "fig2") return Exhibit::fig2;
  if (id == "fig3") return Exhibit::fig3;
  if (id == "fig4") return Exhibit::fig4;
  if (id == "table1") return Exhibit::table1;
  throw std::invalid_argument("unknown exhibit '" + std::string(id) + "' (fig1, fig2, fig3, fig4, table1)");
}

namespace {

std::vector<AlgorithmSpec> profiled_variants(std::vector<std::size_t> lambdas, bool with_p_star) {
  std::vector<AlgorithmSpec> algs;
  for (auto lambda : lambdas) algs.push_back(AlgorithmSpec::static_ea(lambda));
  if (with_p_star) algs.push_back(AlgorithmSpec::static_ea(50, RatePolicy::p_star()));
  algs.push_back(AlgorithmSpec::two_rate(50, 2.0));
  algs.push_back(AlgorithmSpec::adaptive_lambda(LambdaRule::divide_by_successes, 50));
  algs.push_back(AlgorithmSpec::adaptive_lambda(LambdaRule::reset_on_success, 50));
  algs.push_back(AlgorithmSpec::adaptive_lambda(LambdaRule::halve_on_success, 50));
  return algs;
}

}  // namespace

ExperimentConfig exhibit_config(Exhibit exhibit, std::uint64_t master_seed) {
  ExperimentConfig config;
  config.master_seed = master_seed;
  config.runs_per_cell = 100;
  switch (exhibit) {
    case Exhibit::fig1:
      config.algorithms = profiled_variants({1, 2, 5, 10, 50}, true);
      config.problems.push_back({ProblemFamily::one_max, {500, 1000, 1500, 2000, 2500, 3000}, {0}, {}});
      break;
    case Exhibit::fig2:
      config.algorithms = profiled_variants({1, 2, 50}, true);
      config.problems.push_back({ProblemFamily::one_max, {3000}, {0}, {}});
      break;
    case Exhibit::fig3:
      config.algorithms = profiled_variants({1, 2, 5, 10, 50}, false);
      config.problems.push_back({ProblemFamily::leading_ones, {500, 1000, 1500}, {0}, {}});
      break;
    case Exhibit::fig4:
      config.algorithms = {AlgorithmSpec::static_ea(1), AlgorithmSpec::static_ea(50),
                           AlgorithmSpec::adaptive_lambda(LambdaRule::divide_by_successes, 50),
                           AlgorithmSpec::two_rate(50, 2.0), AlgorithmSpec::rls()};
      config.problems.push_back({ProblemFamily::leading_ones, {1500}, {0}, {}});
      break;
    case Exhibit::table1:
      throw std::invalid_argument("table1 is computed from the closed-form bound, not by experiment");
  }
  return config;
}

void write_gradients(const std::filesystem::path& path, const std::vector<RunRecord>& records, int window,
                     std::optional<double> cap) {
  const auto table = fixed_target_curve(records);
  std::ofstream out(path, std::ios::binary);
  out << "target,gradient,rolling_gradient\n";
  for (const auto& [v, stats] : table.targets) {
    if (cap && !(stats.hits > 0 && stats.mean <= *cap)) continue;
    const auto g = gradient(table, v);
    const auto rg = rolling_gradient(table, v, window);
    out << v << ',' << (g ? csv::number(*g, 4) : "nan") << ',' << (rg ? csv::number(*rg, 4) : "nan") << '\n';
  }
  if (!out) throw std::runtime_error("cannot write " + path.string());
}

void write_relative_difference(const std::filesystem::path& path, const std::vector<RunRecord>& a,
                               const std::vector<RunRecord>& b, int window) {
  const auto ta = fixed_target_curve(a);
  const auto tb = fixed_target_curve(b);
  std::ofstream out(path, std::ios::binary);
  out << "target,gradient_a,gradient_b,rolling_a,rolling_b,relative_difference\n";
  auto fmt = [](std::optional<double> x) { return x ? csv::number(*x, 4) : std::string("nan"); };
  const int n = static_cast<int>(std::min(ta.dimension, tb.dimension));
  for (int v = 1; v <= n; ++v) {
    out << v << ',' << fmt(gradient(ta, v)) << ',' << fmt(gradient(tb, v)) << ','
        << fmt(rolling_gradient(ta, v, window)) << ',' << fmt(rolling_gradient(tb, v, window)) << ','
        << fmt(relative_difference(ta, tb, v, window)) << '\n';
  }
  if (!out) throw std::runtime_error("cannot write " + path.string());
}

void write_table1(std::ostream& out) {
  out << "lambda,n,percent_of_n2\n";
  for (const auto& cell : theory::tabulate_table1()) {
    out << cell.lambda << ',' << cell.n << ',' << csv::number(cell.percent_of_n2, 3) << '\n';
  }
}

}  // namespace dbbo
