#include "dbbo/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace dbbo {

namespace {

constexpr double nan = std::numeric_limits<double>::quiet_NaN();

struct Moments {
  double mean = nan;
  double std_dev = nan;
};

// Two-pass mean and sample standard deviation.
Moments moments(const std::vector<double>& xs) {
  Moments m;
  if (xs.empty()) return m;
  double sum = 0.0;
  for (double x : xs) sum += x;
  m.mean = sum / static_cast<double>(xs.size());
  if (xs.size() < 2) {
    m.std_dev = 0.0;
    return m;
  }
  double ss = 0.0;
  for (double x : xs) ss += (x - m.mean) * (x - m.mean);
  m.std_dev = std::sqrt(ss / static_cast<double>(xs.size() - 1));
  return m;
}

double median_of(std::vector<double> xs) {
  if (xs.empty()) return nan;
  std::sort(xs.begin(), xs.end());
  const std::size_t mid = xs.size() / 2;
  return xs.size() % 2 ? xs[mid] : 0.5 * (xs[mid - 1] + xs[mid]);
}

}  // namespace

std::optional<OptimizationTimeSummary> mean_optimization_time(std::span<const RunRecord> records) {
  std::vector<double> times;
  std::size_t n = 0;
  for (const auto& r : records) {
    n = std::max(n, r.dimension());
    if (auto t = r.optimization_time()) times.push_back(static_cast<double>(*t));
  }
  if (times.empty()) return std::nullopt;
  const Moments m = moments(times);
  OptimizationTimeSummary s;
  s.mean = m.mean;
  s.std_dev = m.std_dev;
  s.standard_error = m.std_dev / std::sqrt(static_cast<double>(times.size()));
  const double nd = static_cast<double>(n);
  s.per_n_log_n = n > 1 ? m.mean / (nd * std::log(nd)) : nan;
  s.per_n_squared = m.mean / (nd * nd);
  s.successes = times.size();
  s.runs = records.size();
  return s;
}

double TargetStats::standard_error() const {
  return hits == 0 ? nan : std_dev / std::sqrt(static_cast<double>(hits));
}

std::optional<double> FixedTargetTable::mean(int target) const {
  const auto* t = find(target);
  if (!t || t->hits == 0) return std::nullopt;
  return t->mean;
}

const TargetStats* FixedTargetTable::find(int target) const {
  auto it = targets.find(target);
  return it == targets.end() ? nullptr : &it->second;
}

double FixedTargetTable::n_log_n() const {
  const double nd = static_cast<double>(dimension);
  return nd * std::log(nd);
}

double FixedTargetTable::n_squared() const {
  const double nd = static_cast<double>(dimension);
  return nd * nd;
}

FixedTargetTable fixed_target_curve(std::span<const RunRecord> records, std::optional<std::vector<int>> targets) {
  FixedTargetTable table;
  table.runs = records.size();
  for (const auto& r : records) table.dimension = std::max(table.dimension, r.dimension());

  std::vector<int> wanted;
  if (targets) {
    wanted = *targets;
  } else {
    wanted.resize(table.dimension + 1);
    for (std::size_t v = 0; v <= table.dimension; ++v) wanted[v] = static_cast<int>(v);
  }

  std::vector<double> hits;
  hits.reserve(records.size());
  for (int v : wanted) {
    if (v < 0 || static_cast<std::size_t>(v) > table.dimension) {
      throw std::invalid_argument("fixed_target_curve: target " + std::to_string(v) + " outside [0..n]");
    }
    hits.clear();
    for (const auto& r : records) {
      if (auto t = r.hit(v)) hits.push_back(static_cast<double>(*t));
    }
    const Moments m = moments(hits);
    TargetStats stats;
    stats.hits = hits.size();
    stats.mean = m.mean;
    stats.std_dev = m.std_dev;
    stats.median = median_of(hits);
    table.targets[v] = stats;
  }
  return table;
}

std::vector<int> targets_within_cap(const FixedTargetTable& table, double cap) {
  std::vector<int> out;
  for (const auto& [v, stats] : table.targets) {
    if (stats.hits > 0 && stats.mean <= cap) out.push_back(v);
  }
  return out;
}

std::optional<double> gradient(const FixedTargetTable& table, int target) {
  auto hi = table.mean(target);
  auto lo = table.mean(target - 1);
  if (!hi || !lo) return std::nullopt;
  return *hi - *lo;
}

std::optional<double> rolling_gradient(const FixedTargetTable& table, int target, int window) {
  if (window < 1) throw std::invalid_argument("rolling_gradient: window must be positive");
  double sum = 0.0;
  for (int j = target; j < target + window; ++j) {
    auto g = gradient(table, j);
    if (!g) return std::nullopt;
    sum += *g;
  }
  return sum / window;
}

std::optional<double> relative_difference(const FixedTargetTable& a, const FixedTargetTable& b, int target,
                                          int window) {
  auto ga = rolling_gradient(a, target, window);
  auto gb = rolling_gradient(b, target, window);
  if (!ga || !gb || *gb == 0.0) return std::nullopt;
  return *ga / *gb - 1.0;
}

}  // namespace dbbo
