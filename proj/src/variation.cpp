#include "dbbo/variation.hpp"

#include <cmath>
#include <numeric>
#include <string>

namespace dbbo {

namespace {

// Number of successes among `trials` Bernoulli(p) trials, found by jumping
// from success to success with geometric gaps. Expected cost O(trials * p).
std::size_t count_by_geometric_skips(std::size_t trials, double log_q, Rng& rng) {
  std::size_t count = 0;
  double position = -1.0;
  const double limit = static_cast<double>(trials);
  while (true) {
    const double gap = std::floor(std::log(rng.uniform_open_zero()) / log_q);
    position += gap + 1.0;
    if (position >= limit) return count;
    ++count;
  }
}

}  // namespace

MutationStrength sample_binomial(std::size_t n, MutationRate rate, Rng& rng) {
  const double p = rate.value();
  if (p > 0.5) return n - count_by_geometric_skips(n, std::log(p), rng);
  return count_by_geometric_skips(n, std::log1p(-p), rng);
}

MutationStrength sample_conditional_binomial(std::size_t n, MutationRate rate, Rng& rng) {
  if (n == 0) throw DimensionError("sample_conditional_binomial: n must be at least 1");
  const double p = rate.value();
  if (p > 0.5) {
    // P(l = 0) <= 2^-n here, so plain rejection is cheap.
    MutationStrength l = 0;
    while (l == 0) l = sample_binomial(n, rate, rng);
    return l;
  }
  // Position of the first success, conditioned to lie in [0, n), by inversion
  // of the truncated geometric distribution; the remaining trials are free.
  const double log_q = std::log1p(-p);
  const double at_least_one = -std::expm1(static_cast<double>(n) * log_q);
  const double u = rng.uniform_real();
  double first = std::floor(std::log1p(-u * at_least_one) / log_q);
  if (!(first >= 0.0)) first = 0.0;
  const double last = static_cast<double>(n - 1);
  if (first > last) first = last;
  const auto first_index = static_cast<std::size_t>(first);
  return 1 + count_by_geometric_skips(n - first_index - 1, log_q, rng);
}

FlipSampler::FlipSampler(std::size_t n) : index_(n) {
  std::iota(index_.begin(), index_.end(), 0u);
}

std::span<const std::uint32_t> FlipSampler::sample(MutationStrength strength, Rng& rng) {
  const std::size_t n = index_.size();
  if (strength > n) {
    throw std::invalid_argument("mutation strength " + std::to_string(strength) +
                                " exceeds dimension " + std::to_string(n));
  }
  // Any starting order of index_ is fine: step k picks uniformly among the
  // entries not chosen in steps 0..k-1.
  for (std::size_t k = 0; k < strength; ++k) {
    const std::size_t j = k + rng.uniform_index(n - k);
    std::swap(index_[k], index_[j]);
  }
  return std::span<const std::uint32_t>(index_.data(), strength);
}

BitString mutate(const BitString& x, MutationStrength strength, Rng& rng) {
  if (strength > x.size()) {
    throw std::invalid_argument("mutate: strength " + std::to_string(strength) + " exceeds dimension " +
                                std::to_string(x.size()));
  }
  FlipSampler sampler(x.size());
  BitString y = x;
  for (auto i : sampler.sample(strength, rng)) y.flip(i);
  return y;
}

}  // namespace dbbo
