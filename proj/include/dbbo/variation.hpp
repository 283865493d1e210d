#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "dbbo/core.hpp"

namespace dbbo {

/// Per-bit flip probability, strictly inside (0, 1).
class MutationRate {
 public:
  explicit MutationRate(double p) : p_(p) {
    if (!(p > 0.0 && p < 1.0)) throw std::domain_error("mutation rate must lie in (0, 1)");
  }
  double value() const noexcept { return p_; }

 private:
  double p_;
};

/// Number of flipped bits.
using MutationStrength = std::size_t;

/// l ~ Bin(n, p).
MutationStrength sample_binomial(std::size_t n, MutationRate p, Rng& rng);

/// l ~ Bin(n, p) conditioned on l > 0. Never returns 0.
MutationStrength sample_conditional_binomial(std::size_t n, MutationRate p, Rng& rng);

/// Draws uniform l-subsets of [0, n) by a partial Fisher-Yates shuffle over a
/// persistent index array; each draw costs O(l).
class FlipSampler {
 public:
  explicit FlipSampler(std::size_t n);

  std::size_t dimension() const noexcept { return index_.size(); }

  /// The returned view is valid until the next call.
  std::span<const std::uint32_t> sample(MutationStrength strength, Rng& rng);

 private:
  std::vector<std::uint32_t> index_;
};

/// Copy of x with `strength` distinct positions, chosen uniformly, flipped.
BitString mutate(const BitString& x, MutationStrength strength, Rng& rng);

}  // namespace dbbo
