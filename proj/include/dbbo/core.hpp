#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace dbbo {

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Fixed-length binary vector. Positions are 0-indexed internally; reports
/// that mention positions use the same convention.
class BitString {
 public:
  BitString() = default;
  explicit BitString(std::size_t n, bool value = false);
  explicit BitString(std::vector<std::uint8_t> bits);

  /// Parses "0101..." (most significant = position 0).
  static BitString from_string(std::string_view text);

  std::size_t size() const noexcept { return bits_.size(); }
  bool operator[](std::size_t i) const noexcept { return bits_[i] != 0; }
  void flip(std::size_t i) noexcept { bits_[i] ^= 1u; }
  void set(std::size_t i, bool value) noexcept { bits_[i] = value ? 1u : 0u; }

  std::span<const std::uint8_t> bits() const noexcept { return bits_; }

  BitString complement() const;
  std::size_t count_ones() const noexcept;
  std::string to_string() const;

  friend bool operator==(const BitString&, const BitString&) = default;

 private:
  std::vector<std::uint8_t> bits_;
};

std::size_t hamming_distance(const BitString& x, const BitString& y);

/// splitmix64 finalizer; used for all seed derivations.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// Seed of run `run_index` under `master_seed`:
/// mix64(master_seed + (run_index + 1) * 0x9E3779B97F4A7C15).
std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t run_index) noexcept;

/// Single-owner random stream. The engine is std::mt19937_64, whose output
/// sequence is fixed by the standard; the conversions below are written out
/// so that draws are identical on every standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  Rng(const Rng&) = delete;
  Rng& operator=(const Rng&) = delete;
  Rng(Rng&&) = default;
  Rng& operator=(Rng&&) = default;

  std::uint64_t seed() const noexcept { return seed_; }

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on [0, bound); bound must be positive.
  std::uint64_t uniform_index(std::uint64_t bound);

  /// Uniform on [0, 1) with 53 random bits.
  double uniform_real();

  /// Uniform on (0, 1].
  double uniform_open_zero() { return 1.0 - uniform_real(); }

  bool coin() { return (engine_() >> 63) != 0; }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

BitString random_bitstring(std::size_t n, Rng& rng);

}  // namespace dbbo
