#include "dbbo/core.hpp"

#include <algorithm>
#include <numeric>

namespace dbbo {

BitString::BitString(std::size_t n, bool value) : bits_(n, value ? 1u : 0u) {}

BitString::BitString(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
  for (auto& b : bits_) {
    if (b > 1) throw std::invalid_argument("BitString: element is not 0 or 1");
  }
}

BitString BitString::from_string(std::string_view text) {
  std::vector<std::uint8_t> bits;
  bits.reserve(text.size());
  for (char c : text) {
    if (c != '0' && c != '1') {
      throw std::invalid_argument("BitString: invalid character in '" + std::string(text) + "'");
    }
    bits.push_back(c == '1' ? 1u : 0u);
  }
  return BitString(std::move(bits));
}

BitString BitString::complement() const {
  BitString out = *this;
  for (auto& b : out.bits_) b ^= 1u;
  return out;
}

std::size_t BitString::count_ones() const noexcept {
  return std::accumulate(bits_.begin(), bits_.end(), std::size_t{0});
}

std::string BitString::to_string() const {
  std::string s(bits_.size(), '0');
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    if (bits_[i]) s[i] = '1';
  }
  return s;
}

std::size_t hamming_distance(const BitString& x, const BitString& y) {
  if (x.size() != y.size()) {
    throw DimensionError("hamming_distance: lengths " + std::to_string(x.size()) + " and " +
                         std::to_string(y.size()) + " differ");
  }
  auto a = x.bits();
  auto b = y.bits();
  std::size_t d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d += static_cast<std::size_t>(a[i] != b[i]);
  return d;
}

std::uint64_t mix64(std::uint64_t x) noexcept {
  x ^= x >> 30;
  x *= 0xBF58476D1CE4E5B9ULL;
  x ^= x >> 27;
  x *= 0x94D049BB133111EBULL;
  x ^= x >> 31;
  return x;
}

std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t run_index) noexcept {
  return mix64(master_seed + (run_index + 1) * 0x9E3779B97F4A7C15ULL);
}

__extension__ using u128 = unsigned __int128;

std::uint64_t Rng::uniform_index(std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("Rng::uniform_index: bound must be positive");
  // Lemire's multiply-shift with rejection of the biased low region.
  u128 m = static_cast<u128>(engine_()) * bound;
  auto low = static_cast<std::uint64_t>(m);
  if (low < bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    while (low < threshold) {
      m = static_cast<u128>(engine_()) * bound;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

double Rng::uniform_real() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

BitString random_bitstring(std::size_t n, Rng& rng) {
  if (n == 0) throw DimensionError("random_bitstring: dimension must be at least 1");
  std::vector<std::uint8_t> bits(n);
  std::size_t i = 0;
  while (i < n) {
    std::uint64_t word = rng.next_u64();
    for (int b = 0; b < 64 && i < n; ++b, ++i) {
      bits[i] = static_cast<std::uint8_t>(word & 1u);
      word >>= 1;
    }
  }
  return BitString(std::move(bits));
}

}  // namespace dbbo
