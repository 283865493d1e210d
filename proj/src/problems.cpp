#include "dbbo/problems.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>

namespace dbbo {

namespace {

std::uint64_t parse_u64(std::string_view text, const char* what) {
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw std::invalid_argument(std::string("invalid ") + what + ": '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace

std::string_view to_string(ProblemFamily family) {
  switch (family) {
    case ProblemFamily::one_max: return "onemax";
    case ProblemFamily::leading_ones: return "leadingones";
  }
  return "unknown";
}

ProblemFamily parse_family(std::string_view text) {
  if (text == "onemax" || text == "OneMax" || text == "om") return ProblemFamily::one_max;
  if (text == "leadingones" || text == "LeadingOnes" || text == "lo") return ProblemFamily::leading_ones;
  throw std::invalid_argument("unknown problem family '" + std::string(text) + "'");
}

ProblemInstance::ProblemInstance(ProblemFamily family, BitString target,
                                 std::vector<std::uint32_t> permutation, std::uint64_t instance_id,
                                 std::uint64_t master_seed)
    : family_(family),
      target_(std::move(target)),
      permutation_(std::move(permutation)),
      instance_id_(instance_id),
      master_seed_(master_seed) {
  const std::size_t n = target_.size();
  if (n == 0) throw DimensionError("ProblemInstance: dimension must be at least 1");
  if (permutation_.size() != n) throw DimensionError("ProblemInstance: permutation length differs from n");
  std::vector<bool> seen(n, false);
  for (auto p : permutation_) {
    if (p >= n || seen[p]) throw std::invalid_argument("ProblemInstance: sigma is not a permutation");
    seen[p] = true;
  }
  identity_permutation_ = true;
  for (std::size_t i = 0; i < n; ++i) {
    if (permutation_[i] != i) identity_permutation_ = false;
  }
  if (family_ == ProblemFamily::one_max && !identity_permutation_) {
    throw std::invalid_argument("ProblemInstance: OneMax instances use the identity permutation");
  }
}

int ProblemInstance::evaluate(const BitString& x) const {
  if (x.size() != target_.size()) {
    throw DimensionError("evaluate: expected length " + std::to_string(target_.size()) + ", got " +
                         std::to_string(x.size()));
  }
  const auto xs = x.bits();
  const auto zs = target_.bits();
  const std::size_t n = xs.size();
  if (family_ == ProblemFamily::one_max) {
    int agree = 0;
    for (std::size_t i = 0; i < n; ++i) agree += static_cast<int>(xs[i] == zs[i]);
    return agree;
  }
  if (identity_permutation_) {
    auto first_diff = std::mismatch(xs.begin(), xs.end(), zs.begin()).first;
    return static_cast<int>(first_diff - xs.begin());
  }
  std::size_t i = 0;
  while (i < n && xs[permutation_[i]] == zs[permutation_[i]]) ++i;
  return static_cast<int>(i);
}

std::string ProblemInstance::descriptor() const {
  return std::string(to_string(family_)) + "," + std::to_string(dimension()) + "," +
         std::to_string(instance_id_) + "," + std::to_string(master_seed_);
}

ProblemInstance generate_instance(ProblemFamily family, std::size_t n, std::uint64_t instance_id,
                                  std::uint64_t master_seed) {
  if (n == 0) throw DimensionError("generate_instance: dimension must be at least 1");
  std::vector<std::uint32_t> sigma(n);
  std::iota(sigma.begin(), sigma.end(), 0u);
  if (instance_id == 0) {
    return ProblemInstance(family, BitString(n, true), std::move(sigma), 0, master_seed);
  }
  std::uint64_t seed = mix64(master_seed ^ 0x6A09E667F3BCC909ULL);
  seed = mix64(seed + static_cast<std::uint64_t>(family) + 1);
  seed = mix64(seed + n);
  seed = mix64(seed + instance_id);
  Rng rng(seed);
  BitString z = random_bitstring(n, rng);
  if (family == ProblemFamily::leading_ones) {
    for (std::size_t i = n - 1; i > 0; --i) {
      std::swap(sigma[i], sigma[rng.uniform_index(i + 1)]);
    }
  }
  return ProblemInstance(family, std::move(z), std::move(sigma), instance_id, master_seed);
}

ProblemInstance instance_from_descriptor(std::string_view descriptor) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    auto comma = descriptor.find(',', start);
    fields.push_back(descriptor.substr(start, comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  if (fields.size() != 4) {
    throw std::invalid_argument("instance descriptor needs family,n,instance_id,master_seed: '" +
                                std::string(descriptor) + "'");
  }
  return generate_instance(parse_family(fields[0]), parse_u64(fields[1], "dimension"),
                           parse_u64(fields[2], "instance id"), parse_u64(fields[3], "master seed"));
}

}  // namespace dbbo
