#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "dbbo/core.hpp"

namespace dbbo {

enum class ProblemFamily { one_max, leading_ones };

std::string_view to_string(ProblemFamily family);
ProblemFamily parse_family(std::string_view text);

/// A concrete OneMax_z or LeadingOnes_{z,sigma} function.
///
/// OneMax_z(x) counts the positions where x agrees with z. LeadingOnes_{z,sigma}(x)
/// is the largest i such that x agrees with z on sigma(0), ..., sigma(i-1).
/// OneMax instances carry the identity permutation.
class ProblemInstance {
 public:
  ProblemInstance(ProblemFamily family, BitString target, std::vector<std::uint32_t> permutation,
                  std::uint64_t instance_id = 0, std::uint64_t master_seed = 0);

  ProblemFamily family() const noexcept { return family_; }
  std::size_t dimension() const noexcept { return target_.size(); }
  int optimum_value() const noexcept { return static_cast<int>(target_.size()); }
  std::uint64_t instance_id() const noexcept { return instance_id_; }
  std::uint64_t master_seed() const noexcept { return master_seed_; }
  const BitString& target() const noexcept { return target_; }
  const std::vector<std::uint32_t>& permutation() const noexcept { return permutation_; }

  /// Throws DimensionError when x has the wrong length.
  int evaluate(const BitString& x) const;

  /// Text descriptor `family,n,instance_id,master_seed`; z and sigma are
  /// re-derived from it.
  std::string descriptor() const;

 private:
  ProblemFamily family_;
  BitString target_;
  std::vector<std::uint32_t> permutation_;
  bool identity_permutation_;
  std::uint64_t instance_id_;
  std::uint64_t master_seed_;
};

/// Instance 0 is canonical (z = all ones, identity permutation). Other ids
/// draw z uniformly and, for LeadingOnes, a uniform permutation, from a stream
/// seeded by (master_seed, family, n, instance_id).
ProblemInstance generate_instance(ProblemFamily family, std::size_t n, std::uint64_t instance_id,
                                  std::uint64_t master_seed);

/// Inverse of ProblemInstance::descriptor().
ProblemInstance instance_from_descriptor(std::string_view descriptor);

}  // namespace dbbo
