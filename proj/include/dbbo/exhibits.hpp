#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string_view>
#include <vector>

#include "dbbo/profiler.hpp"

namespace dbbo {

enum class Exhibit { fig1, fig2, fig3, fig4, table1 };

/// Throws std::invalid_argument for an unknown id.
Exhibit parse_exhibit(std::string_view id);

/// Experiment behind a figure: 100 runs per cell on canonical instances.
/// fig1: OneMax n in {500,...,3000}; fig2: OneMax n = 3000;
/// fig3: LeadingOnes n in {500,1000,1500}; fig4: LeadingOnes n = 1500.
/// Throws for table1, which needs no experiment.
ExperimentConfig exhibit_config(Exhibit exhibit, std::uint64_t master_seed);

inline constexpr double fig2_display_cap = 60000.0;

/// Gradient file `target,gradient,rolling_gradient` for one cell.
void write_gradients(const std::filesystem::path& path, const std::vector<RunRecord>& records, int window = 5,
                     std::optional<double> cap = std::nullopt);

/// `target,gradient_a,gradient_b,rolling_a,rolling_b,relative_difference`
/// comparing cell a against cell b.
void write_relative_difference(const std::filesystem::path& path, const std::vector<RunRecord>& a,
                               const std::vector<RunRecord>& b, int window = 5);

/// `lambda,n,percent_of_n2` with three decimals.
void write_table1(std::ostream& out);

}  // namespace dbbo
