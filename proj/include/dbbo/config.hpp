#pragma once

#include <cstddef>
#include <filesystem>
#include <istream>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "dbbo/profiler.hpp"

namespace dbbo {

/// Malformed configuration; carries the 1-based line (0 for overrides and
/// whole-file problems) and the offending key.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::size_t line, std::string field, const std::string& message);
  std::size_t line() const noexcept { return line_; }
  const std::string& field() const noexcept { return field_; }

 private:
  std::size_t line_;
  std::string field_;
};

// Flat key=value format, one entry per line, '#' starts a comment:
//
//   master_seed=42
//   runs_per_cell=100
//   budget=unlimited
//   algorithm=ea_gt0,lambda=50,p=1/n
//   algorithm=adaptlambda,rule=div_s,lambda0=50
//   problem=onemax,500|1000,0
//
// `algorithm=` and `problem=` repeat. A problem line is
// family,dimensions,instance_ids[,instance_seed] with '|' separating list
// entries.

ExperimentConfig parse_config(std::istream& in);
ExperimentConfig load_config(const std::filesystem::path& path);

/// Applies one `key=value` override. Scalar keys are replaced; an
/// `algorithm` or `problem` override replaces the whole list.
void apply_override(ExperimentConfig& config, std::string_view key_value);

ProblemSet parse_problem(std::string_view text);

}  // namespace dbbo
