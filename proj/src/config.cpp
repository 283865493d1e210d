#include "dbbo/config.hpp"

#include <charconv>
#include <fstream>
#include <vector>

namespace dbbo {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos - start)));
    if (pos == std::string_view::npos) return out;
    start = pos + 1;
  }
}

template <class T>
T parse_unsigned(std::string_view text, const char* what) {
  T value{};
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) {
    throw std::invalid_argument(std::string("invalid ") + what + " '" + std::string(text) + "'");
  }
  return value;
}

// Dispatches one key=value pair; `replace_lists` distinguishes overrides from
// file entries, which append.
void apply_entry(ExperimentConfig& config, std::string_view key, std::string_view value, bool replace_lists) {
  if (key == "algorithm") {
    if (replace_lists) config.algorithms.clear();
    config.algorithms.push_back(parse_algorithm(value));
  } else if (key == "problem") {
    if (replace_lists) config.problems.clear();
    config.problems.push_back(parse_problem(value));
  } else if (key == "runs_per_cell" || key == "runs") {
    config.runs_per_cell = parse_unsigned<std::size_t>(value, "run count");
    if (config.runs_per_cell < 1) throw std::invalid_argument("runs_per_cell must be at least 1");
  } else if (key == "master_seed" || key == "seed") {
    config.master_seed = parse_unsigned<std::uint64_t>(value, "seed");
  } else if (key == "budget") {
    if (value == "unlimited" || value == "none") {
      config.budget.reset();
    } else {
      config.budget = parse_unsigned<std::uint64_t>(value, "budget");
      if (*config.budget == 0) throw std::invalid_argument("budget must be positive");
    }
  } else if (key == "jobs") {
    config.jobs = parse_unsigned<std::size_t>(value, "job count");
    if (config.jobs < 1) throw std::invalid_argument("jobs must be at least 1");
  } else {
    throw std::invalid_argument("unknown key");
  }
}

}  // namespace

ConfigError::ConfigError(std::size_t line, std::string field, const std::string& message)
    : std::runtime_error((line ? "line " + std::to_string(line) + ": " : std::string()) +
                         (field.empty() ? std::string() : "'" + field + "': ") + message),
      line_(line),
      field_(std::move(field)) {}

ProblemSet parse_problem(std::string_view text) {
  const auto fields = split(text, ',');
  if (fields.size() < 2 || fields.size() > 4) {
    throw std::invalid_argument("expected family,dimensions[,instance_ids[,instance_seed]]");
  }
  ProblemSet set;
  set.family = parse_family(fields[0]);
  for (auto d : split(fields[1], '|')) {
    const auto n = parse_unsigned<std::size_t>(d, "dimension");
    if (n < 1) throw std::invalid_argument("dimension must be at least 1");
    set.dimensions.push_back(n);
  }
  if (fields.size() >= 3) {
    set.instance_ids.clear();
    for (auto id : split(fields[2], '|')) set.instance_ids.push_back(parse_unsigned<std::uint64_t>(id, "instance id"));
  }
  if (fields.size() == 4) set.instance_seed = parse_unsigned<std::uint64_t>(fields[3], "instance seed");
  return set;
}

ExperimentConfig parse_config(std::istream& in) {
  ExperimentConfig config;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError(line_no, std::string(line), "expected key=value");
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    try {
      apply_entry(config, key, value, false);
    } catch (const std::exception& e) {
      throw ConfigError(line_no, std::string(key), e.what());
    }
  }
  try {
    config.validate();
  } catch (const std::exception& e) {
    throw ConfigError(0, "", e.what());
  }
  return config;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(0, "", "cannot open config file '" + path.string() + "'");
  return parse_config(in);
}

void apply_override(ExperimentConfig& config, std::string_view key_value) {
  const auto eq = key_value.find('=');
  if (eq == std::string_view::npos) {
    throw ConfigError(0, std::string(key_value), "override must be KEY=VALUE");
  }
  const auto key = trim(key_value.substr(0, eq));
  try {
    apply_entry(config, key, trim(key_value.substr(eq + 1)), true);
  } catch (const std::exception& e) {
    throw ConfigError(0, std::string(key), e.what());
  }
}

}  // namespace dbbo
