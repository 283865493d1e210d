#include "dbbo/algorithms.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>

namespace dbbo {

namespace {

std::string format_number(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

double parse_number(std::string_view text, std::string_view key) {
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(value)) {
    throw ConfigurationError("invalid value '" + std::string(text) + "' for " + std::string(key));
  }
  return value;
}

std::size_t parse_count(std::string_view text, std::string_view key) {
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw ConfigurationError("invalid integer '" + std::string(text) + "' for " + std::string(key));
  }
  return value;
}

RatePolicy parse_rate(std::string_view text) {
  if (text == "pstar") return RatePolicy::p_star();
  if (text.size() >= 2 && text.substr(text.size() - 2) == "/n") {
    return RatePolicy::per_dimension(parse_number(text.substr(0, text.size() - 2), "p"));
  }
  return RatePolicy::fixed(parse_number(text, "p"));
}

std::string_view rule_name(LambdaRule rule) {
  switch (rule) {
    case LambdaRule::divide_by_successes: return "div_s";
    case LambdaRule::reset_on_success: return "reset";
    case LambdaRule::halve_on_success: return "halve";
  }
  return "?";
}

LambdaRule parse_rule(std::string_view text) {
  if (text == "div_s") return LambdaRule::divide_by_successes;
  if (text == "reset" || text == "one") return LambdaRule::reset_on_success;
  if (text == "halve" || text == "half") return LambdaRule::halve_on_success;
  throw ConfigurationError("unknown lambda rule '" + std::string(text) + "' (div_s, reset, halve)");
}

// Clamp for dimension-derived rates; tiny n would otherwise give p >= 1.
double clamp_rate(double p, std::size_t n) {
  const double nd = static_cast<double>(n);
  return std::clamp(p, std::min(1.0 / (nd * nd), 0.5), 0.5);
}

// Uniform choice among the maximum-fitness members of {parent, offspring...},
// maintained by reservoir sampling so offspring need not be stored.
struct PlusSelection {
  int best;
  std::size_t ties = 1;
  bool parent_chosen = true;

  explicit PlusSelection(int parent_fitness) : best(parent_fitness) {}

  // True when the candidate becomes the current choice.
  bool offer(int fitness, Rng& rng) {
    if (fitness > best) {
      best = fitness;
      ties = 1;
      parent_chosen = false;
      return true;
    }
    if (fitness == best) {
      ++ties;
      if (rng.uniform_index(ties) == 0) {
        parent_chosen = false;
        return true;
      }
    }
    return false;
  }
};

// Creates `count` offspring of state.parent, evaluating each one, and applies
// plus selection. strength_of(i) gives the mutation strength of offspring i;
// observe(i, fitness) sees every evaluated offspring in order. Stops early
// when the evaluator is done.
template <class StrengthFn, class Observer>
GenerationReport breed_and_select(GenerationState& state, Evaluator& evaluator, Rng& rng,
                                  Workspace& ws, std::size_t count, StrengthFn strength_of,
                                  Observer observe) {
  GenerationReport report;
  report.min_strength = std::numeric_limits<std::size_t>::max();
  PlusSelection selection(state.parent_fitness);
  ws.chosen_flips.clear();

  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t strength = strength_of(i);
    auto flips = ws.sampler.sample(strength, rng);
    for (auto pos : flips) state.parent.flip(pos);
    const int fitness = evaluator.evaluate(state.parent);
    for (auto pos : flips) state.parent.flip(pos);

    ++report.offspring_evaluated;
    report.min_strength = std::min(report.min_strength, strength);
    report.max_strength = std::max(report.max_strength, strength);
    if (fitness >= state.parent_fitness) ++report.successes;
    if (fitness > state.parent_fitness) report.strict_improvement = true;

    if (selection.offer(fitness, rng)) ws.chosen_flips.assign(flips.begin(), flips.end());
    observe(i, fitness);
    if (evaluator.done()) break;
  }
  if (report.offspring_evaluated == 0) report.min_strength = 0;

  if (!selection.parent_chosen) {
    for (auto pos : ws.chosen_flips) state.parent.flip(pos);
    state.parent_fitness = selection.best;
  }
  state.evaluations_used = evaluator.evaluations();
  return report;
}

}  // namespace

double RatePolicy::rate(std::size_t n, std::size_t lambda) const {
  const double nd = static_cast<double>(n);
  switch (kind) {
    case Kind::fixed: return value;
    case Kind::per_dimension: return clamp_rate(value / nd, n);
    case Kind::p_star: return clamp_rate(std::log(static_cast<double>(lambda)) / (2.0 * nd), n);
  }
  return value;
}

std::string RatePolicy::to_string() const {
  switch (kind) {
    case Kind::fixed: return format_number(value);
    case Kind::per_dimension: return format_number(value) + "/n";
    case Kind::p_star: return "pstar";
  }
  return "?";
}

AlgorithmSpec AlgorithmSpec::static_ea(std::size_t lambda, RatePolicy rate) {
  AlgorithmSpec s;
  s.kind = AlgorithmKind::static_ea;
  s.lambda_init = lambda;
  s.rate = rate;
  return s;
}

AlgorithmSpec AlgorithmSpec::two_rate(std::size_t lambda, double r_init) {
  AlgorithmSpec s;
  s.kind = AlgorithmKind::two_rate_ea;
  s.lambda_init = lambda;
  s.r_init = r_init;
  return s;
}

AlgorithmSpec AlgorithmSpec::adaptive_lambda(LambdaRule rule, std::size_t lambda_init) {
  AlgorithmSpec s;
  s.kind = AlgorithmKind::adaptive_lambda_ea;
  s.lambda_rule = rule;
  s.lambda_init = lambda_init;
  return s;
}

AlgorithmSpec AlgorithmSpec::rls() {
  AlgorithmSpec s;
  s.kind = AlgorithmKind::rls;
  return s;
}

void AlgorithmSpec::validate() const {
  if (lambda_init < 1) throw ConfigurationError("lambda must be at least 1");
  if (kind == AlgorithmKind::two_rate_ea) {
    if (lambda_init < 2) throw ConfigurationError("two-rate EA needs lambda >= 2");
    if (!(r_init >= 2.0)) throw ConfigurationError("two-rate EA needs r0 >= 2");
  }
  if (kind == AlgorithmKind::adaptive_lambda_ea && lambda_max < lambda_init) {
    throw ConfigurationError("lambda_max is smaller than the initial lambda");
  }
  if (rate.kind == RatePolicy::Kind::fixed && !(rate.value > 0.0 && rate.value < 1.0)) {
    throw ConfigurationError("fixed mutation rate must lie in (0, 1)");
  }
  if (rate.kind == RatePolicy::Kind::per_dimension && !(rate.value > 0.0)) {
    throw ConfigurationError("mutation rate factor c in c/n must be positive");
  }
}

std::string AlgorithmSpec::descriptor() const {
  switch (kind) {
    case AlgorithmKind::static_ea:
      return "ea_gt0,lambda=" + std::to_string(lambda_init) + ",p=" + rate.to_string();
    case AlgorithmKind::two_rate_ea:
      return "two_rate,lambda=" + std::to_string(lambda_init) + ",r0=" + format_number(r_init);
    case AlgorithmKind::adaptive_lambda_ea: {
      std::string s = "adaptlambda,rule=" + std::string(rule_name(lambda_rule)) +
                      ",lambda0=" + std::to_string(lambda_init);
      if (!(rate == RatePolicy::per_dimension(1.0))) s += ",p=" + rate.to_string();
      if (lambda_max != default_lambda_max) s += ",lambda_max=" + std::to_string(lambda_max);
      return s;
    }
    case AlgorithmKind::rls: return "rls";
  }
  return "?";
}

AlgorithmSpec parse_algorithm(std::string_view descriptor) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    auto comma = descriptor.find(',', start);
    parts.push_back(descriptor.substr(start, comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  const std::string_view name = parts.front();
  AlgorithmSpec spec;
  if (name == "ea_gt0") {
    spec = AlgorithmSpec::static_ea(1);
  } else if (name == "two_rate") {
    spec = AlgorithmSpec::two_rate();
  } else if (name == "adaptlambda") {
    spec = AlgorithmSpec::adaptive_lambda(LambdaRule::divide_by_successes);
  } else if (name == "rls") {
    spec = AlgorithmSpec::rls();
  } else {
    throw ConfigurationError("unknown algorithm '" + std::string(name) + "'");
  }

  for (std::size_t i = 1; i < parts.size(); ++i) {
    const auto eq = parts[i].find('=');
    if (eq == std::string_view::npos) {
      throw ConfigurationError("expected key=value in algorithm descriptor, got '" + std::string(parts[i]) + "'");
    }
    const auto key = parts[i].substr(0, eq);
    const auto value = parts[i].substr(eq + 1);
    const bool ea = spec.kind == AlgorithmKind::static_ea;
    const bool two = spec.kind == AlgorithmKind::two_rate_ea;
    const bool adapt = spec.kind == AlgorithmKind::adaptive_lambda_ea;
    if (key == "lambda" && (ea || two)) {
      spec.lambda_init = parse_count(value, key);
    } else if (key == "lambda0" && adapt) {
      spec.lambda_init = parse_count(value, key);
    } else if (key == "p" && (ea || adapt)) {
      spec.rate = parse_rate(value);
    } else if (key == "r0" && two) {
      spec.r_init = parse_number(value, key);
    } else if (key == "rule" && adapt) {
      spec.lambda_rule = parse_rule(value);
    } else if (key == "lambda_max" && adapt) {
      spec.lambda_max = parse_count(value, key);
    } else {
      throw ConfigurationError("unexpected key '" + std::string(key) + "' for algorithm '" +
                               std::string(name) + "'");
    }
  }
  spec.validate();
  return spec;
}

Evaluator::Evaluator(const ProblemInstance& instance, RunRecord& record,
                     std::optional<std::uint64_t> budget)
    : instance_(instance), record_(record), budget_(budget) {
  if (budget_ && *budget_ == 0) throw std::invalid_argument("evaluation budget must be positive");
}

int Evaluator::evaluate(const BitString& x) {
  if (done()) throw std::logic_error("evaluate called after the run stopped");
  const int fitness = instance_.evaluate(x);
  ++evaluations_;
  record_evaluation(record_, evaluations_, fitness);
  if (fitness == instance_.optimum_value()) optimum_found_ = true;
  return fitness;
}

double next_rate(double r, std::optional<RateGroup> winner, bool adopt_winner, bool draw_high,
                 std::size_t n) {
  double proposed;
  if (adopt_winner && winner) {
    proposed = *winner == RateGroup::low ? r / 2.0 : 2.0 * r;
  } else {
    proposed = draw_high ? 2.0 * r : r / 2.0;
  }
  const double upper = static_cast<double>(n) / 4.0;
  return std::max(2.0, std::min(proposed, upper));
}

std::size_t next_lambda(LambdaRule rule, std::size_t lambda, std::size_t successes,
                        std::size_t lambda_max) {
  std::size_t next;
  if (successes == 0) {
    next = lambda > lambda_max / 2 ? lambda_max : 2 * lambda;
  } else {
    switch (rule) {
      case LambdaRule::divide_by_successes: next = lambda / successes; break;
      case LambdaRule::reset_on_success: next = 1; break;
      case LambdaRule::halve_on_success: next = lambda / 2; break;
      default: next = lambda;
    }
  }
  return std::clamp<std::size_t>(next, 1, lambda_max);
}

GenerationState initialize(const AlgorithmSpec& spec, Evaluator& evaluator, Rng& rng) {
  GenerationState state;
  state.parent = random_bitstring(evaluator.instance().dimension(), rng);
  state.parent_fitness = evaluator.evaluate(state.parent);
  state.lambda = spec.kind == AlgorithmKind::rls ? 1 : spec.lambda_init;
  state.r = spec.r_init;
  state.evaluations_used = evaluator.evaluations();
  return state;
}

GenerationReport step_static(GenerationState& state, const AlgorithmSpec& spec, Evaluator& evaluator,
                             Rng& rng, Workspace& ws) {
  const std::size_t n = state.parent.size();
  const MutationRate p(spec.rate.rate(n, state.lambda));
  return breed_and_select(
      state, evaluator, rng, ws, state.lambda,
      [&](std::size_t) { return sample_conditional_binomial(n, p, rng); }, [](std::size_t, int) {});
}

GenerationReport step_two_rate(GenerationState& state, const AlgorithmSpec& spec, Evaluator& evaluator,
                               Rng& rng, Workspace& ws) {
  (void)spec;
  if (state.lambda < 2) throw ConfigurationError("two-rate EA needs lambda >= 2");
  const std::size_t n = state.parent.size();
  const double nd = static_cast<double>(n);
  const std::size_t low_count = (state.lambda + 1) / 2;
  const MutationRate low_rate(std::min(state.r / (2.0 * nd), 0.5));
  const MutationRate high_rate(std::min(2.0 * state.r / nd, 0.5));

  int best_offspring = std::numeric_limits<int>::min();
  std::size_t best_ties = 0;
  RateGroup best_group = RateGroup::low;

  auto report = breed_and_select(
      state, evaluator, rng, ws, state.lambda,
      [&](std::size_t i) {
        return sample_conditional_binomial(n, i < low_count ? low_rate : high_rate, rng);
      },
      [&](std::size_t i, int fitness) {
        const RateGroup group = i < low_count ? RateGroup::low : RateGroup::high;
        if (fitness > best_offspring) {
          best_offspring = fitness;
          best_ties = 1;
          best_group = group;
        } else if (fitness == best_offspring) {
          ++best_ties;
          if (rng.uniform_index(best_ties) == 0) best_group = group;
        }
      });

  if (!evaluator.done()) {
    const bool adopt = rng.coin();
    const bool draw_high = adopt ? false : rng.coin();
    state.r = next_rate(state.r, best_group, adopt, draw_high, n);
  }
  return report;
}

GenerationReport step_adaptive_lambda(GenerationState& state, const AlgorithmSpec& spec,
                                      Evaluator& evaluator, Rng& rng, Workspace& ws) {
  const std::size_t n = state.parent.size();
  const MutationRate p(spec.rate.rate(n, state.lambda));
  auto report = breed_and_select(
      state, evaluator, rng, ws, state.lambda,
      [&](std::size_t) { return sample_conditional_binomial(n, p, rng); }, [](std::size_t, int) {});
  if (!evaluator.done()) {
    const std::size_t s = spec.lambda_rule == LambdaRule::divide_by_successes
                              ? report.successes
                              : static_cast<std::size_t>(report.strict_improvement);
    state.lambda = next_lambda(spec.lambda_rule, state.lambda, s, spec.lambda_max);
  }
  return report;
}

GenerationReport step_rls(GenerationState& state, Evaluator& evaluator, Rng& rng, Workspace& ws) {
  return breed_and_select(
      state, evaluator, rng, ws, 1, [](std::size_t) { return std::size_t{1}; }, [](std::size_t, int) {});
}

GenerationReport step(GenerationState& state, const AlgorithmSpec& spec, Evaluator& evaluator, Rng& rng,
                      Workspace& ws) {
  switch (spec.kind) {
    case AlgorithmKind::static_ea: return step_static(state, spec, evaluator, rng, ws);
    case AlgorithmKind::two_rate_ea: return step_two_rate(state, spec, evaluator, rng, ws);
    case AlgorithmKind::adaptive_lambda_ea: return step_adaptive_lambda(state, spec, evaluator, rng, ws);
    case AlgorithmKind::rls: return step_rls(state, evaluator, rng, ws);
  }
  throw ConfigurationError("unknown algorithm kind");
}

RunRecord run(const AlgorithmSpec& spec, const ProblemInstance& instance,
              std::optional<std::uint64_t> budget, Rng& rng) {
  spec.validate();
  RunRecord record(instance.dimension());
  record.algorithm = spec.descriptor();
  record.problem = instance.descriptor();
  record.seed = rng.seed();

  Evaluator evaluator(instance, record, budget);
  Workspace ws(instance.dimension());
  GenerationState state = initialize(spec, evaluator, rng);
  while (!evaluator.done()) step(state, spec, evaluator, rng, ws);

  record.total_evaluations = evaluator.evaluations();
  record.success = evaluator.optimum_found();
  return record;
}

}  // namespace dbbo
