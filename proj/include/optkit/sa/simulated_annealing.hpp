#pragma once

#include <optkit/core/rng.hpp>
#include <optkit/core/types.hpp>
#include <optkit/function/objective.hpp>
#include <optkit/function/traits.hpp>

#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>

namespace optkit {

/// Metropolis criterion: improving moves are always taken, worsening ones
/// with probability exp(-delta / T). At T = 0 only non-worsening moves pass.
inline bool accept_move(double delta, double temperature, double u) noexcept {
  if (delta <= 0.0) return true;
  if (!(temperature > 0.0)) return false;
  return u < std::exp(-delta / temperature);
}

/// Exponential cooling step.
inline double cool(double temperature, double cooling_factor) noexcept {
  return temperature * cooling_factor;
}

struct SaConfig {
  /// Objective-call budget, the call at the initial point included.
  std::size_t max_evaluations = 100000;
  double initial_temperature = 10000.0;
  /// Applied once per sweep.
  double cooling_factor = 0.999;
  /// Proposals per sweep; 0 means one per coordinate.
  std::size_t moves_per_temperature = 0;
  /// Per-coordinate proposal half-width. One entry applies to every
  /// coordinate.
  Vector move_scale = Vector::Ones(1);
  std::uint64_t seed = 0;

  void validate(Eigen::Index dimension) const {
    if (max_evaluations < 1) throw std::invalid_argument("SaConfig: max_evaluations must be >= 1");
    if (!(initial_temperature >= 0.0) || !std::isfinite(initial_temperature))
      throw std::invalid_argument("SaConfig: initial_temperature must be finite and >= 0");
    if (!(cooling_factor > 0.0 && cooling_factor < 1.0))
      throw std::invalid_argument("SaConfig: cooling_factor must lie in (0, 1)");
    if (move_scale.size() != 1 && move_scale.size() != dimension)
      throw DimensionError("SaConfig: move_scale must have 1 or d entries");
    if (!(move_scale.array() > 0.0).all() || !move_scale.allFinite())
      throw std::invalid_argument("SaConfig: move_scale entries must be positive");
  }
};

struct SaState {
  Vector current;
  double current_value = 0.0;
  Vector best;
  double best_value = 0.0;
  double temperature = 0.0;
  std::size_t evaluations_used = 0;
};

/// Simulated annealing for objectives that can be evaluated.
///
/// Each sweep makes `moves_per_temperature` proposals. A proposal shifts
/// one coordinate, picked round-robin, by uniform(-scale, scale) and is
/// accepted by the Metropolis rule; the temperature is cooled after the
/// sweep. Exactly one objective call per proposal plus one at the initial
/// point, never more than max_evaluations in total. The report carries the
/// best point ever visited and a trace of the best value after each sweep.
///
/// `on_sweep`, if set, observes the state after every sweep.
template <class F>
OptimizationReport optimize_sa(F& function, const SaConfig& config, const Vector& initial,
                               const std::function<void(const SaState&)>& on_sweep = {}) {
  static_assert(CanEvaluate<F>, "optimize_sa needs Evaluate(x) or EvaluateWithGradient(x, g)");
  const Eigen::Index d = initial.size();
  if (d < 1) throw DimensionError("initial point must have at least one entry");
  config.validate(d);
  if (!initial.allFinite()) throw NonFiniteError("non-finite initial point");

  const auto start = std::chrono::steady_clock::now();
  Objective<F> objective(function);
  Rng rng(config.seed);
  const std::size_t moves =
      config.moves_per_temperature == 0 ? static_cast<std::size_t>(d) : config.moves_per_temperature;
  auto scale = [&config](Eigen::Index i) {
    return config.move_scale.size() == 1 ? config.move_scale[0] : config.move_scale[i];
  };

  SaState state;
  state.current = initial;
  state.current_value = objective.Evaluate(initial);
  state.evaluations_used = 1;
  if (!std::isfinite(state.current_value))
    throw NonFiniteError("non-finite at initial point " + detail::format_vector(initial));
  state.best = state.current;
  state.best_value = state.current_value;
  state.temperature = config.initial_temperature;

  OptimizationReport report;
  report.trace.push_back({0, state.best_value});
  report.termination_reason = TerminationReason::max_evaluations;

  Vector candidate = state.current;
  Eigen::Index coordinate = 0;
  std::size_t sweep = 0;
  while (state.evaluations_used < config.max_evaluations) {
    for (std::size_t k = 0; k < moves && state.evaluations_used < config.max_evaluations; ++k) {
      const double old = candidate[coordinate];
      candidate[coordinate] += rng.uniform(-scale(coordinate), scale(coordinate));
      const double value = objective.Evaluate(candidate);
      ++state.evaluations_used;
      if (!std::isfinite(value)) {
        report.termination_reason = TerminationReason::non_finite;
        report.message = "non-finite objective at x = " + detail::format_vector(candidate);
        break;
      }
      const double u = rng.uniform01();
      if (accept_move(value - state.current_value, state.temperature, u)) {
        state.current[coordinate] = candidate[coordinate];
        state.current_value = value;
        if (value < state.best_value) {
          state.best = state.current;
          state.best_value = value;
        }
      } else {
        candidate[coordinate] = old;
      }
      coordinate = (coordinate + 1) % d;
    }
    if (report.termination_reason == TerminationReason::non_finite) break;
    state.temperature = cool(state.temperature, config.cooling_factor);
    report.trace.push_back({++sweep, state.best_value});
    if (on_sweep) on_sweep(state);
  }

  report.final_coordinates = state.best;
  report.final_objective = state.best_value;
  report.iterations = state.evaluations_used;
  report.counters = objective.counters();
  report.wall_time =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace optkit
