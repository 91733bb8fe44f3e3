#pragma once

#include <optkit/core/rng.hpp>
#include <optkit/core/types.hpp>
#include <optkit/function/objective.hpp>
#include <optkit/function/traits.hpp>
#include <optkit/update/update_policies.hpp>
#include <optkit/update/update_state.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <variant>

namespace optkit {

/// Mini-batch driver settings.
///
/// The batch objective is the plain sum of its components, not the mean, so
/// the effective step grows with batch_size. Tune step_size accordingly.
struct SgdConfig {
  double step_size = VanillaUpdate::kDefaultStepSize;
  std::size_t batch_size = 32;
  /// Cap on the total number of batch updates; 0 disables the cap.
  std::size_t max_iterations = 0;
  std::size_t max_epochs = 5;
  /// Stop when successive epoch objectives differ by less than this
  /// (absolute). 0 disables the check.
  double tolerance = 1e-5;
  bool shuffle = true;
  std::uint64_t seed = 0;

  void validate() const {
    if (!(step_size > 0.0) || !std::isfinite(step_size))
      throw std::invalid_argument("SgdConfig: step_size must be positive");
    if (batch_size < 1) throw std::invalid_argument("SgdConfig: batch_size must be at least 1");
    if (max_epochs < 1) throw std::invalid_argument("SgdConfig: max_epochs must be at least 1");
    if (!(tolerance >= 0.0)) throw std::invalid_argument("SgdConfig: tolerance must be >= 0");
  }
};

/// Runs mini-batch optimization of a separable objective with update
/// policy `policy`. Each epoch optionally shuffles, sweeps consecutive
/// batches (the last one ragged if batch_size does not divide n), applies
/// one update per batch, then records the full objective once.
template <class F, UpdatePolicy P>
OptimizationReport optimize_separable(F& function, P policy, const SgdConfig& config,
                                      const Vector& initial) {
  static_assert(SeparableFunction<F>,
                "optimize_separable needs NumFunctions(), Shuffle(rng) and batch methods");
  static_assert(CanBatchGradient<F>,
                "optimize_separable needs Gradient(x, batch, g) or "
                "EvaluateWithGradient(x, batch, g)");
  static_assert(CanBatchEvaluate<F>,
                "optimize_separable needs Evaluate(x, batch) or "
                "EvaluateWithGradient(x, batch, g)");

  config.validate();
  if (initial.size() < 1) throw DimensionError("initial point must have at least one entry");
  if (!initial.allFinite()) throw NonFiniteError("non-finite initial point");

  const auto start = std::chrono::steady_clock::now();
  Objective<F> objective(function);
  const std::size_t n = objective.NumFunctions();
  if (n == 0) throw CapabilityError("not separable: NumFunctions() is 0");
  const BatchSpec everything{0, n};

  Rng rng(config.seed);
  policy.Initialize(initial.size());

  OptimizationReport report;
  Vector x = initial;
  Vector gradient(initial.size());

  auto finish = [&](TerminationReason reason, double objective_value) {
    report.termination_reason = reason;
    report.final_coordinates = x;
    report.final_objective = objective_value;
    report.counters = objective.counters();
    report.wall_time =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
  };
  auto non_finite = [&](const char* what, double value) {
    report.message = std::string("non-finite ") + what + " at x = " + detail::format_vector(x);
    return finish(TerminationReason::non_finite, value);
  };

  double previous = objective.Evaluate(x, everything);
  report.trace.push_back({0, previous});
  if (!std::isfinite(previous)) return non_finite("objective", previous);

  for (std::size_t epoch = 1; epoch <= config.max_epochs; ++epoch) {
    if (config.shuffle) objective.Shuffle(rng);

    bool budget_hit = false;
    for (std::size_t begin = 0; begin < n; begin += config.batch_size) {
      const BatchSpec batch{begin, std::min(config.batch_size, n - begin)};
      objective.Gradient(x, batch, gradient);
      if (!gradient.allFinite()) return non_finite("gradient", previous);
      policy.Update(x, config.step_size, gradient);
      ++report.iterations;
      if (config.max_iterations != 0 && report.iterations >= config.max_iterations) {
        budget_hit = true;
        break;
      }
    }

    const double current = objective.Evaluate(x, everything);
    report.trace.push_back({epoch, current});
    if (!std::isfinite(current)) return non_finite("objective", current);
    if (budget_hit) return finish(TerminationReason::max_iterations, current);
    if (std::abs(current - previous) < config.tolerance)
      return finish(TerminationReason::tolerance, current);
    previous = current;
  }
  return finish(TerminationReason::max_epochs, previous);
}

/// Same as above with the rule chosen at runtime (default hyperparameters).
template <class F>
OptimizationReport optimize_separable(F& function, UpdateRule rule, const SgdConfig& config,
                                      const Vector& initial) {
  return std::visit(
      [&](auto policy) { return optimize_separable(function, std::move(policy), config, initial); },
      make_policy(rule));
}

}  // namespace optkit
