#pragma once

#include <optkit/core/types.hpp>
#include <optkit/function/objective.hpp>
#include <optkit/function/traits.hpp>
#include <optkit/lbfgs/history.hpp>
#include <optkit/lbfgs/line_search.hpp>

#include <chrono>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace optkit {

struct LbfgsConfig {
  std::size_t memory = 10;
  /// 0 means no iteration limit.
  std::size_t max_iterations = 0;
  /// Stop once the largest gradient entry is below this.
  double grad_tolerance = 1e-10;
  double min_step = 1e-20;
  double line_search_c1 = 1e-4;
  double line_search_c2 = 0.9;
  std::size_t max_line_search_trials = 50;
  double initial_step = 1.0;

  [[nodiscard]] LineSearchParams line_search() const {
    LineSearchParams p;
    p.c1 = line_search_c1;
    p.c2 = line_search_c2;
    p.max_trials = max_line_search_trials;
    p.initial_step = initial_step;
    p.min_step = min_step;
    return p;
  }

  void validate() const {
    if (memory < 1) throw std::invalid_argument("LbfgsConfig: memory must be at least 1");
    if (!(grad_tolerance >= 0.0))
      throw std::invalid_argument("LbfgsConfig: grad_tolerance must be >= 0");
    line_search().validate();
  }
};

/// L-BFGS for full-batch differentiable objectives.
///
/// Every point is evaluated through EvaluateWithGradient (native or
/// synthesized), so objectives that share work between value and gradient
/// only pay for it once per point. The trace holds the objective at the
/// initial point (index 0) and after each iteration.
template <class F>
OptimizationReport optimize_lbfgs(F& function, const LbfgsConfig& config, const Vector& initial) {
  static_assert(CanEvaluateWithGradient<F>,
                "optimize_lbfgs needs EvaluateWithGradient(x, g), or both Evaluate(x) and "
                "Gradient(x, g)");
  config.validate();
  if (initial.size() < 1) throw DimensionError("initial point must have at least one entry");
  if (!initial.allFinite()) throw NonFiniteError("non-finite initial point");

  const auto start = std::chrono::steady_clock::now();
  Objective<F> objective(function);
  const LineSearchParams line_params = config.line_search();
  LbfgsHistory history(config.memory);

  OptimizationReport report;
  Vector x = initial;
  Vector g(x.size());
  Vector x_next(x.size()), g_next(x.size());
  double value = objective.EvaluateWithGradient(x, g);
  report.trace.push_back({0, value});

  auto finish = [&](TerminationReason reason) {
    report.termination_reason = reason;
    report.final_coordinates = x;
    report.final_objective = value;
    report.counters = objective.counters();
    report.wall_time =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
  };

  if (!std::isfinite(value) || !g.allFinite()) {
    report.message = "non-finite objective or gradient at x = " + detail::format_vector(x);
    return finish(TerminationReason::non_finite);
  }

  for (std::size_t iteration = 1;; ++iteration) {
    if (g.lpNorm<Eigen::Infinity>() < config.grad_tolerance)
      return finish(TerminationReason::gradient_tolerance);
    if (config.max_iterations != 0 && iteration > config.max_iterations)
      return finish(TerminationReason::max_iterations);

    Vector direction = two_loop_direction(history, g);
    if (!(g.dot(direction) < 0.0)) {
      // Rounding can break the descent property; restart from steepest descent.
      history.clear();
      direction = -g;
    }

    const LineSearchResult ls =
        wolfe_line_search(objective, x, direction, value, g, line_params, x_next, g_next);
    if (ls.step == 0.0) {
      report.message = "line search found no decrease after " + std::to_string(ls.trials) +
                       " trials";
      return finish(TerminationReason::line_search_failure);
    }

    history.push(x_next - x, g_next - g);
    x.swap(x_next);
    g.swap(g_next);
    value = ls.value;
    report.iterations = iteration;
    report.trace.push_back({iteration, value});

    if (!std::isfinite(value) || !g.allFinite()) {
      report.message = "non-finite objective or gradient at x = " + detail::format_vector(x);
      return finish(TerminationReason::non_finite);
    }
    if (!ls.satisfied) {
      report.message = "strong Wolfe conditions not met within " + std::to_string(ls.trials) +
                       " trials; kept best decrease";
      return finish(TerminationReason::line_search_failure);
    }
  }
}

}  // namespace optkit
