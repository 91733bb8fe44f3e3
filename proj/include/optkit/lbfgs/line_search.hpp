#pragma once

#include <optkit/core/types.hpp>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>

namespace optkit {

/// Strong Wolfe line search parameters. Defaults are the usual L-BFGS
/// choices.
struct LineSearchParams {
  double c1 = 1e-4;  // sufficient decrease
  double c2 = 0.9;   // curvature
  std::size_t max_trials = 50;
  double initial_step = 1.0;
  double min_step = 1e-20;  // zoom gives up once the bracket is narrower
  double max_step = 1e20;

  /// Step growth while bracketing.
  static constexpr double kExpansion = 2.0;
  /// Interpolated steps are kept this fraction of the bracket away from
  /// its ends.
  static constexpr double kSafeguard = 0.01;

  void validate() const {
    if (!(c1 > 0.0 && c1 < c2 && c2 < 1.0))
      throw std::invalid_argument("line search: need 0 < c1 < c2 < 1");
    if (max_trials < 1) throw std::invalid_argument("line search: max_trials must be >= 1");
    if (!(min_step > 0.0) || !(initial_step > 0.0) || !(max_step >= initial_step))
      throw std::invalid_argument("line search: need 0 < min_step, 0 < initial_step <= max_step");
  }
};

struct LineSearchResult {
  /// Accepted step; 0 when no trial decreased the objective.
  double step = 0.0;
  /// Objective at x + step * d.
  double value = 0.0;
  /// Whether both strong Wolfe conditions hold at `step`. When false and
  /// step > 0, `step` is the best sufficient-decrease trial found.
  bool satisfied = false;
  std::size_t trials = 0;
};

/// Both strong Wolfe conditions for a step along a descent direction.
/// `slope0` and `slope` are the directional derivatives g'd at 0 and at
/// `step`.
inline bool satisfies_strong_wolfe(double value0, double slope0, double step, double value,
                                   double slope, double c1, double c2) {
  return value <= value0 + c1 * step * slope0 && std::abs(slope) <= c2 * std::abs(slope0);
}

namespace detail {

struct LineTrial {
  double step;
  double value;
  double slope;
};

// Minimizer of the cubic matching value and slope at both ends, clamped
// into the bracket interior. Falls back to bisection if the fit is
// degenerate.
inline double interpolate_step(const LineTrial& lo, const LineTrial& hi) {
  const double left = std::min(lo.step, hi.step);
  const double right = std::max(lo.step, hi.step);
  const double width = right - left;
  const double bisect = 0.5 * (left + right);
  if (!std::isfinite(lo.value) || !std::isfinite(hi.value) || !std::isfinite(lo.slope) ||
      !std::isfinite(hi.slope)) {
    return bisect;
  }
  const double d1 = lo.slope + hi.slope - 3.0 * (lo.value - hi.value) / (lo.step - hi.step);
  const double disc = d1 * d1 - lo.slope * hi.slope;
  if (!(disc >= 0.0)) return bisect;
  const double d2 = std::copysign(std::sqrt(disc), hi.step - lo.step);
  const double denom = hi.slope - lo.slope + 2.0 * d2;
  if (denom == 0.0) return bisect;
  const double step = hi.step - (hi.step - lo.step) * (hi.slope + d2 - d1) / denom;
  if (!std::isfinite(step)) return bisect;
  const double margin = LineSearchParams::kSafeguard * width;
  return std::clamp(step, left + margin, right - margin);
}

}  // namespace detail

/// Bracketing-plus-zoom line search for the strong Wolfe conditions.
///
/// `f` needs `double EvaluateWithGradient(const Vector&, Vector&)`; it is
/// the only method called. On return `x_out` and `g_out` hold the point
/// x + step * d and its gradient (left untouched if step == 0).
template <class Fn>
LineSearchResult wolfe_line_search(Fn& f, const Vector& x, const Vector& direction,
                                   double value0, const Vector& gradient0,
                                   const LineSearchParams& params, Vector& x_out,
                                   Vector& g_out) {
  params.validate();
  detail::require_same_size(x, direction, "line search");
  detail::require_same_size(x, gradient0, "line search");
  const double slope0 = gradient0.dot(direction);
  if (!(slope0 < 0.0)) throw std::invalid_argument("not a descent direction");

  LineSearchResult result;
  Vector x_trial(x.size()), g_trial(x.size());
  Vector x_best, g_best;
  double best_value = value0;
  double best_step = 0.0;

  const double armijo_slope = params.c1 * slope0;
  const double curvature_bound = -params.c2 * slope0;

  auto evaluate = [&](double step) {
    x_trial = x + step * direction;
    double value = f.EvaluateWithGradient(x_trial, g_trial);
    double slope = g_trial.dot(direction);
    ++result.trials;
    if (!std::isfinite(value) || !std::isfinite(slope)) {
      value = std::numeric_limits<double>::infinity();
      slope = std::numeric_limits<double>::quiet_NaN();
    }
    if (value <= value0 + step * armijo_slope && value < best_value) {
      best_value = value;
      best_step = step;
      x_best = x_trial;
      g_best = g_trial;
    }
    return detail::LineTrial{step, value, slope};
  };
  auto armijo = [&](const detail::LineTrial& t) {
    return t.value <= value0 + t.step * armijo_slope;
  };
  auto curvature = [&](const detail::LineTrial& t) {
    return std::abs(t.slope) <= curvature_bound;
  };
  auto accept = [&](const detail::LineTrial& t) {
    x_out.swap(x_trial);
    g_out.swap(g_trial);
    result.step = t.step;
    result.value = t.value;
    result.satisfied = true;
    return result;
  };
  auto give_up = [&]() {
    if (best_step > 0.0) {
      x_out.swap(x_best);
      g_out.swap(g_best);
      result.step = best_step;
      result.value = best_value;
    } else {
      result.step = 0.0;
      result.value = value0;
    }
    result.satisfied = false;
    return result;
  };
  // Invariants: lo satisfies sufficient decrease with the lowest value seen
  // in the bracket, and lo.slope * (hi.step - lo.step) < 0.
  auto zoom = [&](detail::LineTrial lo, detail::LineTrial hi) {
    while (result.trials < params.max_trials) {
      if (std::abs(hi.step - lo.step) < params.min_step) break;
      const detail::LineTrial t = evaluate(detail::interpolate_step(lo, hi));
      if (!armijo(t) || t.value >= lo.value) {
        hi = t;
      } else {
        if (curvature(t)) return accept(t);
        if (t.slope * (hi.step - lo.step) >= 0.0) hi = lo;
        lo = t;
      }
    }
    return give_up();
  };

  detail::LineTrial previous{0.0, value0, slope0};
  double step = std::min(params.initial_step, params.max_step);
  for (bool first = true; result.trials < params.max_trials; first = false) {
    const detail::LineTrial t = evaluate(step);
    if (!armijo(t) || (!first && t.value >= previous.value)) return zoom(previous, t);
    if (curvature(t)) return accept(t);
    if (t.slope >= 0.0) return zoom(t, previous);
    if (step >= params.max_step) break;
    previous = t;
    step = std::min(step * LineSearchParams::kExpansion, params.max_step);
  }
  return give_up();
}

}  // namespace optkit
