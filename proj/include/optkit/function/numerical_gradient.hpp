#pragma once

#include <optkit/core/types.hpp>
#include <optkit/function/objective.hpp>
#include <optkit/function/traits.hpp>

#include <cmath>
#include <stdexcept>
#include <string>

namespace optkit {

inline constexpr double kDefaultFiniteDifferenceStep = 1e-6;

/// Central-difference gradient, (f(x + h e_i) - f(x - h e_i)) / 2h per
/// coordinate. Used as a test oracle for analytic gradients.
template <CanEvaluate F>
Vector numerical_gradient(F& function, const Vector& x, double h = kDefaultFiniteDifferenceStep) {
  if (!(h > 0.0)) throw std::invalid_argument("numerical_gradient: step must be positive");
  Objective<F> objective(function);
  Vector probe = x;
  Vector grad(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    probe[i] = x[i] + h;
    const double up = objective.Evaluate(probe);
    probe[i] = x[i] - h;
    const double down = objective.Evaluate(probe);
    probe[i] = x[i];
    if (!std::isfinite(up) || !std::isfinite(down)) {
      throw NonFiniteError("non-finite evaluation near x = " + detail::format_vector(x) +
                           " along coordinate " + std::to_string(i));
    }
    grad[i] = (up - down) / (2.0 * h);
  }
  return grad;
}

}  // namespace optkit
