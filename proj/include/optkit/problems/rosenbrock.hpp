#pragma once

#include <optkit/core/types.hpp>

#include <string>

namespace optkit {

// Canonical two-dimensional Rosenbrock function,
//   f(x1, x2) = 100 (x2 - x1^2)^2 + (1 - x1)^2,
// minimum f(1, 1) = 0.

namespace detail {
inline void require_rosenbrock_size(const Vector& x) {
  if (x.size() != 2)
    throw DimensionError("dimension mismatch: Rosenbrock takes 2 coordinates, got " +
                         std::to_string(x.size()));
}
}  // namespace detail

inline double rosenbrock_evaluate(const Vector& x) {
  detail::require_rosenbrock_size(x);
  const double a = x[1] - x[0] * x[0];
  const double b = 1.0 - x[0];
  return 100.0 * a * a + b * b;
}

inline void rosenbrock_gradient(const Vector& x, Vector& g) {
  detail::require_rosenbrock_size(x);
  const double a = x[1] - x[0] * x[0];
  g.resize(2);
  g[0] = -400.0 * x[0] * a - 2.0 * (1.0 - x[0]);
  g[1] = 200.0 * a;
}

class RosenbrockFunction {
 public:
  double Evaluate(const Vector& x) const { return rosenbrock_evaluate(x); }
  void Gradient(const Vector& x, Vector& g) const { rosenbrock_gradient(x, g); }

  /// The customary starting point (-1.2, 1).
  static Vector initial_point() { return Vector{{-1.2, 1.0}}; }
};

}  // namespace optkit
