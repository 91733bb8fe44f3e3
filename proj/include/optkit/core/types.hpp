#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace optkit {

/// Dense coordinate / gradient vector. Gradients share the type of the
/// coordinates they were computed at.
using Vector = Eigen::VectorXd;

/// Row-per-sample data matrix.
using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Contiguous range of separable components `[begin, begin + size)`.
struct BatchSpec {
  std::size_t begin = 0;
  std::size_t size = 1;

  [[nodiscard]] std::size_t end() const noexcept { return begin + size; }
  friend bool operator==(const BatchSpec&, const BatchSpec&) = default;
};

/// Call counts of the native methods of one objective during one run.
/// `n_expensive` counts problem-defined expensive intermediates (for linear
/// regression: the residual y - X theta).
struct EvaluationCounters {
  std::uint64_t n_evaluate = 0;
  std::uint64_t n_gradient = 0;
  std::uint64_t n_evaluate_with_gradient = 0;
  std::uint64_t n_expensive = 0;

  friend bool operator==(const EvaluationCounters&, const EvaluationCounters&) = default;
};

enum class TerminationReason {
  max_epochs,
  max_iterations,
  max_evaluations,
  tolerance,
  gradient_tolerance,
  line_search_failure,
  non_finite,
};

inline std::string_view to_string(TerminationReason r) noexcept {
  switch (r) {
    case TerminationReason::max_epochs: return "max_epochs";
    case TerminationReason::max_iterations: return "max_iterations";
    case TerminationReason::max_evaluations: return "max_evaluations";
    case TerminationReason::tolerance: return "tolerance";
    case TerminationReason::gradient_tolerance: return "gradient_tolerance";
    case TerminationReason::line_search_failure: return "line_search_failure";
    case TerminationReason::non_finite: return "non_finite";
  }
  return "unknown";
}

/// One point of a learning curve: epoch, iteration or sweep index and the
/// objective recorded there.
struct TracePoint {
  std::size_t index = 0;
  double objective = 0.0;

  friend bool operator==(const TracePoint&, const TracePoint&) = default;
};

struct OptimizationReport {
  Vector final_coordinates;
  double final_objective = 0.0;
  std::vector<TracePoint> trace;
  EvaluationCounters counters;
  double wall_time = 0.0;  // seconds
  TerminationReason termination_reason = TerminationReason::max_iterations;
  /// Iterations (L-BFGS), batch updates (SGD) or objective calls (SA).
  std::size_t iterations = 0;
  std::string message;
};

// Error types. All derive from standard exceptions so callers can catch
// broadly.

/// The objective lacks the methods an operation needs.
class CapabilityError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A NaN or infinity showed up where finite numbers are required.
class NonFiniteError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline bool all_finite(const Vector& v) noexcept { return v.allFinite(); }

inline std::string format_vector(const Vector& v, std::size_t max_entries = 8) {
  std::ostringstream os;
  os.precision(17);
  os << '(';
  const auto n = static_cast<std::size_t>(v.size());
  for (std::size_t i = 0; i < n && i < max_entries; ++i) {
    if (i) os << ", ";
    os << v[static_cast<Eigen::Index>(i)];
  }
  if (n > max_entries) os << ", ... [" << n << " entries]";
  os << ')';
  return os.str();
}

inline void require_same_size(const Vector& a, const Vector& b, const char* what) {
  if (a.size() != b.size()) {
    throw DimensionError(std::string("dimension mismatch in ") + what + ": " +
                         std::to_string(a.size()) + " vs " + std::to_string(b.size()));
  }
}

}  // namespace detail
}  // namespace optkit
