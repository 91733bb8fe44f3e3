#pragma once

#include <optkit/core/rng.hpp>
#include <optkit/core/types.hpp>
#include <optkit/problems/dataset.hpp>

#include <cstddef>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

namespace optkit {

// Least squares without a bias term: f(theta) = ||y - X theta||^2 with
// gradient -2 X'(y - X theta). Append a column of ones to X to fit an
// intercept.

namespace detail {

inline void require_theta(const SeparableDataset& data, const Vector& theta) {
  if (static_cast<std::size_t>(theta.size()) != data.d())
    throw DimensionError("dimension mismatch: dataset has d = " + std::to_string(data.d()) +
                         ", theta has " + std::to_string(theta.size()) + " entries");
}

inline void residual(const SeparableDataset& data, const Vector& theta, Vector& out) {
  out = data.y;
  out.noalias() -= data.X * theta;
}

}  // namespace detail

inline double linreg_evaluate(const SeparableDataset& data, const Vector& theta) {
  detail::require_theta(data, theta);
  Vector v;
  detail::residual(data, theta, v);
  return v.squaredNorm();
}

inline void linreg_gradient(const SeparableDataset& data, const Vector& theta, Vector& g) {
  detail::require_theta(data, theta);
  Vector v;
  detail::residual(data, theta, v);
  g.noalias() = -2.0 * (data.X.transpose() * v);
}

/// Value and gradient from a single residual computation.
inline double linreg_evaluate_with_gradient(const SeparableDataset& data, const Vector& theta,
                                            Vector& g) {
  detail::require_theta(data, theta);
  Vector v;
  detail::residual(data, theta, v);
  g.noalias() = -2.0 * (data.X.transpose() * v);
  return v.squaredNorm();
}

/// Which methods a linear-regression objective exposes. Lets the same
/// problem be presented to the optimizers with different vocabularies.
enum class LinRegMethods {
  evaluate_and_gradient,   // Evaluate + Gradient
  evaluate_with_gradient,  // EvaluateWithGradient only
  all,
};

/// Full-batch linear regression. Holds a reference to the dataset and
/// counts residual computations (ExpensiveCount), one per method call.
template <LinRegMethods M = LinRegMethods::all>
class LinearRegressionFunction {
 public:
  explicit LinearRegressionFunction(const SeparableDataset& data) : data_(data) {
    data_.validate();
  }

  double Evaluate(const Vector& theta)
    requires(M != LinRegMethods::evaluate_with_gradient)
  {
    detail::require_theta(data_, theta);
    detail::residual(data_, theta, residual_);
    ++expensive_;
    return residual_.squaredNorm();
  }

  void Gradient(const Vector& theta, Vector& g)
    requires(M != LinRegMethods::evaluate_with_gradient)
  {
    detail::require_theta(data_, theta);
    detail::residual(data_, theta, residual_);
    ++expensive_;
    g.noalias() = -2.0 * (data_.X.transpose() * residual_);
  }

  double EvaluateWithGradient(const Vector& theta, Vector& g)
    requires(M != LinRegMethods::evaluate_and_gradient)
  {
    detail::require_theta(data_, theta);
    detail::residual(data_, theta, residual_);
    ++expensive_;
    g.noalias() = -2.0 * (data_.X.transpose() * residual_);
    return residual_.squaredNorm();
  }

  [[nodiscard]] std::uint64_t ExpensiveCount() const noexcept { return expensive_; }
  [[nodiscard]] const SeparableDataset& data() const noexcept { return data_; }

 private:
  const SeparableDataset& data_;
  Vector residual_;
  std::uint64_t expensive_ = 0;
};

/// Separable linear regression, f_i(theta) = (y_i - x_i theta)^2. A batch
/// is the plain sum of its components. Shuffle() permutes the order in
/// which samples are assigned to batch positions; the dataset itself is
/// never modified.
template <LinRegMethods M = LinRegMethods::all>
class SeparableLinearRegression {
 public:
  explicit SeparableLinearRegression(const SeparableDataset& data)
      : data_(data), order_(data.n()) {
    data_.validate();
    std::iota(order_.begin(), order_.end(), std::size_t{0});
  }

  [[nodiscard]] std::size_t NumFunctions() const noexcept { return order_.size(); }

  void Shuffle(Rng& rng) { order_ = shuffle_order(order_.size(), rng); }

  double Evaluate(const Vector& theta, BatchSpec batch)
    requires(M != LinRegMethods::evaluate_with_gradient)
  {
    check(theta, batch);
    ++expensive_;
    double sum = 0.0;
    for (std::size_t k = batch.begin; k < batch.end(); ++k) {
      const double r = row_residual(theta, order_[k]);
      sum += r * r;
    }
    return sum;
  }

  void Gradient(const Vector& theta, BatchSpec batch, Vector& g)
    requires(M != LinRegMethods::evaluate_with_gradient)
  {
    check(theta, batch);
    ++expensive_;
    g.setZero(theta.size());
    for (std::size_t k = batch.begin; k < batch.end(); ++k) {
      const auto i = static_cast<Eigen::Index>(order_[k]);
      const double r = data_.y[i] - data_.X.row(i).dot(theta);
      g.noalias() -= (2.0 * r) * data_.X.row(i).transpose();
    }
  }

  double EvaluateWithGradient(const Vector& theta, BatchSpec batch, Vector& g)
    requires(M != LinRegMethods::evaluate_and_gradient)
  {
    check(theta, batch);
    ++expensive_;
    g.setZero(theta.size());
    double sum = 0.0;
    for (std::size_t k = batch.begin; k < batch.end(); ++k) {
      const auto i = static_cast<Eigen::Index>(order_[k]);
      const double r = data_.y[i] - data_.X.row(i).dot(theta);
      sum += r * r;
      g.noalias() -= (2.0 * r) * data_.X.row(i).transpose();
    }
    return sum;
  }

  [[nodiscard]] std::uint64_t ExpensiveCount() const noexcept { return expensive_; }
  [[nodiscard]] const std::vector<std::size_t>& order() const noexcept { return order_; }

 private:
  void check(const Vector& theta, BatchSpec batch) const {
    detail::require_theta(data_, theta);
    if (batch.size == 0) throw std::invalid_argument("empty batch");
    if (batch.end() > order_.size())
      throw std::out_of_range("batch [" + std::to_string(batch.begin) + ", " +
                              std::to_string(batch.end()) + ") exceeds " +
                              std::to_string(order_.size()) + " functions");
  }

  double row_residual(const Vector& theta, std::size_t sample) const {
    const auto i = static_cast<Eigen::Index>(sample);
    return data_.y[i] - data_.X.row(i).dot(theta);
  }

  const SeparableDataset& data_;
  std::vector<std::size_t> order_;
  std::uint64_t expensive_ = 0;
};

}  // namespace optkit
