#pragma once

#include <optkit/core/types.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string_view>

/// \file update_policies.hpp
///
/// Update rules for the SGD family. Each policy owns its accumulators and
/// maps (iterate, step size, gradient) to a new iterate in place:
///
///     policy.Initialize(d);
///     policy.Update(iterate, step_size, gradient);
///
/// Accumulators start at zero (SMORMS3's memory starts at one). All
/// updates are element-wise. Where a rule divides, epsilon is added to the
/// denominator after the square root.

namespace optkit {

/// theta <- theta - alpha * g
class VanillaUpdate {
 public:
  static constexpr double kDefaultStepSize = 0.01;
  static constexpr std::string_view kName = "sgd";

  void Initialize(Eigen::Index /*dimension*/) { steps_ = 0; }

  void Update(Vector& iterate, double step_size, const Vector& gradient) {
    iterate -= step_size * gradient;
    ++steps_;
  }

  [[nodiscard]] std::uint64_t steps() const noexcept { return steps_; }
  [[nodiscard]] const Vector* accumulator(std::string_view) const noexcept { return nullptr; }

 private:
  std::uint64_t steps_ = 0;
};

/// Duchi et al.:
///   G <- G + g^2
///   theta <- theta - alpha * g / (sqrt(G) + eps)
class AdaGradUpdate {
 public:
  static constexpr double kDefaultStepSize = 0.01;
  static constexpr std::string_view kName = "adagrad";

  explicit AdaGradUpdate(double epsilon = 1e-8) : epsilon_(epsilon) {}

  void Initialize(Eigen::Index dimension) {
    squared_gradient_ = Vector::Zero(dimension);
    steps_ = 0;
  }

  void Update(Vector& iterate, double step_size, const Vector& gradient) {
    squared_gradient_.array() += gradient.array().square();
    iterate.array() -=
        step_size * gradient.array() / (squared_gradient_.array().sqrt() + epsilon_);
    ++steps_;
  }

  [[nodiscard]] std::uint64_t steps() const noexcept { return steps_; }
  [[nodiscard]] const Vector* accumulator(std::string_view name) const noexcept {
    return name == "squared_gradient" ? &squared_gradient_ : nullptr;
  }

 private:
  double epsilon_;
  Vector squared_gradient_;
  std::uint64_t steps_ = 0;
};

/// Zeiler:
///   E[g^2]  <- rho E[g^2] + (1 - rho) g^2
///   dx      <- -sqrt(E[dx^2] + eps) / sqrt(E[g^2] + eps) * g
///   E[dx^2] <- rho E[dx^2] + (1 - rho) dx^2
///   theta   <- theta + alpha * dx
/// alpha defaults to 1, which is the rule as published.
class AdaDeltaUpdate {
 public:
  static constexpr double kDefaultStepSize = 1.0;
  static constexpr std::string_view kName = "adadelta";

  explicit AdaDeltaUpdate(double rho = 0.95, double epsilon = 1e-6)
      : rho_(rho), epsilon_(epsilon) {}

  void Initialize(Eigen::Index dimension) {
    mean_squared_gradient_ = Vector::Zero(dimension);
    mean_squared_delta_ = Vector::Zero(dimension);
    delta_ = Vector::Zero(dimension);
    steps_ = 0;
  }

  void Update(Vector& iterate, double step_size, const Vector& gradient) {
    mean_squared_gradient_ =
        rho_ * mean_squared_gradient_.array() + (1.0 - rho_) * gradient.array().square();
    delta_ = -((mean_squared_delta_.array() + epsilon_).sqrt() /
               (mean_squared_gradient_.array() + epsilon_).sqrt()) *
             gradient.array();
    mean_squared_delta_ =
        rho_ * mean_squared_delta_.array() + (1.0 - rho_) * delta_.array().square();
    iterate += step_size * delta_;
    ++steps_;
  }

  [[nodiscard]] std::uint64_t steps() const noexcept { return steps_; }
  [[nodiscard]] const Vector* accumulator(std::string_view name) const noexcept {
    if (name == "mean_squared_gradient") return &mean_squared_gradient_;
    if (name == "mean_squared_delta") return &mean_squared_delta_;
    return nullptr;
  }

 private:
  double rho_;
  double epsilon_;
  Vector mean_squared_gradient_;
  Vector mean_squared_delta_;
  Vector delta_;  // scratch
  std::uint64_t steps_ = 0;
};

/// v <- decay v + (1 - decay) g^2;  theta <- theta - alpha g / (sqrt(v) + eps)
class RMSPropUpdate {
 public:
  static constexpr double kDefaultStepSize = 0.01;
  static constexpr std::string_view kName = "rmsprop";

  explicit RMSPropUpdate(double decay = 0.99, double epsilon = 1e-8)
      : decay_(decay), epsilon_(epsilon) {}

  void Initialize(Eigen::Index dimension) {
    mean_squared_gradient_ = Vector::Zero(dimension);
    steps_ = 0;
  }

  void Update(Vector& iterate, double step_size, const Vector& gradient) {
    mean_squared_gradient_ =
        decay_ * mean_squared_gradient_.array() + (1.0 - decay_) * gradient.array().square();
    iterate.array() -=
        step_size * gradient.array() / (mean_squared_gradient_.array().sqrt() + epsilon_);
    ++steps_;
  }

  [[nodiscard]] std::uint64_t steps() const noexcept { return steps_; }
  [[nodiscard]] const Vector* accumulator(std::string_view name) const noexcept {
    return name == "mean_squared_gradient" ? &mean_squared_gradient_ : nullptr;
  }

 private:
  double decay_;
  double epsilon_;
  Vector mean_squared_gradient_;
  std::uint64_t steps_ = 0;
};

/// Simon Funk's SMORMS3:
///   r     <- 1 / (mem + 1)
///   g1    <- (1 - r) g1 + r g
///   g2    <- (1 - r) g2 + r g^2
///   x     <- g1^2 / (g2 + eps)
///   theta <- theta - g * min(alpha, x) / (sqrt(g2) + eps)
///   mem   <- 1 + mem (1 - x)
class Smorms3Update {
 public:
  static constexpr double kDefaultStepSize = 0.001;
  static constexpr std::string_view kName = "smorms3";

  explicit Smorms3Update(double epsilon = 1e-16) : epsilon_(epsilon) {}

  void Initialize(Eigen::Index dimension) {
    memory_ = Vector::Ones(dimension);
    mean_gradient_ = Vector::Zero(dimension);
    mean_squared_gradient_ = Vector::Zero(dimension);
    ratio_ = Vector::Zero(dimension);
    steps_ = 0;
  }

  void Update(Vector& iterate, double step_size, const Vector& gradient) {
    for (Eigen::Index i = 0; i < iterate.size(); ++i) {
      const double r = 1.0 / (memory_[i] + 1.0);
      const double g = gradient[i];
      mean_gradient_[i] = (1.0 - r) * mean_gradient_[i] + r * g;
      mean_squared_gradient_[i] = (1.0 - r) * mean_squared_gradient_[i] + r * g * g;
      ratio_[i] = mean_gradient_[i] * mean_gradient_[i] / (mean_squared_gradient_[i] + epsilon_);
      iterate[i] -=
          g * std::min(step_size, ratio_[i]) / (std::sqrt(mean_squared_gradient_[i]) + epsilon_);
      memory_[i] = 1.0 + memory_[i] * (1.0 - ratio_[i]);
    }
    ++steps_;
  }

  [[nodiscard]] std::uint64_t steps() const noexcept { return steps_; }
  [[nodiscard]] const Vector* accumulator(std::string_view name) const noexcept {
    if (name == "memory") return &memory_;
    if (name == "mean_gradient") return &mean_gradient_;
    if (name == "mean_squared_gradient") return &mean_squared_gradient_;
    return nullptr;
  }

 private:
  double epsilon_;
  Vector memory_;
  Vector mean_gradient_;
  Vector mean_squared_gradient_;
  Vector ratio_;  // scratch
  std::uint64_t steps_ = 0;
};

/// Kingma & Ba, with bias correction:
///   m <- b1 m + (1 - b1) g;  v <- b2 v + (1 - b2) g^2
///   theta <- theta - alpha * (m / (1 - b1^t)) / (sqrt(v / (1 - b2^t)) + eps)
class AdamUpdate {
 public:
  static constexpr double kDefaultStepSize = 0.001;
  static constexpr std::string_view kName = "adam";

  explicit AdamUpdate(double beta1 = 0.9, double beta2 = 0.999, double epsilon = 1e-8)
      : beta1_(beta1), beta2_(beta2), epsilon_(epsilon) {}

  void Initialize(Eigen::Index dimension) {
    m_ = Vector::Zero(dimension);
    v_ = Vector::Zero(dimension);
    steps_ = 0;
  }

  void Update(Vector& iterate, double step_size, const Vector& gradient) {
    ++steps_;
    m_ = beta1_ * m_ + (1.0 - beta1_) * gradient;
    v_ = beta2_ * v_.array() + (1.0 - beta2_) * gradient.array().square();
    const double t = static_cast<double>(steps_);
    const double correction1 = 1.0 - std::pow(beta1_, t);
    const double correction2 = 1.0 - std::pow(beta2_, t);
    iterate.array() -= step_size * (m_.array() / correction1) /
                       ((v_.array() / correction2).sqrt() + epsilon_);
  }

  [[nodiscard]] std::uint64_t steps() const noexcept { return steps_; }
  [[nodiscard]] const Vector* accumulator(std::string_view name) const noexcept {
    if (name == "m") return &m_;
    if (name == "v") return &v_;
    return nullptr;
  }

 private:
  double beta1_;
  double beta2_;
  double epsilon_;
  Vector m_;
  Vector v_;
  std::uint64_t steps_ = 0;
};

/// Infinity-norm variant of Adam:
///   m <- b1 m + (1 - b1) g;  u <- max(b2 u, |g|)
///   theta <- theta - (alpha / (1 - b1^t)) * m / (u + eps)
class AdaMaxUpdate {
 public:
  static constexpr double kDefaultStepSize = 0.002;
  static constexpr std::string_view kName = "adamax";

  explicit AdaMaxUpdate(double beta1 = 0.9, double beta2 = 0.999, double epsilon = 1e-8)
      : beta1_(beta1), beta2_(beta2), epsilon_(epsilon) {}

  void Initialize(Eigen::Index dimension) {
    m_ = Vector::Zero(dimension);
    u_ = Vector::Zero(dimension);
    steps_ = 0;
  }

  void Update(Vector& iterate, double step_size, const Vector& gradient) {
    ++steps_;
    m_ = beta1_ * m_ + (1.0 - beta1_) * gradient;
    u_ = (beta2_ * u_.array()).max(gradient.array().abs());
    const double corrected_step = step_size / (1.0 - std::pow(beta1_, static_cast<double>(steps_)));
    iterate.array() -= corrected_step * m_.array() / (u_.array() + epsilon_);
  }

  [[nodiscard]] std::uint64_t steps() const noexcept { return steps_; }
  [[nodiscard]] const Vector* accumulator(std::string_view name) const noexcept {
    if (name == "m") return &m_;
    if (name == "u") return &u_;
    return nullptr;
  }

 private:
  double beta1_;
  double beta2_;
  double epsilon_;
  Vector m_;
  Vector u_;
  std::uint64_t steps_ = 0;
};

template <class P>
concept UpdatePolicy = requires(P& p, Vector& x, const Vector& g, double a) {
  p.Initialize(Eigen::Index{1});
  p.Update(x, a, g);
  { P::kDefaultStepSize } -> std::convertible_to<double>;
};

}  // namespace optkit
