#pragma once

#include <optkit/core/types.hpp>
#include <optkit/function/traits.hpp>

#include <cstdint>
#include <string>

namespace optkit {

/// Wraps a user objective and presents the complete method vocabulary.
///
/// Missing methods are synthesized from the ones that exist:
///   - Evaluate from EvaluateWithGradient (gradient discarded),
///   - Gradient from EvaluateWithGradient (value discarded),
///   - EvaluateWithGradient from Evaluate followed by Gradient.
/// Native methods are always preferred. The same rules apply to the batch
/// forms of separable objectives.
///
/// Every call to a native method is counted. A method that cannot be
/// synthesized throws CapabilityError when called; optimizers reject such
/// objectives at compile time instead (see the Can* concepts).
///
/// One Objective belongs to one optimization run. It holds a reference to
/// the wrapped function, which must outlive it.
template <class F>
class Objective {
 public:
  explicit Objective(F& function) : f_(function) {
    if constexpr (Instrumented<F>) expensive_base_ = f_.ExpensiveCount();
  }

  [[nodiscard]] ObjectiveCapabilities capabilities() const { return detect_capabilities(f_); }

  /// Counters accumulated since construction.
  [[nodiscard]] EvaluationCounters counters() const {
    EvaluationCounters c = counters_;
    if constexpr (Instrumented<F>) c.n_expensive = f_.ExpensiveCount() - expensive_base_;
    return c;
  }

  F& function() noexcept { return f_; }

  double Evaluate(const Vector& x) {
    if constexpr (HasEvaluate<F>) {
      ++counters_.n_evaluate;
      return static_cast<double>(f_.Evaluate(x));
    } else if constexpr (HasEvaluateWithGradient<F>) {
      ++counters_.n_evaluate_with_gradient;
      return static_cast<double>(f_.EvaluateWithGradient(x, scratch_));
    } else {
      throw missing("Evaluate(x)", "Evaluate(x) or EvaluateWithGradient(x, g)");
    }
  }

  void Gradient(const Vector& x, Vector& g) {
    if constexpr (HasGradient<F>) {
      ++counters_.n_gradient;
      f_.Gradient(x, g);
    } else if constexpr (HasEvaluateWithGradient<F>) {
      ++counters_.n_evaluate_with_gradient;
      (void)f_.EvaluateWithGradient(x, g);
    } else {
      throw missing("Gradient(x, g)", "Gradient(x, g) or EvaluateWithGradient(x, g)");
    }
  }

  double EvaluateWithGradient(const Vector& x, Vector& g) {
    if constexpr (HasEvaluateWithGradient<F>) {
      ++counters_.n_evaluate_with_gradient;
      return static_cast<double>(f_.EvaluateWithGradient(x, g));
    } else if constexpr (HasEvaluate<F> && HasGradient<F>) {
      ++counters_.n_evaluate;
      const double value = static_cast<double>(f_.Evaluate(x));
      ++counters_.n_gradient;
      f_.Gradient(x, g);
      return value;
    } else {
      throw missing("EvaluateWithGradient(x, g)",
                    "EvaluateWithGradient(x, g) or both Evaluate(x) and Gradient(x, g)");
    }
  }

  // Separable (batch) forms.

  [[nodiscard]] std::size_t NumFunctions() const
    requires HasNumFunctions<F>
  {
    return static_cast<std::size_t>(f_.NumFunctions());
  }

  void Shuffle(Rng& rng)
    requires HasShuffle<F>
  {
    f_.Shuffle(rng);
  }

  double Evaluate(const Vector& x, BatchSpec batch) {
    if constexpr (HasBatchEvaluate<F>) {
      ++counters_.n_evaluate;
      return static_cast<double>(f_.Evaluate(x, batch));
    } else if constexpr (HasBatchEvaluateWithGradient<F>) {
      ++counters_.n_evaluate_with_gradient;
      return static_cast<double>(f_.EvaluateWithGradient(x, batch, scratch_));
    } else {
      throw missing("Evaluate(x, batch)",
                    "Evaluate(x, batch) or EvaluateWithGradient(x, batch, g)");
    }
  }

  void Gradient(const Vector& x, BatchSpec batch, Vector& g) {
    if constexpr (HasBatchGradient<F>) {
      ++counters_.n_gradient;
      f_.Gradient(x, batch, g);
    } else if constexpr (HasBatchEvaluateWithGradient<F>) {
      ++counters_.n_evaluate_with_gradient;
      (void)f_.EvaluateWithGradient(x, batch, g);
    } else {
      throw missing("Gradient(x, batch, g)",
                    "Gradient(x, batch, g) or EvaluateWithGradient(x, batch, g)");
    }
  }

  double EvaluateWithGradient(const Vector& x, BatchSpec batch, Vector& g) {
    if constexpr (HasBatchEvaluateWithGradient<F>) {
      ++counters_.n_evaluate_with_gradient;
      return static_cast<double>(f_.EvaluateWithGradient(x, batch, g));
    } else if constexpr (HasBatchEvaluate<F> && HasBatchGradient<F>) {
      ++counters_.n_evaluate;
      const double value = static_cast<double>(f_.Evaluate(x, batch));
      ++counters_.n_gradient;
      f_.Gradient(x, batch, g);
      return value;
    } else {
      throw missing("EvaluateWithGradient(x, batch, g)",
                    "EvaluateWithGradient(x, batch, g) or both Evaluate(x, batch) and "
                    "Gradient(x, batch, g)");
    }
  }

 private:
  static CapabilityError missing(const char* method, const char* needs) {
    return CapabilityError(std::string("cannot synthesize ") + method + ": requires " + needs +
                           "; function provides " +
                           describe_methods(static_capabilities<F>()));
  }

  F& f_;
  EvaluationCounters counters_;
  std::uint64_t expensive_base_ = 0;
  Vector scratch_;
};

}  // namespace optkit
