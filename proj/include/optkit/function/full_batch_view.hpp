#pragma once

#include <optkit/core/types.hpp>
#include <optkit/function/traits.hpp>

#include <cstdint>

namespace optkit {

/// Presents a separable objective as an ordinary full-batch one: each
/// method runs over BatchSpec{0, NumFunctions()}. Only the batch methods
/// the wrapped function provides are exposed, so wrapping the view in an
/// Objective synthesizes the rest as usual.
template <SeparableFunction F>
class FullBatchView {
 public:
  explicit FullBatchView(F& function) : f_(function) {
    if (f_.NumFunctions() == 0) throw CapabilityError("not separable: NumFunctions() is 0");
  }

  [[nodiscard]] BatchSpec all() const { return {0, static_cast<std::size_t>(f_.NumFunctions())}; }

  double Evaluate(const Vector& x)
    requires HasBatchEvaluate<F>
  {
    return f_.Evaluate(x, all());
  }

  void Gradient(const Vector& x, Vector& g)
    requires HasBatchGradient<F>
  {
    f_.Gradient(x, all(), g);
  }

  double EvaluateWithGradient(const Vector& x, Vector& g)
    requires HasBatchEvaluateWithGradient<F>
  {
    return f_.EvaluateWithGradient(x, all(), g);
  }

  [[nodiscard]] std::uint64_t ExpensiveCount() const
    requires Instrumented<F>
  {
    return f_.ExpensiveCount();
  }

 private:
  F& f_;
};

template <SeparableFunction F>
FullBatchView<F> full_batch_view(F& function) {
  return FullBatchView<F>(function);
}

}  // namespace optkit
