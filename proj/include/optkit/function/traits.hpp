#pragma once

#include <optkit/core/rng.hpp>
#include <optkit/core/types.hpp>

#include <concepts>
#include <cstddef>
#include <cstdint>
#include <string>

/// \file traits.hpp
///
/// The objective-function method vocabulary.
///
/// Full-batch objectives implement any subset of
///
///     double Evaluate(const Vector& x);
///     void   Gradient(const Vector& x, Vector& g);
///     double EvaluateWithGradient(const Vector& x, Vector& g);
///
/// Separable objectives f(x) = sum_i f_i(x) implement the same three methods
/// over a BatchSpec (the components [begin, begin + size)),
///
///     double Evaluate(const Vector& x, BatchSpec batch);
///     void   Gradient(const Vector& x, BatchSpec batch, Vector& g);
///     double EvaluateWithGradient(const Vector& x, BatchSpec batch, Vector& g);
///
/// plus `std::size_t NumFunctions() const` and `void Shuffle(Rng&)`.
///
/// Objectives that want their expensive intermediates counted expose
/// `std::uint64_t ExpensiveCount() const`.

namespace optkit {

template <class F>
concept HasEvaluate = requires(F& f, const Vector& x) {
  { f.Evaluate(x) } -> std::convertible_to<double>;
};

template <class F>
concept HasGradient = requires(F& f, const Vector& x, Vector& g) { f.Gradient(x, g); };

template <class F>
concept HasEvaluateWithGradient = requires(F& f, const Vector& x, Vector& g) {
  { f.EvaluateWithGradient(x, g) } -> std::convertible_to<double>;
};

template <class F>
concept HasBatchEvaluate = requires(F& f, const Vector& x, BatchSpec b) {
  { f.Evaluate(x, b) } -> std::convertible_to<double>;
};

template <class F>
concept HasBatchGradient = requires(F& f, const Vector& x, BatchSpec b, Vector& g) {
  f.Gradient(x, b, g);
};

template <class F>
concept HasBatchEvaluateWithGradient = requires(F& f, const Vector& x, BatchSpec b, Vector& g) {
  { f.EvaluateWithGradient(x, b, g) } -> std::convertible_to<double>;
};

template <class F>
concept HasNumFunctions = requires(const F& f) {
  { f.NumFunctions() } -> std::convertible_to<std::size_t>;
};

template <class F>
concept HasShuffle = requires(F& f, Rng& rng) { f.Shuffle(rng); };

template <class F>
concept Instrumented = requires(const F& f) {
  { f.ExpensiveCount() } -> std::convertible_to<std::uint64_t>;
};

template <class F>
concept SeparableFunction =
    HasNumFunctions<F> && HasShuffle<F> &&
    (HasBatchEvaluate<F> || HasBatchGradient<F> || HasBatchEvaluateWithGradient<F>);

// What can be produced once missing methods are synthesized.

template <class F>
concept CanEvaluate = HasEvaluate<F> || HasEvaluateWithGradient<F>;

template <class F>
concept CanGradient = HasGradient<F> || HasEvaluateWithGradient<F>;

template <class F>
concept CanEvaluateWithGradient =
    HasEvaluateWithGradient<F> || (HasEvaluate<F> && HasGradient<F>);

template <class F>
concept CanBatchEvaluate = HasBatchEvaluate<F> || HasBatchEvaluateWithGradient<F>;

template <class F>
concept CanBatchGradient = HasBatchGradient<F> || HasBatchEvaluateWithGradient<F>;

template <class F>
concept CanBatchEvaluateWithGradient =
    HasBatchEvaluateWithGradient<F> || (HasBatchEvaluate<F> && HasBatchGradient<F>);

/// Which vocabulary methods a function provides natively, before synthesis.
/// The `has_*` flags describe the full-batch forms; `has_batch_*` the
/// separable forms.
struct ObjectiveCapabilities {
  bool has_evaluate = false;
  bool has_gradient = false;
  bool has_evaluate_with_gradient = false;
  bool has_batch_evaluate = false;
  bool has_batch_gradient = false;
  bool has_batch_evaluate_with_gradient = false;
  bool is_separable = false;
  std::size_t num_functions = 0;

  [[nodiscard]] bool any_method() const noexcept {
    return has_evaluate || has_gradient || has_evaluate_with_gradient || has_batch_evaluate ||
           has_batch_gradient || has_batch_evaluate_with_gradient;
  }

  friend bool operator==(const ObjectiveCapabilities&, const ObjectiveCapabilities&) = default;
};

/// Compile-time part of the descriptor (num_functions left at 0).
template <class F>
constexpr ObjectiveCapabilities static_capabilities() noexcept {
  ObjectiveCapabilities c;
  c.has_evaluate = HasEvaluate<F>;
  c.has_gradient = HasGradient<F>;
  c.has_evaluate_with_gradient = HasEvaluateWithGradient<F>;
  c.has_batch_evaluate = HasBatchEvaluate<F>;
  c.has_batch_gradient = HasBatchGradient<F>;
  c.has_batch_evaluate_with_gradient = HasBatchEvaluateWithGradient<F>;
  c.is_separable = SeparableFunction<F>;
  return c;
}

/// Comma-separated list of the natively provided methods, or "none".
inline std::string describe_methods(const ObjectiveCapabilities& c) {
  std::string out;
  auto add = [&out](bool present, const char* name) {
    if (!present) return;
    if (!out.empty()) out += ", ";
    out += name;
  };
  add(c.has_evaluate, "Evaluate(x)");
  add(c.has_gradient, "Gradient(x, g)");
  add(c.has_evaluate_with_gradient, "EvaluateWithGradient(x, g)");
  add(c.has_batch_evaluate, "Evaluate(x, batch)");
  add(c.has_batch_gradient, "Gradient(x, batch, g)");
  add(c.has_batch_evaluate_with_gradient, "EvaluateWithGradient(x, batch, g)");
  if (c.is_separable) {
    if (!out.empty()) out += ", ";
    out += "NumFunctions(), Shuffle(rng)";
  }
  return out.empty() ? std::string("none") : out;
}

/// Reflects the natively provided methods of `f`. Throws CapabilityError
/// ("unusable objective") when `f` provides none of the vocabulary.
template <class F>
ObjectiveCapabilities detect_capabilities(const F& f) {
  ObjectiveCapabilities c = static_capabilities<F>();
  if (!c.any_method()) {
    throw CapabilityError(
        "unusable objective: provides none of Evaluate(x), Gradient(x, g), "
        "EvaluateWithGradient(x, g) or their batch forms");
  }
  if constexpr (SeparableFunction<F>) {
    c.num_functions = static_cast<std::size_t>(f.NumFunctions());
    c.is_separable = c.num_functions >= 1;
  }
  return c;
}

}  // namespace optkit
