#pragma once

#include <optkit/core/types.hpp>
#include <optkit/update/update_policies.hpp>

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

namespace optkit {

enum class UpdateRule { vanilla, adagrad, adadelta, rmsprop, smorms3, adam, adamax };

inline constexpr std::array<UpdateRule, 7> kAllUpdateRules = {
    UpdateRule::vanilla, UpdateRule::adagrad, UpdateRule::adadelta, UpdateRule::rmsprop,
    UpdateRule::smorms3, UpdateRule::adam,    UpdateRule::adamax};

using AnyUpdatePolicy = std::variant<VanillaUpdate, AdaGradUpdate, AdaDeltaUpdate, RMSPropUpdate,
                                     Smorms3Update, AdamUpdate, AdaMaxUpdate>;

inline AnyUpdatePolicy make_policy(UpdateRule rule) {
  switch (rule) {
    case UpdateRule::vanilla: return VanillaUpdate{};
    case UpdateRule::adagrad: return AdaGradUpdate{};
    case UpdateRule::adadelta: return AdaDeltaUpdate{};
    case UpdateRule::rmsprop: return RMSPropUpdate{};
    case UpdateRule::smorms3: return Smorms3Update{};
    case UpdateRule::adam: return AdamUpdate{};
    case UpdateRule::adamax: return AdaMaxUpdate{};
  }
  throw std::invalid_argument("unknown update rule: " +
                              std::to_string(static_cast<int>(rule)));
}

inline std::string_view to_string(UpdateRule rule) {
  return std::visit([](const auto& p) { return std::decay_t<decltype(p)>::kName; },
                    make_policy(rule));
}

/// Accepts the names printed by to_string ("sgd", "adam", ...); "vanilla"
/// is an alias for "sgd".
inline UpdateRule parse_update_rule(std::string_view name) {
  if (name == "vanilla") return UpdateRule::vanilla;
  for (UpdateRule r : kAllUpdateRules) {
    if (to_string(r) == name) return r;
  }
  throw std::invalid_argument("unknown update rule: " + std::string(name));
}

inline double default_step_size(UpdateRule rule) {
  return std::visit([](const auto& p) { return std::decay_t<decltype(p)>::kDefaultStepSize; },
                    make_policy(rule));
}

/// Runtime-selected update rule with its accumulators.
class UpdateState {
 public:
  UpdateState(UpdateRule rule, Eigen::Index dimension)
      : rule_(rule), dimension_(dimension), policy_(make_policy(rule)) {
    if (dimension < 1) throw DimensionError("update state dimension must be at least 1");
    std::visit([dimension](auto& p) { p.Initialize(dimension); }, policy_);
  }

  [[nodiscard]] UpdateRule rule() const noexcept { return rule_; }
  [[nodiscard]] Eigen::Index dimension() const noexcept { return dimension_; }

  [[nodiscard]] std::uint64_t step_count() const {
    return std::visit([](const auto& p) { return p.steps(); }, policy_);
  }

  /// Named accumulator vector, or nullptr if the rule has none by that name.
  [[nodiscard]] const Vector* accumulator(std::string_view name) const {
    return std::visit([name](const auto& p) { return p.accumulator(name); }, policy_);
  }

  /// In-place update without argument checks.
  void update(Vector& iterate, double step_size, const Vector& gradient) {
    std::visit([&](auto& p) { p.Update(iterate, step_size, gradient); }, policy_);
  }

 private:
  UpdateRule rule_;
  Eigen::Index dimension_;
  AnyUpdatePolicy policy_;
};

inline UpdateState init_state(UpdateRule rule, Eigen::Index dimension) {
  return UpdateState(rule, dimension);
}

/// Returns the updated iterate and advances `state`.
inline Vector apply_update(UpdateState& state, const Vector& theta, const Vector& gradient,
                           double step_size) {
  if (theta.size() != state.dimension() || gradient.size() != state.dimension()) {
    throw DimensionError("dimension mismatch: state has " + std::to_string(state.dimension()) +
                         ", theta " + std::to_string(theta.size()) + ", gradient " +
                         std::to_string(gradient.size()));
  }
  if (!(step_size > 0.0)) throw std::invalid_argument("step size must be positive");
  if (!gradient.allFinite()) throw NonFiniteError("non-finite gradient");
  Vector next = theta;
  state.update(next, step_size, gradient);
  return next;
}

}  // namespace optkit
