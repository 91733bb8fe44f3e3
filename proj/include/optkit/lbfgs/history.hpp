#pragma once

#include <optkit/core/types.hpp>

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace optkit {

/// Ring buffer of the last `memory` curvature pairs (s_k, y_k) with
/// rho_k = 1 / (y_k' s_k). Pairs with y' s <= 0 are skipped, so every
/// stored rho is positive and finite.
class LbfgsHistory {
 public:
  explicit LbfgsHistory(std::size_t memory) : capacity_(memory) {
    if (memory < 1) throw std::invalid_argument("L-BFGS memory must be at least 1");
    s_.reserve(memory);
    y_.reserve(memory);
    rho_.reserve(memory);
  }

  [[nodiscard]] std::size_t size() const noexcept { return s_.size(); }
  [[nodiscard]] std::size_t capacity() const noexcept { return capacity_; }
  [[nodiscard]] bool empty() const noexcept { return s_.empty(); }

  /// Stores (s, y) unless the curvature condition fails. Returns whether
  /// the pair was stored.
  bool push(const Vector& s, const Vector& y) {
    detail::require_same_size(s, y, "L-BFGS history");
    const double curvature = y.dot(s);
    if (!(curvature > 0.0) || !std::isfinite(curvature)) return false;
    const double rho = 1.0 / curvature;
    if (!std::isfinite(rho)) return false;
    if (s_.size() < capacity_) {
      s_.push_back(s);
      y_.push_back(y);
      rho_.push_back(rho);
    } else {
      s_[head_] = s;
      y_[head_] = y;
      rho_[head_] = rho;
      head_ = (head_ + 1) % capacity_;
    }
    return true;
  }

  void clear() noexcept {
    s_.clear();
    y_.clear();
    rho_.clear();
    head_ = 0;
  }

  // Index 0 is the oldest stored pair, size() - 1 the newest.
  [[nodiscard]] const Vector& s(std::size_t i) const { return s_[slot(i)]; }
  [[nodiscard]] const Vector& y(std::size_t i) const { return y_[slot(i)]; }
  [[nodiscard]] double rho(std::size_t i) const { return rho_[slot(i)]; }

 private:
  [[nodiscard]] std::size_t slot(std::size_t i) const noexcept {
    return s_.size() < capacity_ ? i : (head_ + i) % capacity_;
  }

  std::size_t capacity_;
  std::size_t head_ = 0;  // oldest slot once full
  std::vector<Vector> s_;
  std::vector<Vector> y_;
  std::vector<double> rho_;
};

/// Two-loop recursion: returns d = -H g, where H is the L-BFGS inverse
/// Hessian approximation built from `history` on top of gamma * I with
/// gamma = s'y / y'y of the newest pair. With no history, d = -g.
inline Vector two_loop_direction(const LbfgsHistory& history, const Vector& gradient) {
  Vector q = gradient;
  const std::size_t m = history.size();
  if (m == 0) return -q;

  std::vector<double> alpha(m);
  for (std::size_t k = m; k-- > 0;) {
    alpha[k] = history.rho(k) * history.s(k).dot(q);
    q -= alpha[k] * history.y(k);
  }

  const Vector& s_last = history.s(m - 1);
  const Vector& y_last = history.y(m - 1);
  const double gamma = s_last.dot(y_last) / y_last.squaredNorm();
  q *= gamma;

  for (std::size_t k = 0; k < m; ++k) {
    const double beta = history.rho(k) * history.y(k).dot(q);
    q += (alpha[k] - beta) * history.s(k);
  }
  return -q;
}

}  // namespace optkit
