#include "oracles.hpp"

#include <optkit/function/objective.hpp>
#include <optkit/lbfgs/history.hpp>
#include <optkit/lbfgs/lbfgs.hpp>
#include <optkit/lbfgs/line_search.hpp>
#include <optkit/problems/linear_regression.hpp>
#include <optkit/problems/rosenbrock.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <limits>

using namespace optkit;
using namespace optkit::testing;

namespace {

struct Parabola {
  double EvaluateWithGradient(const Vector& x, Vector& g) const {
    g = 2.0 * x;
    return x.squaredNorm();
  }
};

// Linear with no lower bound along +x: every trial satisfies sufficient
// decrease but never the curvature condition.
struct Unbounded {
  double EvaluateWithGradient(const Vector& x, Vector& g) const {
    g = Vector::Constant(x.size(), -1.0);
    return -x.sum();
  }
};

// Defined only on x < 1; NaN beyond.
struct Cliff {
  double EvaluateWithGradient(const Vector& x, Vector& g) const {
    g = Vector::Constant(1, -1.0);
    return x[0] < 1.0 ? -x[0] : std::numeric_limits<double>::quiet_NaN();
  }
};

}  // namespace

// Two-loop recursion ------------------------------------------------------------

TEST(TwoLoop, EmptyHistoryIsSteepestDescent) {
  LbfgsHistory h(5);
  const Vector g{{1.5, -2.0, 0.25}};
  EXPECT_EQ(two_loop_direction(h, g), Vector(-g));
}

TEST(TwoLoop, SinglePairByHand) {
  LbfgsHistory h(5);
  ASSERT_TRUE(h.push(Vector{{1.0, 0.0}}, Vector{{2.0, 0.0}}));
  const Vector d = two_loop_direction(h, Vector{{2.0, 0.0}});
  EXPECT_NEAR(d[0], -1.0, 1e-15);
  EXPECT_NEAR(d[1], 0.0, 1e-15);
}

TEST(TwoLoop, RecoversInverseHessianOnQuadratic) {
  // Two exact line-search steps on a 2-d quadratic give a history that
  // determines A exactly; the direction must then be -A^{-1} g.
  Eigen::MatrixXd A(2, 2);
  A << 3.0, 1.0, 1.0, 2.0;
  LbfgsHistory h(5);
  Vector x{{1.0, -2.0}};
  for (int k = 0; k < 2; ++k) {
    const Vector g = A * x;
    const Vector d = two_loop_direction(h, g);
    const double step = -g.dot(d) / d.dot(A * d);
    const Vector next = x + step * d;
    h.push(next - x, A * next - g);
    x = next;
  }
  Rng rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    const Vector g = random_vector(rng, 2);
    const Vector expected = -A.llt().solve(g);
    const Vector d = two_loop_direction(h, g);
    EXPECT_LE(max_relative_error(d, expected, 1e-12), 1e-6);
  }
}

TEST(History, RejectsNonPositiveCurvature) {
  LbfgsHistory h(3);
  EXPECT_FALSE(h.push(Vector{{1.0, 0.0}}, Vector{{-1.0, 0.0}}));
  EXPECT_FALSE(h.push(Vector{{1.0, 0.0}}, Vector{{0.0, 1.0}}));
  EXPECT_FALSE(h.push(Vector{{1.0, 0.0}}, Vector{{std::numeric_limits<double>::quiet_NaN(), 0.0}}));
  EXPECT_EQ(h.size(), 0u);
}

TEST(History, KeepsNewestPairsUpToCapacity) {
  LbfgsHistory h(3);
  for (int k = 1; k <= 5; ++k) h.push(Vector::Constant(1, k), Vector::Constant(1, 1.0));
  ASSERT_EQ(h.size(), 3u);
  EXPECT_EQ(h.capacity(), 3u);
  EXPECT_EQ(h.s(0)[0], 3.0);
  EXPECT_EQ(h.s(1)[0], 4.0);
  EXPECT_EQ(h.s(2)[0], 5.0);
  EXPECT_DOUBLE_EQ(h.rho(2), 0.2);
  h.clear();
  EXPECT_EQ(h.size(), 0u);
}

// Line search ------------------------------------------------------------------

TEST(LineSearch, ExactMinimizerOfParabola) {
  Parabola p;
  const Vector x = Vector::Ones(1);
  Vector g0 = 2.0 * x, x_out, g_out;
  const LineSearchResult r =
      wolfe_line_search(p, x, Vector::Constant(1, -2.0), 1.0, g0, LineSearchParams{}, x_out, g_out);
  ASSERT_TRUE(r.satisfied);
  EXPECT_NEAR(r.step, 0.5, 1e-12);
  EXPECT_NEAR(x_out[0], 0.0, 1e-12);
  EXPECT_TRUE(satisfies_strong_wolfe(1.0, -4.0, r.step, r.value, g_out.dot(Vector::Constant(1, -2.0)),
                                     1e-4, 0.9));
}

TEST(LineSearch, RejectsAscentDirection) {
  Parabola p;
  const Vector x = Vector::Ones(1);
  Vector x_out, g_out;
  EXPECT_THROW(wolfe_line_search(p, x, Vector::Constant(1, 1.0), 1.0, Vector(2.0 * x),
                                 LineSearchParams{}, x_out, g_out),
               std::invalid_argument);
}

TEST(LineSearch, ParamsValidated) {
  LineSearchParams p;
  p.c1 = 0.95;
  EXPECT_THROW(p.validate(), std::invalid_argument);
  p = LineSearchParams{};
  p.max_trials = 0;
  EXPECT_THROW(p.validate(), std::invalid_argument);
}

TEST(LineSearch, AcceptedStepsSatisfyStrongWolfe) {
  Rng rng(11);
  const SeparableDataset data = generate_synthetic(50, 5, 1.0, 21);
  LinearRegressionFunction<> f(data);
  const LineSearchParams params;
  for (int trial = 0; trial < 100; ++trial) {
    const Vector x = random_vector(rng, 5, -3.0, 3.0);
    Vector g0;
    const double f0 = f.EvaluateWithGradient(x, g0);
    Vector d = random_vector(rng, 5);
    if (d.dot(g0) >= 0.0) d = -d;
    if (d.dot(g0) == 0.0) continue;
    Vector x_out, g_out;
    const LineSearchResult r = wolfe_line_search(f, x, d, f0, g0, params, x_out, g_out);
    EXPECT_GT(r.step, 0.0);
    EXPECT_LE(r.value, f0 + params.c1 * r.step * g0.dot(d));
    if (r.satisfied) {
      EXPECT_TRUE(satisfies_strong_wolfe(f0, g0.dot(d), r.step, r.value, g_out.dot(d), params.c1,
                                         params.c2));
    }
  }
}

TEST(LineSearch, UnboundedDirectionReportsBestDecrease) {
  Unbounded f;
  LineSearchParams params;
  params.max_trials = 10;
  Vector x_out, g_out;
  const Vector x = Vector::Zero(1);
  const LineSearchResult r = wolfe_line_search(f, x, Vector::Ones(1), 0.0, Vector::Constant(1, -1.0),
                                               params, x_out, g_out);
  EXPECT_FALSE(r.satisfied);
  EXPECT_EQ(r.trials, 10u);
  EXPECT_DOUBLE_EQ(r.step, 512.0);
  EXPECT_DOUBLE_EQ(x_out[0], 512.0);
}

TEST(LineSearch, BacksOffNonFiniteRegion) {
  Cliff f;
  Vector x_out, g_out;
  const LineSearchResult r = wolfe_line_search(f, Vector::Zero(1), Vector::Constant(1, 4.0), 0.0,
                                               Vector::Constant(1, -1.0), LineSearchParams{},
                                               x_out, g_out);
  EXPECT_GT(r.step, 0.0);
  EXPECT_LT(x_out[0], 1.0);
  EXPECT_TRUE(std::isfinite(r.value));
}

// Optimizer ---------------------------------------------------------------------

TEST(OptimizeLbfgs, ShiftedBowlInOneStep) {
  ShiftedBowl f{Vector{{3.0, -1.0}}};
  LbfgsConfig c;
  c.max_iterations = 5;
  const OptimizationReport r = optimize_lbfgs(f, c, Vector::Zero(2));
  EXPECT_NEAR(r.final_coordinates[0], 3.0, 1e-8);
  EXPECT_NEAR(r.final_coordinates[1], -1.0, 1e-8);
  ASSERT_GE(r.trace.size(), 2u);
  EXPECT_NEAR(r.trace[1].objective, 0.0, 1e-16);
  EXPECT_LE(r.iterations, 5u);
  EXPECT_EQ(r.termination_reason, TerminationReason::gradient_tolerance);
}

TEST(OptimizeLbfgs, MatchesNormalEquations) {
  const SeparableDataset data = generate_synthetic(100, 10, 1.0, 77);
  LinearRegressionFunction<LinRegMethods::evaluate_with_gradient> f(data);
  LbfgsConfig c;
  c.grad_tolerance = 1e-9;
  const OptimizationReport r = optimize_lbfgs(f, c, Vector::Zero(10));
  const Vector expected = normal_equations_solution(data);
  EXPECT_LE((r.final_coordinates - expected).norm() / expected.norm(), 1e-6)
      << to_string(r.termination_reason);
}

TEST(OptimizeLbfgs, StrictlyDecreasingOnModerateRegression) {
  const SeparableDataset data = generate_synthetic(1000, 100, 1.0, 0);
  LinearRegressionFunction<> f(data);
  LbfgsConfig c;
  c.max_iterations = 10;
  const OptimizationReport r = optimize_lbfgs(f, c, Vector::Zero(100));
  ASSERT_EQ(r.trace.size(), 11u) << r.message;
  for (std::size_t i = 1; i < r.trace.size(); ++i)
    EXPECT_LT(r.trace[i].objective, r.trace[i - 1].objective) << "iteration " << i;
}

TEST(OptimizeLbfgs, MinimizesRosenbrock) {
  RosenbrockFunction f;
  LbfgsConfig c;
  c.grad_tolerance = 1e-8;
  c.max_iterations = 200;
  const OptimizationReport r = optimize_lbfgs(f, c, RosenbrockFunction::initial_point());
  EXPECT_NEAR(r.final_coordinates[0], 1.0, 1e-5);
  EXPECT_NEAR(r.final_coordinates[1], 1.0, 1e-5);
}

TEST(OptimizeLbfgs, TraceIsNonIncreasing) {
  RosenbrockFunction f;
  LbfgsConfig c;
  c.max_iterations = 100;
  const OptimizationReport r = optimize_lbfgs(f, c, RosenbrockFunction::initial_point());
  for (std::size_t i = 1; i < r.trace.size(); ++i) {
    EXPECT_EQ(r.trace[i].index, i);
    EXPECT_LE(r.trace[i].objective, r.trace[i - 1].objective);
  }
}

TEST(OptimizeLbfgs, UsesOnlyEvaluateWithGradientWhenNative) {
  const SeparableDataset data = generate_synthetic(200, 8, 1.0, 5);
  LinearRegressionFunction<> f(data);
  LbfgsConfig c;
  c.max_iterations = 10;
  const OptimizationReport r = optimize_lbfgs(f, c, Vector::Zero(8));
  EXPECT_EQ(r.counters.n_evaluate, 0u);
  EXPECT_EQ(r.counters.n_gradient, 0u);
  EXPECT_GT(r.counters.n_evaluate_with_gradient, 0u);
  EXPECT_EQ(r.counters.n_expensive, r.counters.n_evaluate_with_gradient);
}

TEST(OptimizeLbfgs, SynthesizedCallsCostTwoPasses) {
  const SeparableDataset data = generate_synthetic(200, 8, 1.0, 5);
  LinearRegressionFunction<> fused(data);
  LinearRegressionFunction<LinRegMethods::evaluate_and_gradient> split(data);
  LbfgsConfig c;
  c.max_iterations = 10;
  const OptimizationReport a = optimize_lbfgs(fused, c, Vector::Zero(8));
  const OptimizationReport b = optimize_lbfgs(split, c, Vector::Zero(8));
  EXPECT_EQ(a.trace.size(), b.trace.size());
  EXPECT_EQ(b.counters.n_evaluate, b.counters.n_gradient);
  EXPECT_EQ(b.counters.n_expensive, 2 * a.counters.n_expensive);
  EXPECT_LE(max_relative_error(a.final_coordinates, b.final_coordinates, 1e-12), 1e-9);
}

TEST(OptimizeLbfgs, MaxIterationsRespected) {
  RosenbrockFunction f;
  LbfgsConfig c;
  c.max_iterations = 3;
  const OptimizationReport r = optimize_lbfgs(f, c, RosenbrockFunction::initial_point());
  EXPECT_EQ(r.iterations, 3u);
  EXPECT_EQ(r.trace.size(), 4u);
  EXPECT_EQ(r.termination_reason, TerminationReason::max_iterations);
}

TEST(OptimizeLbfgs, ConfigAndInputValidation) {
  LbfgsConfig c;
  c.memory = 0;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = LbfgsConfig{};
  c.line_search_c2 = 1e-5;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  ShiftedBowl f{Vector::Zero(2)};
  Vector bad{{std::numeric_limits<double>::infinity(), 0.0}};
  EXPECT_THROW(optimize_lbfgs(f, LbfgsConfig{}, bad), NonFiniteError);
}

TEST(OptimizeLbfgs, Deterministic) {
  const SeparableDataset data = generate_synthetic(300, 20, 1.0, 6);
  LinearRegressionFunction<> f1(data), f2(data);
  LbfgsConfig c;
  c.max_iterations = 10;
  const OptimizationReport a = optimize_lbfgs(f1, c, Vector::Zero(20));
  const OptimizationReport b = optimize_lbfgs(f2, c, Vector::Zero(20));
  EXPECT_EQ(a.final_coordinates, b.final_coordinates);
  EXPECT_EQ(a.trace, b.trace);
  EXPECT_EQ(a.counters, b.counters);
}
