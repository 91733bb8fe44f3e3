#include "oracles.hpp"

#include <optkit/function/objective.hpp>
#include <optkit/problems/dataset.hpp>
#include <optkit/problems/linear_regression.hpp>
#include <optkit/problems/rosenbrock.hpp>

#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <sstream>

using namespace optkit;
using namespace optkit::testing;

// Rosenbrock ------------------------------------------------------------------

TEST(Rosenbrock, KnownValues) {
  EXPECT_EQ(rosenbrock_evaluate(Vector{{1.0, 1.0}}), 0.0);
  EXPECT_EQ(rosenbrock_evaluate(Vector{{0.0, 0.0}}), 1.0);
  EXPECT_NEAR(rosenbrock_evaluate(RosenbrockFunction::initial_point()), 24.2, 1e-12);
}

TEST(Rosenbrock, KnownGradients) {
  Vector g;
  rosenbrock_gradient(Vector{{1.0, 1.0}}, g);
  EXPECT_EQ(g, Vector::Zero(2));
  rosenbrock_gradient(Vector{{0.0, 0.0}}, g);
  EXPECT_EQ(g, (Vector{{-2.0, 0.0}}));
  // Hand derivative at (-1.2, 1): a = -0.44, g = (-400 * -1.2 * -0.44 - 2 * 2.2, 200 * -0.44).
  rosenbrock_gradient(RosenbrockFunction::initial_point(), g);
  EXPECT_NEAR(g[0], -215.6, 1e-10);
  EXPECT_NEAR(g[1], -88.0, 1e-10);
}

TEST(Rosenbrock, RejectsWrongDimension) {
  Vector g;
  EXPECT_THROW(rosenbrock_evaluate(Vector::Zero(3)), DimensionError);
  EXPECT_THROW(rosenbrock_gradient(Vector::Zero(1), g), DimensionError);
}

// Linear regression -----------------------------------------------------------

TEST(LinearRegression, HandValues) {
  const SeparableDataset data = identity_dataset();
  EXPECT_EQ(linreg_evaluate(data, Vector{{1.0, 2.0}}), 0.0);
  EXPECT_EQ(linreg_evaluate(data, Vector::Zero(2)), 5.0);
  EXPECT_EQ(linreg_evaluate(data, Vector{{1.0, 1.0}}), 1.0);
  Vector g;
  linreg_gradient(data, Vector::Zero(2), g);
  EXPECT_EQ(g, (Vector{{-2.0, -4.0}}));
  EXPECT_THROW(linreg_evaluate(data, Vector::Zero(3)), DimensionError);
}

TEST(LinearRegression, MatchesLoopReference) {
  const SeparableDataset data = generate_synthetic(30, 4, 1.0, 12);
  Rng rng(8);
  for (int trial = 0; trial < 100; ++trial) {
    const Vector theta = random_vector(rng, 4);
    Vector g, g_fused;
    linreg_gradient(data, theta, g);
    const double fused = linreg_evaluate_with_gradient(data, theta, g_fused);
    EXPECT_LE(relative_error(linreg_evaluate(data, theta), loop_objective(data, theta)), 1e-12);
    EXPECT_LE(max_relative_error(g, loop_gradient(data, theta), 1e-8), 1e-12);
    EXPECT_LE(relative_error(fused, loop_objective(data, theta)), 1e-12);
    EXPECT_LE(max_relative_error(g_fused, g, 1e-8), 1e-12);
  }
}

TEST(LinearRegression, ExpensiveCountOnePerCall) {
  const SeparableDataset data = identity_dataset();
  LinearRegressionFunction<> f(data);
  Vector g;
  f.Evaluate(Vector::Zero(2));
  f.Gradient(Vector::Zero(2), g);
  f.EvaluateWithGradient(Vector::Zero(2), g);
  EXPECT_EQ(f.ExpensiveCount(), 3u);
}

TEST(LinearRegression, MethodSetsFollowTemplateArgument) {
  static_assert(HasEvaluateWithGradient<LinearRegressionFunction<LinRegMethods::evaluate_with_gradient>>);
  static_assert(!HasEvaluate<LinearRegressionFunction<LinRegMethods::evaluate_with_gradient>>);
  static_assert(!HasGradient<LinearRegressionFunction<LinRegMethods::evaluate_with_gradient>>);
  static_assert(HasEvaluate<LinearRegressionFunction<LinRegMethods::evaluate_and_gradient>>);
  static_assert(HasGradient<LinearRegressionFunction<LinRegMethods::evaluate_and_gradient>>);
  static_assert(!HasEvaluateWithGradient<LinearRegressionFunction<LinRegMethods::evaluate_and_gradient>>);
  SUCCEED();
}

TEST(SeparableLinearRegression, SingleComponentBatch) {
  SeparableDataset data;
  data.X = Matrix::Zero(2, 2);
  data.X(1, 0) = 1.0;
  data.y = Vector{{0.0, 3.0}};
  SeparableLinearRegression<> f(data);
  // (3 - (1, 0) . (1, 1))^2 = 4
  EXPECT_EQ(f.Evaluate(Vector::Ones(2), BatchSpec{1, 1}), 4.0);
  Vector g;
  f.Gradient(Vector::Ones(2), BatchSpec{1, 1}, g);
  EXPECT_EQ(g, (Vector{{-4.0, 0.0}}));
}

TEST(SeparableLinearRegression, BatchErrors) {
  const SeparableDataset data = identity_dataset();
  SeparableLinearRegression<> f(data);
  EXPECT_THROW(f.Evaluate(Vector::Zero(2), BatchSpec{0, 0}), std::invalid_argument);
  EXPECT_THROW(f.Evaluate(Vector::Zero(2), BatchSpec{1, 2}), std::out_of_range);
  EXPECT_THROW(f.Evaluate(Vector::Zero(3), BatchSpec{0, 1}), DimensionError);
}

TEST(SeparableLinearRegression, ShuffleKeepsFullSum) {
  const SeparableDataset data = generate_synthetic(57, 3, 1.0, 2);
  SeparableLinearRegression<> f(data);
  Rng rng(1);
  const Vector theta = random_vector(rng, 3);
  const double before = f.Evaluate(theta, BatchSpec{0, 57});
  for (int k = 0; k < 5; ++k) {
    f.Shuffle(rng);
    EXPECT_LE(relative_error(f.Evaluate(theta, BatchSpec{0, 57}), before), 1e-12);
    // Evaluating batch by batch covers the dataset once.
    double pieces = 0.0;
    for (std::size_t b = 0; b < 57; b += 10)
      pieces += f.Evaluate(theta, BatchSpec{b, std::min<std::size_t>(10, 57 - b)});
    EXPECT_LE(relative_error(pieces, before), 1e-12);
  }
}

TEST(SeparableLinearRegression, ShuffleIsPermutationOfSamples) {
  const SeparableDataset data = generate_synthetic(20, 2, 1.0, 2);
  SeparableLinearRegression<> f(data);
  Rng rng(3);
  f.Shuffle(rng);
  std::vector<std::size_t> order = f.order();
  std::sort(order.begin(), order.end());
  for (std::size_t i = 0; i < order.size(); ++i) EXPECT_EQ(order[i], i);
}

// Synthetic data ----------------------------------------------------------------

TEST(Synthetic, NoiselessRecoversTrueCoefficients) {
  Vector truth;
  const SeparableDataset data = generate_synthetic(200, 10, 0.0, 4, &truth);
  const Vector fit = normal_equations_solution(data);
  EXPECT_LE((fit - truth).lpNorm<Eigen::Infinity>(), 1e-8);
  EXPECT_LE(linreg_evaluate(data, truth), 1e-16 * data.y.squaredNorm());
}

TEST(Synthetic, SeedDeterminesData) {
  const SeparableDataset a = generate_synthetic(50, 5, 1.0, 9);
  const SeparableDataset b = generate_synthetic(50, 5, 1.0, 9);
  const SeparableDataset c = generate_synthetic(50, 5, 1.0, 10);
  EXPECT_EQ(a.X, b.X);
  EXPECT_EQ(a.y, b.y);
  EXPECT_NE(a.X, c.X);
}

TEST(Synthetic, Shape) {
  const SeparableDataset data = generate_synthetic(1000, 100, 1.0, 0);
  EXPECT_EQ(data.n(), 1000u);
  EXPECT_EQ(data.d(), 100u);
  EXPECT_EQ(data.y.size(), 1000);
  // Standard normal features: sample moments near (0, 1).
  EXPECT_NEAR(data.X.mean(), 0.0, 0.01);
  EXPECT_NEAR(data.X.array().square().mean(), 1.0, 0.02);
  EXPECT_THROW(generate_synthetic(0, 2, 1.0, 0), std::invalid_argument);
  EXPECT_THROW(generate_synthetic(5, 2, -1.0, 0), std::invalid_argument);
}

TEST(Standardize, ZeroMeanUnitVariance) {
  SeparableDataset data = generate_synthetic(100, 3, 1.0, 5);
  data.X.col(0).array() = data.X.col(0).array() * 7.0 + 3.0;
  data.X.col(2).setConstant(4.0);
  standardize(data);
  EXPECT_NEAR(data.X.col(0).mean(), 0.0, 1e-12);
  EXPECT_NEAR(data.X.col(0).squaredNorm() / 100.0, 1.0, 1e-12);
  EXPECT_EQ(data.X.col(2), Vector::Zero(100));
}

// CSV -----------------------------------------------------------------------------

TEST(Csv, ParsesResponseFirst) {
  std::istringstream in("3,2\n1,0\n");
  const SeparableDataset data = parse_csv(in);
  EXPECT_EQ(data.n(), 2u);
  EXPECT_EQ(data.d(), 1u);
  EXPECT_EQ(data.y, (Vector{{3.0, 1.0}}));
  EXPECT_EQ(data.X(0, 0), 2.0);
  EXPECT_EQ(data.X(1, 0), 0.0);
}

TEST(Csv, HeaderAndBlankLines) {
  std::istringstream in("y,x1,x2\n\n1, 2 ,3\r\n\n4,5,6\n");
  const SeparableDataset data = parse_csv(in, true);
  EXPECT_EQ(data.n(), 2u);
  EXPECT_EQ(data.X(1, 1), 6.0);
}

TEST(Csv, ParseErrorLocation) {
  std::istringstream in("a,b\n");
  try {
    parse_csv(in);
    FAIL() << "expected CsvError";
  } catch (const CsvError& e) {
    EXPECT_EQ(e.row(), 1u);
    EXPECT_EQ(e.column(), 1u);
    EXPECT_NE(std::string(e.what()).find("parse error at row 1, column 1"), std::string::npos);
  }
  std::istringstream second("1,2\n3,x\n");
  try {
    parse_csv(second);
    FAIL() << "expected CsvError";
  } catch (const CsvError& e) {
    EXPECT_EQ(e.row(), 2u);
    EXPECT_EQ(e.column(), 2u);
  }
}

TEST(Csv, InconsistentColumns) {
  std::istringstream in("1,2,3\n4,5\n");
  try {
    parse_csv(in);
    FAIL() << "expected CsvError";
  } catch (const CsvError& e) {
    EXPECT_EQ(e.row(), 2u);
    EXPECT_NE(std::string(e.what()).find("inconsistent column count at row 2"), std::string::npos);
  }
}

TEST(Csv, EmptyInput) {
  std::istringstream in("\n\n");
  EXPECT_THROW(parse_csv(in), CsvError);
}

TEST(Csv, RoundTripIsBitExact) {
  const SeparableDataset data = generate_synthetic(25, 4, 1.0, 31);
  const auto path = std::filesystem::temp_directory_path() / "optkit_roundtrip.csv";
  write_dataset_csv(path.string(), data);
  const SeparableDataset back = load_csv(path.string());
  std::filesystem::remove(path);
  EXPECT_EQ(back.X, data.X);
  EXPECT_EQ(back.y, data.y);
}

TEST(Csv, MissingFile) {
  EXPECT_THROW(load_csv("/nonexistent/optkit.csv"), std::runtime_error);
}
