// Fits one linear-regression problem with several optimizers.
//
// The objective is written once with Evaluate + Gradient; optkit
// synthesizes EvaluateWithGradient for L-BFGS and the separable form drives
// the mini-batch rules.

#include <optkit/optkit.hpp>

#include <iostream>

int main() {
  using namespace optkit;

  const SeparableDataset data = generate_synthetic(2000, 20, 0.5, 7);
  const Vector start = Vector::Zero(20);

  LinearRegressionFunction<LinRegMethods::evaluate_and_gradient> full(data);
  const OptimizationReport lbfgs = optimize_lbfgs(full, LbfgsConfig{}, start);
  std::cout << "lbfgs     " << lbfgs.final_objective << " after " << lbfgs.iterations
            << " iterations\n";

  SgdConfig config;
  config.batch_size = 1;
  config.max_epochs = 5;
  config.tolerance = 0.0;
  for (UpdateRule rule : {UpdateRule::vanilla, UpdateRule::adam, UpdateRule::adagrad,
                          UpdateRule::smorms3, UpdateRule::rmsprop}) {
    SeparableLinearRegression<> f(data);
    config.step_size = default_step_size(rule);
    const OptimizationReport r = optimize_separable(f, rule, config, start);
    std::cout << to_string(rule) << std::string(10 - to_string(rule).size(), ' ')
              << r.final_objective << '\n';
  }

  RosenbrockFunction rosenbrock;
  const OptimizationReport sa = optimize_sa(rosenbrock, SaConfig{}, RosenbrockFunction::initial_point());
  std::cout << "sa        " << sa.final_objective << " at (" << sa.final_coordinates.transpose()
            << ")\n";
}
