// optkit_bench: runs the Rosenbrock / simulated annealing, linear
// regression / L-BFGS and learning-curve benchmarks and prints CSV.
//
// Exit codes: 0 success, 1 runtime or I/O error, 2 usage error.

#include "bench.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace optkit;
using namespace optkit::bench;

constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

struct CommonOptions {
  std::uint64_t seed = 0;
  std::size_t repeat = 1;
  std::string out;
  std::string optimizer;
};

void add_common(CLI::App* cmd, CommonOptions& o) {
  cmd->add_option("--seed", o.seed, "Base RNG seed");
  cmd->add_option("--repeat", o.repeat, "Run with seeds seed..seed+k-1, one row each")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--out", o.out, "Output CSV path (default: standard output)");
}

// Writes to --out or stdout. Returns false if the file cannot be written.
bool emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
    return static_cast<bool>(std::cout);
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) return false;
  file << text;
  file.close();
  return static_cast<bool>(file);
}

std::vector<UpdateRule> parse_rule_list(const std::string& list) {
  std::vector<UpdateRule> rules;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      rules.push_back(parse_update_rule(item));
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }
  if (rules.empty()) throw UsageError("--optimizer lists no update rules");
  return rules;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"optkit benchmark harness"};
  app.require_subcommand(1);

  // rosenbrock
  CommonOptions ros;
  std::size_t max_evals = 100000;
  SaOverrides sa;
  auto* rosenbrock = app.add_subcommand("rosenbrock", "Simulated annealing on Rosenbrock");
  add_common(rosenbrock, ros);
  rosenbrock->add_option("--optimizer", ros.optimizer, "Optimizer (only 'sa')");
  rosenbrock->add_option("--max-evals", max_evals, "Objective-call budget");
  rosenbrock->add_option("--temperature", sa.initial_temperature, "Initial temperature");
  rosenbrock->add_option("--cooling", sa.cooling_factor, "Cooling factor per sweep, in (0, 1)");
  rosenbrock->add_option("--moves", sa.moves_per_temperature, "Proposals per sweep");
  rosenbrock->add_option("--move-scale", sa.move_scale, "Proposal half-width");

  // linreg
  CommonOptions lin;
  std::size_t lin_n = 1000, lin_d = 100, max_iters = kDefaultLbfgsIterations;
  double lin_noise = kDefaultNoiseSigma;
  std::string mode = "both";
  auto* linreg = app.add_subcommand("linreg", "L-BFGS on synthetic linear regression");
  add_common(linreg, lin);
  linreg->add_option("--optimizer", lin.optimizer, "Optimizer (only 'lbfgs')");
  linreg->add_option("--n", lin_n, "Samples");
  linreg->add_option("--d", lin_d, "Features");
  linreg->add_option("--noise", lin_noise, "Noise standard deviation");
  linreg->add_option("--max-iters", max_iters, "L-BFGS iterations (0 = until converged)");
  linreg->add_option("--mode", mode, "ewg, separate or both");

  // curves
  CommonOptions cur;
  CurvesOptions curves_opts;
  std::optional<double> step;
  auto* curves = app.add_subcommand("curves", "Learning curves of the SGD-family rules");
  add_common(curves, cur);
  curves->add_option("--optimizer", cur.optimizer,
                     "Comma-separated rules (default sgd,adam,adagrad,smorms3,rmsprop)");
  curves->add_option("--n", curves_opts.n, "Synthetic samples");
  curves->add_option("--d", curves_opts.d, "Synthetic features");
  curves->add_option("--noise", curves_opts.noise_sigma, "Synthetic noise standard deviation");
  curves->add_option("--epochs", curves_opts.epochs, "Epochs");
  curves->add_option("--batch-size", curves_opts.batch_size, "Mini-batch size");
  curves->add_option("--step-size", step, "Step size for every rule (default: per rule)");
  curves->add_option("--dataset", curves_opts.dataset_path,
                     "CSV dataset (response first); synthetic data if omitted");
  curves->add_flag("--has-header", curves_opts.has_header, "Skip the first CSV line");
  curves->add_flag("--standardize", curves_opts.standardize, "Standardize feature columns");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  std::ostringstream text;
  std::string out_path;
  try {
    if (rosenbrock->parsed()) {
      if (!ros.optimizer.empty() && ros.optimizer != "sa")
        throw UsageError("rosenbrock supports --optimizer sa only");
      std::vector<BenchResultRow> rows;
      for (std::size_t k = 0; k < ros.repeat; ++k)
        rows.push_back(run_rosenbrock_bench(max_evals, ros.seed + k, sa));
      write_csv(text, rows);
      out_path = ros.out;
    } else if (linreg->parsed()) {
      if (!lin.optimizer.empty() && lin.optimizer != "lbfgs")
        throw UsageError("linreg supports --optimizer lbfgs only");
      std::vector<LinRegMode> modes;
      if (mode == "both") {
        modes = {LinRegMode::ewg, LinRegMode::separate};
      } else {
        modes = {parse_linreg_mode(mode)};
      }
      std::vector<BenchResultRow> rows;
      for (std::size_t k = 0; k < lin.repeat; ++k)
        for (LinRegMode m : modes)
          rows.push_back(run_linreg_bench(lin_n, lin_d, lin.seed + k, m, max_iters, lin_noise));
      write_csv(text, rows);
      out_path = lin.out;
    } else if (curves->parsed()) {
      if (!cur.optimizer.empty()) curves_opts.rules = parse_rule_list(cur.optimizer);
      curves_opts.step_size = step;
      curves_opts.seed = cur.seed;
      std::vector<CurvePoint> points;
      for (std::size_t k = 0; k < cur.repeat; ++k) {
        CurvesOptions o = curves_opts;
        o.seed = cur.seed + k;
        const auto run = run_learning_curves(o);
        points.insert(points.end(), run.begin(), run.end());
      }
      write_csv(text, points);
      out_path = cur.out;
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }

  if (!emit(out_path, text.str())) {
    std::cerr << "error: cannot write '" << out_path << "'\n";
    return kExitRuntime;
  }
  return 0;
}
