#pragma once

#include <optkit/optkit.hpp>

#include <charconv>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

namespace optkit::bench {

/// Bad command-line input (exit code 2).
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct BenchResultRow {
  std::string problem;
  std::string optimizer;
  std::size_t n = 0;
  std::size_t d = 0;
  std::uint64_t seed = 0;
  std::size_t iterations = 0;
  double final_objective = 0.0;
  double wall_time_ms = 0.0;
  EvaluationCounters counters;
};

inline constexpr std::string_view kResultsHeader =
    "problem,optimizer,n,d,seed,iterations,final_objective,wall_time_ms,n_evaluate,n_gradient,"
    "n_ewg,n_expensive";
inline constexpr std::string_view kCurvesHeader = "optimizer,epoch,objective";

inline BenchResultRow make_row(std::string problem, std::string optimizer, std::size_t n,
                               std::size_t d, std::uint64_t seed,
                               const OptimizationReport& report) {
  BenchResultRow row;
  row.problem = std::move(problem);
  row.optimizer = std::move(optimizer);
  row.n = n;
  row.d = d;
  row.seed = seed;
  row.iterations = report.iterations;
  row.final_objective = report.final_objective;
  row.wall_time_ms = report.wall_time * 1e3;
  row.counters = report.counters;
  return row;
}

// Rosenbrock / simulated annealing ------------------------------------------

struct SaOverrides {
  std::optional<double> initial_temperature;
  std::optional<double> cooling_factor;
  std::optional<std::size_t> moves_per_temperature;
  std::optional<double> move_scale;
};

inline SaConfig make_sa_config(std::size_t max_evals, std::uint64_t seed,
                               const SaOverrides& overrides) {
  if (max_evals < 1) throw UsageError("--max-evals must be at least 1");
  SaConfig config;
  config.max_evaluations = max_evals;
  config.seed = seed;
  if (overrides.initial_temperature) config.initial_temperature = *overrides.initial_temperature;
  if (overrides.cooling_factor) config.cooling_factor = *overrides.cooling_factor;
  if (overrides.moves_per_temperature) config.moves_per_temperature = *overrides.moves_per_temperature;
  if (overrides.move_scale) config.move_scale = Vector::Constant(1, *overrides.move_scale);
  try {
    config.validate(2);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  return config;
}

/// Simulated annealing on Rosenbrock from (-1.2, 1). `iterations` in the
/// row is the number of objective calls.
inline BenchResultRow run_rosenbrock_bench(std::size_t max_evals, std::uint64_t seed,
                                           const SaOverrides& overrides = {},
                                           OptimizationReport* report_out = nullptr) {
  const SaConfig config = make_sa_config(max_evals, seed, overrides);
  RosenbrockFunction f;
  OptimizationReport report = optimize_sa(f, config, RosenbrockFunction::initial_point());
  BenchResultRow row = make_row("rosenbrock", "sa", 0, 0, seed, report);
  if (report_out) *report_out = std::move(report);
  return row;
}

// Linear regression / L-BFGS -----------------------------------------------

/// ewg: the objective offers EvaluateWithGradient only.
/// separate: it offers Evaluate and Gradient only.
enum class LinRegMode { ewg, separate };

inline std::string_view to_string(LinRegMode mode) {
  return mode == LinRegMode::ewg ? "ewg" : "separate";
}

inline LinRegMode parse_linreg_mode(std::string_view s) {
  if (s == "ewg") return LinRegMode::ewg;
  if (s == "separate") return LinRegMode::separate;
  throw UsageError("unknown --mode '" + std::string(s) + "' (expected ewg or separate)");
}

inline constexpr double kDefaultNoiseSigma = 1.0;
inline constexpr std::size_t kDefaultLbfgsIterations = 10;

/// L-BFGS from theta = 0 on synthetic data. Data generation is outside the
/// timed region.
inline BenchResultRow run_linreg_bench(std::size_t n, std::size_t d, std::uint64_t seed,
                                       LinRegMode mode,
                                       std::size_t max_iterations = kDefaultLbfgsIterations,
                                       double noise_sigma = kDefaultNoiseSigma,
                                       OptimizationReport* report_out = nullptr) {
  if (d < 1) throw UsageError("--d must be at least 1");
  if (n <= d) throw UsageError("linreg needs --n greater than --d");
  const SeparableDataset data = generate_synthetic(n, d, noise_sigma, seed);
  LbfgsConfig config;
  config.max_iterations = max_iterations;
  const Vector initial = Vector::Zero(static_cast<Eigen::Index>(d));

  OptimizationReport report;
  if (mode == LinRegMode::ewg) {
    LinearRegressionFunction<LinRegMethods::evaluate_with_gradient> f(data);
    report = optimize_lbfgs(f, config, initial);
  } else {
    LinearRegressionFunction<LinRegMethods::evaluate_and_gradient> f(data);
    report = optimize_lbfgs(f, config, initial);
  }
  BenchResultRow row =
      make_row("linreg", "lbfgs-" + std::string(to_string(mode)), n, d, seed, report);
  if (report_out) *report_out = std::move(report);
  return row;
}

// Learning curves ------------------------------------------------------------

struct CurvePoint {
  std::string optimizer;
  std::size_t epoch = 0;
  double objective = 0.0;
};

inline std::vector<UpdateRule> default_curve_rules() {
  return {UpdateRule::vanilla, UpdateRule::adam, UpdateRule::adagrad, UpdateRule::smorms3,
          UpdateRule::rmsprop};
}

struct CurvesOptions {
  /// CSV dataset; synthetic data is generated when empty.
  std::string dataset_path;
  bool has_header = false;
  bool standardize = false;
  std::size_t n = 10000;
  std::size_t d = 50;
  double noise_sigma = kDefaultNoiseSigma;
  std::size_t epochs = 5;
  std::size_t batch_size = 1;
  /// Overrides every rule's default step size.
  std::optional<double> step_size;
  std::uint64_t seed = 0;
  std::vector<UpdateRule> rules = default_curve_rules();
};

inline SeparableDataset load_curves_dataset(const CurvesOptions& options) {
  SeparableDataset data;
  if (options.dataset_path.empty()) {
    if (options.n < 1 || options.d < 1) throw UsageError("--n and --d must be at least 1");
    data = generate_synthetic(options.n, options.d, options.noise_sigma, options.seed);
  } else {
    data = load_csv(options.dataset_path, options.has_header);
  }
  if (options.standardize) standardize(data);
  return data;
}

/// One mini-batch run per rule, all from theta = 0 with the same seed.
/// Yields epochs + 1 points per rule (epoch 0 is the initial objective).
inline std::vector<CurvePoint> run_learning_curves(const SeparableDataset& data,
                                                   const CurvesOptions& options) {
  if (options.epochs < 1) throw UsageError("--epochs must be at least 1");
  if (options.batch_size < 1) throw UsageError("--batch-size must be at least 1");
  if (options.step_size && !(*options.step_size > 0.0))
    throw UsageError("--step-size must be positive");

  std::vector<CurvePoint> points;
  const Vector initial = Vector::Zero(static_cast<Eigen::Index>(data.d()));
  for (UpdateRule rule : options.rules) {
    SgdConfig config;
    config.step_size = options.step_size.value_or(default_step_size(rule));
    config.batch_size = options.batch_size;
    config.max_epochs = options.epochs;
    config.tolerance = 0.0;
    config.shuffle = true;
    config.seed = options.seed;
    SeparableLinearRegression<> f(data);
    const OptimizationReport report = optimize_separable(f, rule, config, initial);
    for (const TracePoint& p : report.trace)
      points.push_back({std::string(to_string(rule)), p.index, p.objective});
  }
  return points;
}

inline std::vector<CurvePoint> run_learning_curves(const CurvesOptions& options) {
  return run_learning_curves(load_curves_dataset(options), options);
}

// CSV output -------------------------------------------------------------------

inline void write_csv(std::ostream& out, const std::vector<BenchResultRow>& rows) {
  out << kResultsHeader << '\n';
  for (const BenchResultRow& r : rows) {
    out << r.problem << ',' << r.optimizer << ',' << r.n << ',' << r.d << ',' << r.seed << ','
        << r.iterations << ',' << format_real(r.final_objective) << ','
        << format_real(r.wall_time_ms) << ',' << r.counters.n_evaluate << ','
        << r.counters.n_gradient << ',' << r.counters.n_evaluate_with_gradient << ','
        << r.counters.n_expensive << '\n';
  }
}

inline void write_csv(std::ostream& out, const std::vector<CurvePoint>& points) {
  out << kCurvesHeader << '\n';
  for (const CurvePoint& p : points)
    out << p.optimizer << ',' << p.epoch << ',' << format_real(p.objective) << '\n';
}

/// Reads back a results file written by write_csv.
inline std::vector<BenchResultRow> read_results_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kResultsHeader)
    throw std::runtime_error("results CSV: missing or unexpected header");
  std::vector<BenchResultRow> rows;
  std::size_t line_number = 1;
  auto to_uint = [&](std::string_view s) {
    std::uint64_t v = 0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
      throw std::runtime_error("results CSV: bad integer at line " + std::to_string(line_number));
    return v;
  };
  auto to_real = [&](std::string_view s) {
    const auto v = parse_real(s);
    if (!v) throw std::runtime_error("results CSV: bad number at line " + std::to_string(line_number));
    return *v;
  };
  while (std::getline(in, line)) {
    ++line_number;
    if (line.empty()) continue;
    const auto f = split_fields(line);
    if (f.size() != 12)
      throw std::runtime_error("results CSV: expected 12 fields at line " +
                               std::to_string(line_number));
    BenchResultRow r;
    r.problem = std::string(f[0]);
    r.optimizer = std::string(f[1]);
    r.n = to_uint(f[2]);
    r.d = to_uint(f[3]);
    r.seed = to_uint(f[4]);
    r.iterations = to_uint(f[5]);
    r.final_objective = to_real(f[6]);
    r.wall_time_ms = to_real(f[7]);
    r.counters.n_evaluate = to_uint(f[8]);
    r.counters.n_gradient = to_uint(f[9]);
    r.counters.n_evaluate_with_gradient = to_uint(f[10]);
    r.counters.n_expensive = to_uint(f[11]);
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace optkit::bench
