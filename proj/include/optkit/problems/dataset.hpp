#pragma once

#include <optkit/core/csv.hpp>
#include <optkit/core/rng.hpp>
#include <optkit/core/types.hpp>

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace optkit {

/// Regression data: one sample per row of X, responses in y.
struct SeparableDataset {
  Matrix X;
  Vector y;

  [[nodiscard]] std::size_t n() const noexcept { return static_cast<std::size_t>(X.rows()); }
  [[nodiscard]] std::size_t d() const noexcept { return static_cast<std::size_t>(X.cols()); }

  void validate() const {
    if (X.rows() < 1 || X.cols() < 1) throw DimensionError("dataset must have n >= 1 and d >= 1");
    if (y.size() != X.rows())
      throw DimensionError("dataset has " + std::to_string(X.rows()) + " rows but " +
                           std::to_string(y.size()) + " responses");
    if (!X.allFinite() || !y.allFinite()) throw NonFiniteError("dataset has non-finite entries");
  }
};

/// Synthetic linear data: X and the true coefficients are standard normal,
/// y = X theta* + noise_sigma * N(0, 1). Draw order is theta*, then X row by
/// row, then the noise, so a seed fixes everything.
inline SeparableDataset generate_synthetic(std::size_t n, std::size_t d, double noise_sigma,
                                           std::uint64_t seed, Vector* true_theta = nullptr) {
  if (n < 1 || d < 1) throw std::invalid_argument("generate_synthetic: need n >= 1 and d >= 1");
  if (!(noise_sigma >= 0.0)) throw std::invalid_argument("generate_synthetic: noise_sigma < 0");
  Rng rng(seed);
  const auto rows = static_cast<Eigen::Index>(n);
  const auto cols = static_cast<Eigen::Index>(d);
  Vector theta(cols);
  for (Eigen::Index j = 0; j < cols; ++j) theta[j] = rng.normal();
  SeparableDataset data;
  data.X.resize(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) data.X(i, j) = rng.normal();
  data.y = data.X * theta;
  for (Eigen::Index i = 0; i < rows; ++i) data.y[i] += noise_sigma * rng.normal();
  if (true_theta) *true_theta = std::move(theta);
  return data;
}

/// Rescales every feature column to zero mean and unit (population)
/// variance. Constant columns are only centered.
inline void standardize(SeparableDataset& data) {
  const double n = static_cast<double>(data.X.rows());
  for (Eigen::Index j = 0; j < data.X.cols(); ++j) {
    auto column = data.X.col(j);
    const double mean = column.sum() / n;
    column.array() -= mean;
    const double sd = std::sqrt(column.squaredNorm() / n);
    if (sd > 0.0) column /= sd;
  }
}

/// Malformed CSV input. row() and column() are 1-based; column() is 0 for
/// whole-row problems.
class CsvError : public std::runtime_error {
 public:
  CsvError(const std::string& what, std::size_t row, std::size_t column)
      : std::runtime_error(what), row_(row), column_(column) {}
  [[nodiscard]] std::size_t row() const noexcept { return row_; }
  [[nodiscard]] std::size_t column() const noexcept { return column_; }

 private:
  std::size_t row_;
  std::size_t column_;
};

/// Reads a numeric CSV: one sample per line, the response first, then the
/// features. Blank lines are ignored. With `has_header`, the first line is
/// skipped.
inline SeparableDataset parse_csv(std::istream& in, bool has_header = false) {
  std::vector<double> values;
  std::size_t columns = 0;
  std::size_t rows = 0;
  std::size_t line_number = 0;
  std::string line;
  while (std::getline(in, line)) {
    ++line_number;
    if (has_header && line_number == 1) continue;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto fields = split_fields(line);
    if (columns == 0) {
      if (fields.size() < 2)
        throw CsvError("row " + std::to_string(line_number) +
                           ": need a response and at least one feature",
                       line_number, 0);
      columns = fields.size();
    } else if (fields.size() != columns) {
      throw CsvError("inconsistent column count at row " + std::to_string(line_number) + ": " +
                         std::to_string(fields.size()) + " instead of " + std::to_string(columns),
                     line_number, 0);
    }
    for (std::size_t c = 0; c < fields.size(); ++c) {
      const auto v = parse_real(fields[c]);
      if (!v || !std::isfinite(*v))
        throw CsvError("parse error at row " + std::to_string(line_number) + ", column " +
                           std::to_string(c + 1) + ": '" + std::string(fields[c]) + "'",
                       line_number, c + 1);
      values.push_back(*v);
    }
    ++rows;
  }
  if (rows == 0) throw CsvError("no data rows", line_number, 0);

  SeparableDataset data;
  const auto n = static_cast<Eigen::Index>(rows);
  const auto d = static_cast<Eigen::Index>(columns - 1);
  data.X.resize(n, d);
  data.y.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double* row = values.data() + static_cast<std::size_t>(i) * columns;
    data.y[i] = row[0];
    for (Eigen::Index j = 0; j < d; ++j) data.X(i, j) = row[j + 1];
  }
  return data;
}

inline SeparableDataset load_csv(const std::string& path, bool has_header = false) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open dataset '" + path + "'");
  return parse_csv(in, has_header);
}

/// Writes `data` in the format read by load_csv.
inline void write_dataset_csv(std::ostream& out, const SeparableDataset& data) {
  for (Eigen::Index i = 0; i < data.X.rows(); ++i) {
    out << format_real(data.y[i]);
    for (Eigen::Index j = 0; j < data.X.cols(); ++j) out << ',' << format_real(data.X(i, j));
    out << '\n';
  }
}

inline void write_dataset_csv(const std::string& path, const SeparableDataset& data) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write dataset '" + path + "'");
  write_dataset_csv(out, data);
  if (!out) throw std::runtime_error("error while writing dataset '" + path + "'");
}

}  // namespace optkit
