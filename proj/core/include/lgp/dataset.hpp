#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "lgp/errors.hpp"

namespace lgp {

// In-memory dataset: one row per measurement, targets in the last CSV column.
struct Dataset {
  Eigen::MatrixXd inputs;   // N x d
  Eigen::VectorXd targets;  // N
  std::vector<std::string> input_names;
  std::string target_name;

  std::int64_t size() const { return inputs.rows(); }
  int dim() const { return static_cast<int>(inputs.cols()); }
};

// Streams a numeric CSV row by row without buffering the file. The header
// row is returned; row_fn receives the 1-based line number and the parsed
// values. Malformed rows, ragged column counts and non-finite values throw
// DataError citing the line.
std::vector<std::string> stream_csv(
    const std::string& path,
    const std::function<void(std::int64_t, std::span<const double>)>& row_fn);

// Loads a CSV with d input columns followed by one target column.
Dataset load_csv(const std::string& path);

// Loads prediction points: a CSV with exactly dim columns, or dim + 1 (a
// trailing target column, ignored here, so dataset files can be reused).
Eigen::MatrixXd load_points_csv(const std::string& path, int dim);

// Subtracts the target mean in place and returns it.
double center_targets(Dataset& dataset);

}  // namespace lgp
