#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lgp/grid.hpp"
#include "lgp/kernel.hpp"
#include "lgp/linalg.hpp"

namespace lgp {

// Run configuration, read from a JSON file. Unknown keys are rejected.
struct RunConfig {
  // Kernel and basis-function hyperparameters. A single lengthscale entry is
  // broadcast across the data dimension at train time. r and r_star are in
  // lengthscale-normalized units; r defaults to 2*r_star.
  double sigma_se = 1.0;
  std::vector<double> lengthscales = {1.0};
  double sigma_y = 0.1;
  double r_star = 3.0;
  double r = -1.0;  // negative: use 2*r_star

  // Grid geometry (normalized units). A negative margin means "use r" so
  // every in-bounds measurement sees a full complement of basis functions.
  double l_u = 1.0;
  double grid_margin = -1.0;
  std::int64_t max_grid_centers = UniformGrid::kDefaultMaxCenters;

  // Numerics.
  JitterPolicy jitter;
  bool allow_general_prior = false;
  bool compensated_summation = false;
  std::int64_t dense_cap = 4000;

  // Execution.
  int workers = 1;

  double effective_r() const { return r > 0 ? r : 2.0 * r_star; }
  double effective_margin() const {
    return grid_margin >= 0 ? grid_margin : effective_r();
  }

  // Hyperparameters for a dataset of dimension d (broadcasts a scalar
  // lengthscale; otherwise the entry count must match d).
  HyperParams hyperparams(int d) const;

  void validate() const;
};

RunConfig parse_config_json(const std::string& text);
RunConfig parse_config_file(const std::string& path);

// Fully-populated JSON echo of a config (the `info` subcommand).
std::string to_json(const RunConfig& config);

}  // namespace lgp
