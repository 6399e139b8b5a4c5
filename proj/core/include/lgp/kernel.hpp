#pragma once

#include <Eigen/Core>

#include <cmath>

#include "lgp/errors.hpp"
#include "lgp/grid.hpp"

namespace lgp {

// Squared-exponential ARD kernel hyperparameters plus the support radii of
// the truncated basis functions. Both radii are expressed in
// lengthscale-normalized coordinates: a radius of 3 spans three lengthscales
// along every input axis, so a single scalar serves anisotropic fields.
struct HyperParams {
  double sigma_se = 1.0;         // amplitude std (output units)
  Eigen::VectorXd lengthscales;  // one positive entry per input dimension
  double sigma_y = 0.1;          // noise std (output units)
  double r = 6.0;                // training support radius (normalized)
  double r_star = 3.0;           // local prediction radius (normalized)

  int dim() const { return static_cast<int>(lengthscales.size()); }
  double sigma_se_sq() const { return sigma_se * sigma_se; }
  double sigma_y_sq() const { return sigma_y * sigma_y; }

  // Throws ConfigError on non-positive values. With require_fast_prior (the
  // default) additionally requires r >= 2*r_star, the regime in which the
  // local prior precision is plainly the kernel matrix of the subset centers.
  void validate(bool require_fast_prior = true) const;

  bool operator==(const HyperParams& other) const;
};

// Lengthscale-normalized coordinates z_k = x_k / l_k.
Eigen::VectorXd to_normalized(const Eigen::Ref<const Eigen::VectorXd>& x,
                              const HyperParams& hp);

// kappa(x, x2) = sigma_se^2 * exp(-1/2 * sum_k ((x_k - x2_k)/l_k)^2).
double kernel_eval(const Eigen::Ref<const Eigen::VectorXd>& x,
                   const Eigen::Ref<const Eigen::VectorXd>& x2,
                   const HyperParams& hp);

// Same kernel for points already in normalized coordinates.
inline double kernel_eval_normalized(const Eigen::Ref<const Eigen::VectorXd>& z,
                                     const Eigen::Ref<const Eigen::VectorXd>& z2,
                                     double sigma_se) {
  return sigma_se * sigma_se * std::exp(-0.5 * (z - z2).squaredNorm());
}

// Cross-kernel matrix; each row of a and b is a point. Entry (i, j) is
// kernel_eval(a_i, b_j).
Eigen::MatrixXd kernel_matrix(const Eigen::Ref<const Eigen::MatrixXd>& a,
                              const Eigen::Ref<const Eigen::MatrixXd>& b,
                              const HyperParams& hp);

// Kernel matrix of a subset of grid centers (normalized coordinates).
Eigen::MatrixXd center_kernel_matrix(const UniformGrid& grid,
                                     const std::vector<Index>& subset,
                                     double sigma_se);

// Truncated kernel cross-section centered at grid center j:
// kappa(u_j, x) when the normalized sup-norm distance is <= hp.r (closed
// ball), exactly zero otherwise.
double basis_eval(Index j, const Eigen::Ref<const Eigen::VectorXd>& x,
                  const UniformGrid& grid, const HyperParams& hp);

}  // namespace lgp
