#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <random>
#include <vector>

#include "lgp/grid.hpp"
#include "lgp/kernel.hpp"

// Shared fixtures and independent reference computations. Everything here
// evaluates the closed-form expressions directly with dense linear algebra;
// none of it reuses the sparse accumulation or local-solve code paths it is
// used to check.
namespace lgp::testing {

inline HyperParams make_hp(double sigma_se, std::vector<double> lengthscales,
                           double sigma_y, double r, double r_star) {
  HyperParams hp;
  hp.sigma_se = sigma_se;
  hp.lengthscales = Eigen::Map<const Eigen::VectorXd>(
      lengthscales.data(), static_cast<Eigen::Index>(lengthscales.size()));
  hp.sigma_y = sigma_y;
  hp.r = r;
  hp.r_star = r_star;
  return hp;
}

inline Eigen::VectorXd vec1(double x) {
  Eigen::VectorXd v(1);
  v << x;
  return v;
}

inline Eigen::VectorXd vec2(double x, double y) {
  Eigen::VectorXd v(2);
  v << x, y;
  return v;
}

// Brute-force sup-norm filter over every grid center, in normalized
// coordinates; the library must agree exactly.
inline std::vector<Index> brute_force_support(const UniformGrid& grid,
                                              const Eigen::VectorXd& z,
                                              double radius) {
  std::vector<Index> result;
  for (Index j = 0; j < grid.size(); ++j) {
    if ((grid.center_of(j) - z).cwiseAbs().maxCoeff() <= radius) {
      result.push_back(j);
    }
  }
  return result;
}

// Truncated basis function evaluated from scratch.
inline double oracle_basis(const Eigen::VectorXd& center_normalized,
                           const Eigen::VectorXd& x, const HyperParams& hp,
                           double radius) {
  Eigen::VectorXd z = x.cwiseQuotient(hp.lengthscales);
  if ((z - center_normalized).cwiseAbs().maxCoeff() > radius) return 0.0;
  return hp.sigma_se * hp.sigma_se *
         std::exp(-0.5 * (z - center_normalized).squaredNorm());
}

// Dense information terms over an explicit basis subset: iota = Phi y and
// I = Phi Phi^T built from full basis matrices.
struct DenseInformation {
  Eigen::VectorXd iota;
  Eigen::MatrixXd imat;
};

inline DenseInformation dense_information(const UniformGrid& grid,
                                          const std::vector<Index>& subset,
                                          const Eigen::MatrixXd& xs,
                                          const Eigen::VectorXd& ys,
                                          const HyperParams& hp) {
  const Eigen::Index n_basis = static_cast<Eigen::Index>(subset.size());
  Eigen::MatrixXd phi(n_basis, xs.rows());
  for (Eigen::Index a = 0; a < n_basis; ++a) {
    const Eigen::VectorXd center = grid.center_of(subset[static_cast<std::size_t>(a)]);
    for (Eigen::Index t = 0; t < xs.rows(); ++t) {
      phi(a, t) = oracle_basis(center, xs.row(t).transpose(), hp, hp.r);
    }
  }
  return {phi * ys, phi * phi.transpose()};
}

// DTC mean and variance restricted to an explicit basis subset, evaluated
// densely with plain matrix inversion. The prior precision is the kernel
// matrix of the subset centers.
struct OraclePrediction {
  double mean = 0.0;
  double variance = 0.0;
};

inline OraclePrediction dense_dtc_predict(const UniformGrid& grid,
                                          const std::vector<Index>& subset,
                                          const Eigen::MatrixXd& xs,
                                          const Eigen::VectorXd& ys,
                                          const HyperParams& hp,
                                          const Eigen::VectorXd& x_star,
                                          double y_mean = 0.0) {
  const DenseInformation info = dense_information(grid, subset, xs, ys, hp);
  const Eigen::Index n = static_cast<Eigen::Index>(subset.size());

  Eigen::MatrixXd centers(n, grid.dim());
  for (Eigen::Index a = 0; a < n; ++a) {
    centers.row(a) = grid.center_of(subset[static_cast<std::size_t>(a)]);
  }
  Eigen::MatrixXd prior_prec(n, n);
  for (Eigen::Index a = 0; a < n; ++a) {
    for (Eigen::Index b = 0; b < n; ++b) {
      prior_prec(a, b) = hp.sigma_se * hp.sigma_se *
                         std::exp(-0.5 * (centers.row(a) - centers.row(b)).squaredNorm());
    }
  }

  Eigen::VectorXd phi_star(n);
  for (Eigen::Index a = 0; a < n; ++a) {
    phi_star[a] = oracle_basis(centers.row(a).transpose(), x_star, hp, hp.r);
  }

  const double sy2 = hp.sigma_y * hp.sigma_y;
  const Eigen::MatrixXd a_inv = (info.imat + sy2 * prior_prec).inverse();
  const Eigen::MatrixXd prior_cov = prior_prec.inverse();

  OraclePrediction out;
  out.mean = phi_star.dot(a_inv * info.iota) + y_mean;
  out.variance = sy2 * phi_star.dot(a_inv * phi_star) +
                 hp.sigma_se * hp.sigma_se - phi_star.dot(prior_cov * phi_star);
  return out;
}

// Smooth 1-D test function with a few lengthscale-sized wiggles.
inline double smooth_field(double x) {
  return std::sin(1.3 * x) + 0.5 * std::cos(2.9 * x) + 0.2 * x;
}

inline double smooth_field2(double x, double y) {
  return std::sin(1.1 * x) * std::cos(0.9 * y) + 0.3 * std::sin(2.3 * (x + y));
}

}  // namespace lgp::testing
