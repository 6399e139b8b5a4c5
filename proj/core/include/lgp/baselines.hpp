#pragma once

#include <Eigen/Core>

#include <utility>

#include "lgp/grid.hpp"
#include "lgp/kernel.hpp"
#include "lgp/linalg.hpp"

namespace lgp {

inline constexpr Index kDefaultDenseCap = 4000;

// Exact dense GP regression. A correctness anchor: O(N^3) setup, O(N^2) per
// query, capped at dense_cap training points.
class DenseGPModel {
 public:
  DenseGPModel(Eigen::MatrixXd inputs, Eigen::VectorXd centered_targets,
               HyperParams hp, double y_mean = 0.0,
               Index dense_cap = kDefaultDenseCap);

  // (mean, variance); the mean has y_mean re-added.
  std::pair<double, double> predict(
      const Eigen::Ref<const Eigen::VectorXd>& x_star) const;

  Index n_train() const { return inputs_.rows(); }

 private:
  Eigen::MatrixXd inputs_;
  Eigen::VectorXd targets_;
  HyperParams hp_;
  double y_mean_;
  SpdSolver solver_;       // K(x,x) + sigma_y^2 I
  Eigen::VectorXd alpha_;  // solver applied to targets
};

// Dense global DTC prediction over all m grid basis functions, with either
// the truncated basis or the pure (untruncated) kernel cross-sections.
// The weight prior is P^-1 = K(u,u), consistent with the local predictor's
// subset prior. Deliberately naive: full m x m matrices.
class GlobalDTCModel {
 public:
  enum class BasisMode { kTruncated, kUntruncated };

  GlobalDTCModel(UniformGrid grid, HyperParams hp,
                 BasisMode mode = BasisMode::kTruncated, double y_mean = 0.0,
                 Index dense_cap = kDefaultDenseCap);

  // Accumulates iota and I densely from the measurement set (pre-centered
  // targets). May be called repeatedly; contributions add.
  void train(const Eigen::Ref<const Eigen::MatrixXd>& xs,
             const Eigen::Ref<const Eigen::VectorXd>& ys);

  std::pair<double, double> predict(
      const Eigen::Ref<const Eigen::VectorXd>& x_star) const;

  // Phi(x) over all m basis functions, honoring the basis mode.
  Eigen::VectorXd basis_vector(const Eigen::Ref<const Eigen::VectorXd>& x) const;

  const Eigen::VectorXd& iota() const { return iota_; }
  const Eigen::MatrixXd& imat() const { return imat_; }
  const UniformGrid& grid() const { return grid_; }

 private:
  UniformGrid grid_;
  HyperParams hp_;
  BasisMode mode_;
  double y_mean_;
  Eigen::VectorXd iota_;
  Eigen::MatrixXd imat_;
  Eigen::MatrixXd prior_prec_;  // K(u,u)
};

}  // namespace lgp
