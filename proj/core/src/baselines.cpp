#include "lgp/baselines.hpp"

#include <sstream>

namespace lgp {

namespace {

void check_cap(Index n, Index cap, const char* what) {
  if (n > cap) {
    std::ostringstream msg;
    msg << what << ": " << n << " exceeds the dense cap " << cap;
    throw GridSizeError(msg.str());
  }
}

}  // namespace

DenseGPModel::DenseGPModel(Eigen::MatrixXd inputs,
                           Eigen::VectorXd centered_targets, HyperParams hp,
                           double y_mean, Index dense_cap)
    : inputs_(std::move(inputs)),
      targets_(std::move(centered_targets)),
      hp_(std::move(hp)),
      y_mean_(y_mean),
      solver_(kernel_matrix(inputs_, inputs_, hp_) +
                  hp_.sigma_y_sq() *
                      Eigen::MatrixXd::Identity(inputs_.rows(), inputs_.rows()),
              hp_.sigma_se_sq(), JitterPolicy{}, "full GP") {
  if (inputs_.rows() == 0 || inputs_.rows() != targets_.size()) {
    throw DimensionError("full GP: input and target counts differ");
  }
  check_cap(inputs_.rows(), dense_cap, "full GP");
  alpha_ = solver_.solve(targets_);
}

std::pair<double, double> DenseGPModel::predict(
    const Eigen::Ref<const Eigen::VectorXd>& x_star) const {
  const Eigen::Index n = inputs_.rows();
  Eigen::VectorXd k_star(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    k_star[i] = kernel_eval(x_star, inputs_.row(i).transpose(), hp_);
  }
  const double mean = k_star.dot(alpha_) + y_mean_;
  const double variance = hp_.sigma_se_sq() - k_star.dot(solver_.solve(k_star));
  return {mean, variance};
}

GlobalDTCModel::GlobalDTCModel(UniformGrid grid, HyperParams hp, BasisMode mode,
                               double y_mean, Index dense_cap)
    : grid_(std::move(grid)),
      hp_(std::move(hp)),
      mode_(mode),
      y_mean_(y_mean) {
  hp_.validate(/*require_fast_prior=*/false);
  if (grid_.dim() != hp_.dim()) {
    throw DimensionError("global DTC: grid dimension does not match lengthscales");
  }
  check_cap(grid_.size(), dense_cap, "global DTC");
  const Index m = grid_.size();
  iota_ = Eigen::VectorXd::Zero(m);
  imat_ = Eigen::MatrixXd::Zero(m, m);
  std::vector<Index> all(static_cast<std::size_t>(m));
  for (Index j = 0; j < m; ++j) all[static_cast<std::size_t>(j)] = j;
  prior_prec_ = center_kernel_matrix(grid_, all, hp_.sigma_se);
}

Eigen::VectorXd GlobalDTCModel::basis_vector(
    const Eigen::Ref<const Eigen::VectorXd>& x) const {
  const Eigen::VectorXd z = to_normalized(x, hp_);
  const Index m = grid_.size();
  Eigen::VectorXd phi(m);
  for (Index j = 0; j < m; ++j) {
    const Eigen::VectorXd center = grid_.center_of(j);
    if (mode_ == BasisMode::kTruncated &&
        (z - center).cwiseAbs().maxCoeff() > hp_.r) {
      phi[j] = 0.0;
    } else {
      phi[j] = kernel_eval_normalized(z, center, hp_.sigma_se);
    }
  }
  return phi;
}

void GlobalDTCModel::train(const Eigen::Ref<const Eigen::MatrixXd>& xs,
                           const Eigen::Ref<const Eigen::VectorXd>& ys) {
  if (xs.rows() != ys.size()) {
    throw DimensionError("global DTC: input and target counts differ");
  }
  for (Eigen::Index t = 0; t < xs.rows(); ++t) {
    const Eigen::VectorXd phi = basis_vector(xs.row(t).transpose());
    iota_ += phi * ys[t];
    imat_ += phi * phi.transpose();
  }
}

std::pair<double, double> GlobalDTCModel::predict(
    const Eigen::Ref<const Eigen::VectorXd>& x_star) const {
  const Eigen::VectorXd phi = basis_vector(x_star);
  const SpdSolver posterior(imat_ + hp_.sigma_y_sq() * prior_prec_,
                            hp_.sigma_se_sq(), JitterPolicy{}, "global DTC");
  const double mean = phi.dot(posterior.solve(iota_)) + y_mean_;
  const SpdSolver prior(prior_prec_, hp_.sigma_se_sq(), JitterPolicy{},
                        "global DTC prior");
  const double variance = hp_.sigma_y_sq() * phi.dot(posterior.solve(phi)) +
                          hp_.sigma_se_sq() - phi.dot(prior.solve(phi));
  return {mean, variance};
}

}  // namespace lgp
