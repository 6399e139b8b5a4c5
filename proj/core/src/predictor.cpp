#include "lgp/predictor.hpp"

#include <Eigen/LU>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <sstream>
#include <thread>

namespace lgp {

Eigen::MatrixXd prior_precision(const std::vector<Index>& subset,
                                const UniformGrid& grid, const HyperParams& hp,
                                bool allow_general_prior,
                                const JitterPolicy& jitter) {
  if (subset.empty()) throw NoLocalBasisError("prior_precision: empty subset");

  if (hp.r >= 2.0 * hp.r_star) {
    // Within an r_star-ball subset all pairwise center distances are at most
    // 2*r_star <= r: no basis value is truncated, Phi(u_S) equals
    // K(u_S, u_S), and the general expression collapses to the kernel matrix.
    return center_kernel_matrix(grid, subset, hp.sigma_se);
  }
  if (!allow_general_prior) {
    throw ConfigError(
        "prior_precision: r < 2*r_star requires allow_general_prior");
  }

  // General branch: P*^-1 = Phi(u_S) K(u_S,u_S)^-1 Phi(u_S) with the
  // truncated cross-evaluations.
  const Eigen::Index n = static_cast<Eigen::Index>(subset.size());
  const Eigen::MatrixXd kernel = center_kernel_matrix(grid, subset, hp.sigma_se);
  Eigen::MatrixXd centers(n, grid.dim());
  for (Eigen::Index i = 0; i < n; ++i) centers.row(i) = grid.center_of(subset[i]);
  Eigen::MatrixXd phi(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const double sup_dist = (centers.row(i) - centers.row(j)).cwiseAbs().maxCoeff();
      phi(i, j) = sup_dist <= hp.r ? kernel(i, j) : 0.0;
    }
  }
  // Singular Phi here means the truncated cross-evaluations cannot represent
  // the prior; advise widening r.
  const Eigen::FullPivLU<Eigen::MatrixXd> phi_lu(phi);
  if (!phi_lu.isInvertible()) {
    throw ConditioningError(
        "prior_precision: truncated basis matrix Phi(u_S) is singular; "
        "choose r >= 2*r_star");
  }
  try {
    const SpdSolver kernel_solver(kernel, hp.sigma_se_sq(), jitter,
                                  "prior_precision");
    Eigen::MatrixXd result = phi * kernel_solver.solve(phi);
    // Exact symmetry regardless of solve round-off.
    result = 0.5 * (result + result.transpose()).eval();
    return result;
  } catch (const NumericalError& e) {
    throw ConditioningError(std::string(e.what()) +
                            "; choose r >= 2*r_star for the direct prior");
  }
}

Predictor::Predictor(const InformationState& state, PredictorOptions opts)
    : state_(&state), opts_(opts) {
  state.hyperparams().validate(!opts_.allow_general_prior);
  if (opts_.workers < 1) throw ConfigError("predictor: workers must be >= 1");
}

LocalSystem Predictor::extract_local(
    const Eigen::Ref<const Eigen::VectorXd>& x_star) const {
  const HyperParams& hp = state_->hyperparams();
  const UniformGrid& grid = state_->grid();
  const Eigen::VectorXd z = to_normalized(x_star, hp);

  LocalSystem sys;
  sys.subset = grid.support_set(z, hp.r_star);
  if (sys.subset.empty()) {
    std::ostringstream msg;
    msg << "predict: no basis function within r_star = " << hp.r_star
        << " of the query (normalized position [";
    for (int k = 0; k < z.size(); ++k) msg << (k ? ", " : "") << z[k];
    msg << "])";
    throw NoLocalBasisError(msg.str());
  }

  sys.trained = state_->extract(sys.subset, sys.iota_sub, sys.imat_sub);
  sys.prior_prec = prior_precision(sys.subset, grid, hp,
                                   opts_.allow_general_prior, opts_.jitter);

  const Eigen::Index n = static_cast<Eigen::Index>(sys.subset.size());
  sys.phi_star.resize(n);
  for (Eigen::Index a = 0; a < n; ++a) {
    const Eigen::VectorXd center = grid.center_of(sys.subset[static_cast<std::size_t>(a)]);
    const double sup_dist = (z - center).cwiseAbs().maxCoeff();
    sys.phi_star[a] =
        sup_dist <= hp.r ? kernel_eval_normalized(z, center, hp.sigma_se) : 0.0;
  }
  return sys;
}

PredictionResult Predictor::predict_local(const LocalSystem& sys) const {
  const HyperParams& hp = state_->hyperparams();
  PredictionResult out;
  out.subset_size = static_cast<int>(sys.subset.size());

  // With no information gathered the posterior is the prior: the data terms
  // vanish and the two prior terms in the variance cancel identically.
  if (!sys.trained) {
    out.mean = state_->y_mean();
    out.variance = hp.sigma_se_sq();
    return out;
  }

  Eigen::MatrixXd a = sys.imat_sub + hp.sigma_y_sq() * sys.prior_prec;
  const SpdSolver posterior(std::move(a), hp.sigma_se_sq(), opts_.jitter,
                            "predict: information system");
  const Eigen::VectorXd alpha = posterior.solve(sys.iota_sub);
  out.mean = sys.phi_star.dot(alpha) + state_->y_mean();

  const SpdSolver prior(sys.prior_prec, hp.sigma_se_sq(), opts_.jitter,
                        "predict: prior precision");
  const double explained = hp.sigma_y_sq() * sys.phi_star.dot(posterior.solve(sys.phi_star));
  const double prior_term = sys.phi_star.dot(prior.solve(sys.phi_star));
  double variance = explained + hp.sigma_se_sq() - prior_term;
  if (variance < 0.0) {
    variance = 0.0;
    out.variance_clamped = true;
  }
  out.variance = variance;
  return out;
}

PredictionResult Predictor::predict(
    const Eigen::Ref<const Eigen::VectorXd>& x_star) const {
  return predict_local(extract_local(x_star));
}

std::vector<BatchEntry> Predictor::predict_batch(
    const Eigen::Ref<const Eigen::MatrixXd>& points) const {
  const Eigen::Index n = points.rows();
  std::vector<BatchEntry> results(static_cast<std::size_t>(n));

  const auto run_one = [&](Eigen::Index i) {
    BatchEntry& entry = results[static_cast<std::size_t>(i)];
    try {
      entry.result = predict(points.row(i).transpose());
      entry.error_kind = PredictErrorKind::kNone;
    } catch (const NoLocalBasisError& e) {
      entry.error_kind = PredictErrorKind::kNoLocalBasis;
      entry.error = e.what();
    } catch (const NumericalError& e) {
      entry.error_kind = PredictErrorKind::kNumerical;
      entry.error = e.what();
    } catch (const std::exception& e) {
      entry.error_kind = PredictErrorKind::kOther;
      entry.error = e.what();
    }
  };

  const int workers = std::min<int>(opts_.workers, std::max<Eigen::Index>(n, 1));
  if (workers <= 1) {
    for (Eigen::Index i = 0; i < n; ++i) run_one(i);
    return results;
  }

  std::atomic<Eigen::Index> next{0};
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (Eigen::Index i = next.fetch_add(1); i < n; i = next.fetch_add(1)) {
        run_one(i);
      }
    });
  }
  for (auto& t : pool) t.join();
  return results;
}

}  // namespace lgp
