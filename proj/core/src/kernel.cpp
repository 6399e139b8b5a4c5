#include "lgp/kernel.hpp"

#include <sstream>

namespace lgp {

void HyperParams::validate(bool require_fast_prior) const {
  if (!(sigma_se > 0.0)) throw ConfigError("hyperparams: sigma_se must be positive");
  if (!(sigma_y > 0.0)) throw ConfigError("hyperparams: sigma_y must be positive");
  if (lengthscales.size() == 0) throw ConfigError("hyperparams: lengthscales are empty");
  for (Eigen::Index k = 0; k < lengthscales.size(); ++k) {
    if (!(lengthscales[k] > 0.0)) {
      std::ostringstream msg;
      msg << "hyperparams: lengthscale " << k << " must be positive";
      throw ConfigError(msg.str());
    }
  }
  if (!(r > 0.0)) throw ConfigError("hyperparams: r must be positive");
  if (!(r_star > 0.0)) throw ConfigError("hyperparams: r_star must be positive");
  if (require_fast_prior && r < 2.0 * r_star) {
    std::ostringstream msg;
    msg << "hyperparams: r = " << r << " < 2*r_star = " << 2.0 * r_star
        << "; the local prior then needs the general (truncation-aware) "
           "formula, enable allow_general_prior to opt in";
    throw ConfigError(msg.str());
  }
}

bool HyperParams::operator==(const HyperParams& other) const {
  return sigma_se == other.sigma_se && sigma_y == other.sigma_y &&
         r == other.r && r_star == other.r_star &&
         lengthscales.size() == other.lengthscales.size() &&
         lengthscales == other.lengthscales;
}

Eigen::VectorXd to_normalized(const Eigen::Ref<const Eigen::VectorXd>& x,
                              const HyperParams& hp) {
  if (x.size() != hp.lengthscales.size()) {
    throw DimensionError("kernel: point dimension does not match lengthscales");
  }
  return x.cwiseQuotient(hp.lengthscales);
}

double kernel_eval(const Eigen::Ref<const Eigen::VectorXd>& x,
                   const Eigen::Ref<const Eigen::VectorXd>& x2,
                   const HyperParams& hp) {
  if (x.size() != x2.size() || x.size() != hp.lengthscales.size()) {
    throw DimensionError("kernel: point dimension mismatch");
  }
  const double q = (x - x2).cwiseQuotient(hp.lengthscales).squaredNorm();
  return hp.sigma_se_sq() * std::exp(-0.5 * q);
}

Eigen::MatrixXd kernel_matrix(const Eigen::Ref<const Eigen::MatrixXd>& a,
                              const Eigen::Ref<const Eigen::MatrixXd>& b,
                              const HyperParams& hp) {
  if (a.rows() == 0 || b.rows() == 0) {
    throw DimensionError("kernel: point lists must be nonempty");
  }
  if (a.cols() != b.cols() || a.cols() != hp.lengthscales.size()) {
    throw DimensionError("kernel: point dimension mismatch");
  }
  Eigen::MatrixXd result(a.rows(), b.rows());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < b.rows(); ++j) {
      const double q = (a.row(i) - b.row(j)).cwiseQuotient(hp.lengthscales.transpose()).squaredNorm();
      result(i, j) = hp.sigma_se_sq() * std::exp(-0.5 * q);
    }
  }
  return result;
}

Eigen::MatrixXd center_kernel_matrix(const UniformGrid& grid,
                                     const std::vector<Index>& subset,
                                     double sigma_se) {
  const Eigen::Index n = static_cast<Eigen::Index>(subset.size());
  Eigen::MatrixXd centers(n, grid.dim());
  for (Eigen::Index i = 0; i < n; ++i) centers.row(i) = grid.center_of(subset[i]);
  const double s2 = sigma_se * sigma_se;
  Eigen::MatrixXd result(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    result(i, i) = s2;
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double v = s2 * std::exp(-0.5 * (centers.row(i) - centers.row(j)).squaredNorm());
      result(i, j) = v;
      result(j, i) = v;
    }
  }
  return result;
}

double basis_eval(Index j, const Eigen::Ref<const Eigen::VectorXd>& x,
                  const UniformGrid& grid, const HyperParams& hp) {
  const Eigen::VectorXd z = to_normalized(x, hp);
  const Eigen::VectorXd center = grid.center_of(j);
  if ((z - center).cwiseAbs().maxCoeff() > hp.r) return 0.0;
  return kernel_eval_normalized(z, center, hp.sigma_se);
}

}  // namespace lgp
