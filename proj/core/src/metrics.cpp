#include "lgp/metrics.hpp"

#include <cmath>
#include <numbers>

namespace lgp {

namespace {

void check_lengths(Eigen::Index a, Eigen::Index b, const char* what) {
  if (a != b) throw DimensionError(std::string(what) + ": length mismatch");
  if (a == 0) throw MetricError(std::string(what) + ": empty inputs");
}

}  // namespace

double smae(const Eigen::Ref<const Eigen::VectorXd>& pred,
            const Eigen::Ref<const Eigen::VectorXd>& target, double train_mean) {
  check_lengths(pred.size(), target.size(), "smae");
  const double mae = (pred - target).cwiseAbs().mean();
  const double denom = (target.array() - train_mean).abs().mean();
  if (denom == 0.0) {
    if (mae == 0.0) return 0.0;  // perfect prediction of constant targets
    throw MetricError("smae: trivial-predictor MAE is zero");
  }
  return mae / denom;
}

double smse(const Eigen::Ref<const Eigen::VectorXd>& pred,
            const Eigen::Ref<const Eigen::VectorXd>& target, double train_mean) {
  check_lengths(pred.size(), target.size(), "smse");
  const double mse = (pred - target).squaredNorm() / static_cast<double>(pred.size());
  const double denom =
      (target.array() - train_mean).square().sum() / static_cast<double>(target.size());
  if (denom == 0.0) {
    if (mse == 0.0) return 0.0;
    throw MetricError("smse: test variance about the training mean is zero");
  }
  return mse / denom;
}

double msll(const Eigen::Ref<const Eigen::VectorXd>& pred_mean,
            const Eigen::Ref<const Eigen::VectorXd>& pred_var,
            const Eigen::Ref<const Eigen::VectorXd>& target, double train_mean,
            double train_var) {
  check_lengths(pred_mean.size(), target.size(), "msll");
  check_lengths(pred_var.size(), target.size(), "msll");
  if (!(train_var > 0.0)) throw MetricError("msll: training variance must be positive");

  const double two_pi = 2.0 * std::numbers::pi;
  double model = 0.0;
  double trivial = 0.0;
  for (Eigen::Index i = 0; i < target.size(); ++i) {
    if (!(pred_var[i] > 0.0)) {
      throw MetricError("msll: predictive variance must be positive");
    }
    const double rm = target[i] - pred_mean[i];
    model += 0.5 * std::log(two_pi * pred_var[i]) + rm * rm / (2.0 * pred_var[i]);
    const double rt = target[i] - train_mean;
    trivial += 0.5 * std::log(two_pi * train_var) + rt * rt / (2.0 * train_var);
  }
  const double n = static_cast<double>(target.size());
  return model / n - trivial / n;
}

}  // namespace lgp
