#pragma once

#include <Eigen/Core>

#include <string>
#include <vector>

#include "lgp/linalg.hpp"
#include "lgp/trainer.hpp"

namespace lgp {

struct PredictorOptions {
  // Permit r < 2*r_star, which switches the prior precision to the general
  // expression Phi(u_S) K(u_S,u_S)^-1 Phi(u_S) with truncation.
  bool allow_general_prior = false;
  JitterPolicy jitter;
  int workers = 1;  // predict_batch parallelism; results are order-preserving
};

// Dense subsystem extracted for a prediction point: the local subset
// S* = S(x*, r_star), its information entries, the prior precision P*^-1 and
// the basis evaluations at the query.
struct LocalSystem {
  std::vector<Index> subset;
  Eigen::VectorXd iota_sub;
  Eigen::MatrixXd imat_sub;
  Eigen::MatrixXd prior_prec;
  Eigen::VectorXd phi_star;
  bool trained = false;  // any gathered information entry nonzero
};

struct PredictionResult {
  double mean = 0.0;      // output units, dataset mean re-added
  double variance = 0.0;  // output units squared, clamped at zero
  int subset_size = 0;
  bool variance_clamped = false;
};

enum class PredictErrorKind { kNone, kNoLocalBasis, kNumerical, kOther };

struct BatchEntry {
  PredictErrorKind error_kind = PredictErrorKind::kNone;
  PredictionResult result{};
  std::string error{};
  bool ok() const { return error_kind == PredictErrorKind::kNone; }
};

// P*^-1 for a subset of grid centers. When r >= 2*r_star every pairwise
// center distance within an r_star-ball subset stays inside the support
// radius, no truncation occurs, and the expression collapses to the plain
// kernel matrix of the centers. The general branch (opt-in) builds the
// truncated cross-evaluation matrix and conjugates the kernel inverse.
Eigen::MatrixXd prior_precision(const std::vector<Index>& subset,
                                const UniformGrid& grid, const HyperParams& hp,
                                bool allow_general_prior = false,
                                const JitterPolicy& jitter = {});

// Prediction-point-dependent local inference on a trained state. Pure reads;
// any number of predictors and threads may query one state concurrently.
class Predictor {
 public:
  explicit Predictor(const InformationState& state, PredictorOptions opts = {});

  LocalSystem extract_local(const Eigen::Ref<const Eigen::VectorXd>& x_star) const;
  PredictionResult predict(const Eigen::Ref<const Eigen::VectorXd>& x_star) const;

  // Element-wise predict over the rows of points. Per-point failures become
  // error records; the batch continues. Output order matches input order
  // regardless of worker count.
  std::vector<BatchEntry> predict_batch(
      const Eigen::Ref<const Eigen::MatrixXd>& points) const;

  const InformationState& state() const { return *state_; }
  const PredictorOptions& options() const { return opts_; }

 private:
  PredictionResult predict_local(const LocalSystem& sys) const;

  const InformationState* state_;
  PredictorOptions opts_;
};

}  // namespace lgp
