#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <limits>
#include <map>

#include "lgp/predictor.hpp"

namespace lgp {

struct TimingStats {
  double mean_s = 0.0;
  double std_s = 0.0;  // zero when repetitions == 1
  int repetitions = 0;
};

struct EvalReport {
  double smae = std::numeric_limits<double>::quiet_NaN();
  double smse = std::numeric_limits<double>::quiet_NaN();
  double msll = std::numeric_limits<double>::quiet_NaN();
  std::int64_t n_test = 0;

  TimingStats train_time;    // per-repetition totals, seconds
  TimingStats predict_time;  // per-repetition totals, seconds
  double median_latency_s = 0.0;  // single-prediction median

  std::map<int, std::int64_t> subset_size_histogram;
  std::int64_t clamped_variances = 0;
  std::int64_t out_of_grid_predictions = 0;  // empty-S* queries, prior used
};

// Harness-side prediction: a query with an empty local subset resolves to
// the prior (y_mean, sigma_se^2) and is counted instead of failing.
PredictionResult predict_with_prior_fallback(const Predictor& predictor,
                                             const Eigen::Ref<const Eigen::VectorXd>& x,
                                             EvalReport* counters = nullptr);

// Times predictions over the given points. Each repetition measures the
// whole sweep; individual prediction latencies feed the median and the
// subset-size histogram. The state must already be trained and resident;
// only the prediction calls are timed.
EvalReport benchmark_predictions(const Predictor& predictor,
                                 const Eigen::Ref<const Eigen::MatrixXd>& points,
                                 int repetitions = 10);

}  // namespace lgp
