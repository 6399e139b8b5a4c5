#include "lgp/eval.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

namespace lgp {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

TimingStats stats_of(const std::vector<double>& samples) {
  TimingStats s;
  s.repetitions = static_cast<int>(samples.size());
  if (samples.empty()) return s;
  double sum = 0.0;
  for (double v : samples) sum += v;
  s.mean_s = sum / static_cast<double>(samples.size());
  if (samples.size() > 1) {
    double sq = 0.0;
    for (double v : samples) sq += (v - s.mean_s) * (v - s.mean_s);
    s.std_s = std::sqrt(sq / static_cast<double>(samples.size() - 1));
  }
  return s;
}

}  // namespace

PredictionResult predict_with_prior_fallback(
    const Predictor& predictor, const Eigen::Ref<const Eigen::VectorXd>& x,
    EvalReport* counters) {
  try {
    const PredictionResult r = predictor.predict(x);
    if (counters) {
      ++counters->subset_size_histogram[r.subset_size];
      if (r.variance_clamped) ++counters->clamped_variances;
    }
    return r;
  } catch (const NoLocalBasisError&) {
    PredictionResult r;
    r.mean = predictor.state().y_mean();
    r.variance = predictor.state().hyperparams().sigma_se_sq();
    r.subset_size = 0;
    if (counters) {
      ++counters->out_of_grid_predictions;
      ++counters->subset_size_histogram[0];
    }
    return r;
  }
}

EvalReport benchmark_predictions(const Predictor& predictor,
                                 const Eigen::Ref<const Eigen::MatrixXd>& points,
                                 int repetitions) {
  if (repetitions < 1) throw ConfigError("benchmark: repetitions must be >= 1");
  EvalReport report;
  report.n_test = points.rows();

  std::vector<double> rep_totals;
  rep_totals.reserve(static_cast<std::size_t>(repetitions));
  std::vector<double> latencies;
  latencies.reserve(static_cast<std::size_t>(repetitions) *
                    static_cast<std::size_t>(points.rows()));

  for (int rep = 0; rep < repetitions; ++rep) {
    const auto rep_start = Clock::now();
    for (Eigen::Index i = 0; i < points.rows(); ++i) {
      const auto start = Clock::now();
      const PredictionResult r = predict_with_prior_fallback(
          predictor, points.row(i).transpose(), rep == 0 ? &report : nullptr);
      latencies.push_back(seconds_since(start));
      (void)r;
    }
    rep_totals.push_back(seconds_since(rep_start));
  }

  report.predict_time = stats_of(rep_totals);
  if (!latencies.empty()) {
    const std::size_t mid = latencies.size() / 2;
    std::nth_element(latencies.begin(), latencies.begin() + static_cast<std::ptrdiff_t>(mid),
                     latencies.end());
    report.median_latency_s = latencies[mid];
  }
  return report;
}

}  // namespace lgp
