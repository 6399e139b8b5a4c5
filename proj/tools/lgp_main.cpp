#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "lgp/baselines.hpp"
#include "lgp/config.hpp"
#include "lgp/dataset.hpp"
#include "lgp/eval.hpp"
#include "lgp/metrics.hpp"
#include "lgp/model_io.hpp"
#include "lgp/predictor.hpp"
#include "lgp/trainer.hpp"

namespace {

using Clock = std::chrono::steady_clock;

constexpr int kExitSuccess = 0;
constexpr int kExitInternal = 1;
constexpr int kExitData = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitConfig = 4;

std::string g17(double v) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.17g", v);
  return buffer;
}

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct TrainArgs {
  std::string data_path;
  std::string config_path;
  std::string out_path;
};

struct PredictArgs {
  std::string model_path;
  std::string points_path;
  std::string out_path;
  int workers = 1;
};

struct EvaluateArgs {
  std::string model_path;
  std::string data_path;
  std::string train_path;
  std::string out_path;
  int workers = 1;
};

struct BenchmarkArgs {
  std::string model_path;
  std::string points_path;
  std::string data_path;
  std::string config_path;
  int repetitions = 10;
};

struct InfoArgs {
  std::string model_path;
  std::string config_path;
};

// Single streaming pass over a training CSV: per-axis bounds, target sum,
// row count.
struct DataSummary {
  int dim = 0;
  std::int64_t rows = 0;
  Eigen::VectorXd lo, hi;
  double target_sum = 0.0;
};

DataSummary summarize_training_csv(const std::string& path) {
  DataSummary s;
  const auto header = lgp::stream_csv(path, [&](std::int64_t, std::span<const double> row) {
    const int d = static_cast<int>(row.size()) - 1;
    if (s.rows == 0) {
      s.dim = d;
      s.lo = Eigen::VectorXd::Constant(d, row[0]);
      s.hi = s.lo;
      for (int k = 0; k < d; ++k) s.lo[k] = s.hi[k] = row[static_cast<std::size_t>(k)];
    }
    for (int k = 0; k < s.dim; ++k) {
      s.lo[k] = std::min(s.lo[k], row[static_cast<std::size_t>(k)]);
      s.hi[k] = std::max(s.hi[k], row[static_cast<std::size_t>(k)]);
    }
    s.target_sum += row[row.size() - 1];
    ++s.rows;
  });
  if (header.size() < 2) {
    throw lgp::DataError("train: need at least one input column and a target column");
  }
  if (s.rows == 0) throw lgp::DataError("train: '" + path + "' has no data rows");
  return s;
}

lgp::InformationState train_from_csv(const std::string& data_path,
                                     const lgp::RunConfig& cfg,
                                     double* train_seconds,
                                     std::uint64_t* rejected) {
  const DataSummary summary = summarize_training_csv(data_path);
  const lgp::HyperParams hp = cfg.hyperparams(summary.dim);
  const double y_mean = summary.target_sum / static_cast<double>(summary.rows);

  const Eigen::VectorXd lo_norm = summary.lo.cwiseQuotient(hp.lengthscales);
  const Eigen::VectorXd hi_norm = summary.hi.cwiseQuotient(hp.lengthscales);
  const lgp::UniformGrid grid =
      lgp::UniformGrid::from_bounds(lo_norm, hi_norm, cfg.l_u,
                                    cfg.effective_margin(), cfg.max_grid_centers);

  lgp::TrainOptions opts;
  opts.compensated_summation = cfg.compensated_summation;
  lgp::InformationState state(grid, hp, y_mean, opts);

  // Second streaming pass: accumulate centered measurements.
  Eigen::VectorXd x(summary.dim);
  std::uint64_t skipped = 0;
  const auto start = Clock::now();
  lgp::stream_csv(data_path, [&](std::int64_t, std::span<const double> row) {
    for (int k = 0; k < summary.dim; ++k) x[k] = row[static_cast<std::size_t>(k)];
    try {
      state.update(x, row[row.size() - 1] - y_mean);
    } catch (const lgp::OutOfGridError&) {
      ++skipped;
    }
  });
  if (train_seconds) *train_seconds = seconds_since(start);
  if (rejected) *rejected = skipped;
  state.finalize();
  return state;
}

int run_train(const TrainArgs& args) {
  const lgp::RunConfig cfg = lgp::parse_config_file(args.config_path);
  double seconds = 0.0;
  std::uint64_t rejected = 0;
  const lgp::InformationState state =
      train_from_csv(args.data_path, cfg, &seconds, &rejected);
  lgp::save_model(state, args.out_path);

  std::cout << "trained " << state.n_measurements() << " measurements on "
            << state.grid().size() << " basis functions in " << g17(seconds)
            << " s\n";
  std::cout << "y_mean " << g17(state.y_mean()) << "\n";
  std::cout << "iota nonzeros " << state.iota_nnz() << ", information matrix nonzeros "
            << state.imat_nnz() << "\n";
  std::cout << "model written to " << args.out_path << "\n";
  if (rejected > 0) {
    std::cerr << "warning: " << rejected
              << " measurements fell outside the grid and were not used\n";
  }
  return kExitSuccess;
}

void write_prediction_csv(const std::string& path, const Eigen::MatrixXd& points,
                          const std::vector<lgp::PredictionResult>& results) {
  std::ofstream out(path);
  if (!out) throw lgp::IoError("predict: cannot open '" + path + "' for writing");
  const int d = static_cast<int>(points.cols());
  for (int k = 0; k < d; ++k) out << "x" << (k + 1) << ",";
  out << "mean,variance\n";
  for (Eigen::Index i = 0; i < points.rows(); ++i) {
    for (int k = 0; k < d; ++k) out << g17(points(i, k)) << ",";
    out << g17(results[static_cast<std::size_t>(i)].mean) << ","
        << g17(results[static_cast<std::size_t>(i)].variance) << "\n";
  }
  if (!out) throw lgp::IoError("predict: write to '" + path + "' failed");
}

// Shared by predict and evaluate: batch prediction with the prior fallback
// for out-of-grid queries; numerical failures abort.
std::vector<lgp::PredictionResult> predict_all(const lgp::Predictor& predictor,
                                               const Eigen::MatrixXd& points,
                                               lgp::EvalReport& report) {
  const auto batch = predictor.predict_batch(points);
  std::vector<lgp::PredictionResult> results(batch.size());
  for (std::size_t i = 0; i < batch.size(); ++i) {
    switch (batch[i].error_kind) {
      case lgp::PredictErrorKind::kNone:
        results[i] = batch[i].result;
        if (results[i].variance_clamped) ++report.clamped_variances;
        ++report.subset_size_histogram[results[i].subset_size];
        break;
      case lgp::PredictErrorKind::kNoLocalBasis:
        results[i].mean = predictor.state().y_mean();
        results[i].variance = predictor.state().hyperparams().sigma_se_sq();
        results[i].subset_size = 0;
        ++report.out_of_grid_predictions;
        ++report.subset_size_histogram[0];
        break;
      case lgp::PredictErrorKind::kNumerical:
        throw lgp::NumericalError("point " + std::to_string(i) + ": " + batch[i].error);
      case lgp::PredictErrorKind::kOther:
        throw lgp::Error("point " + std::to_string(i) + ": " + batch[i].error);
    }
  }
  return results;
}

void report_warnings(const lgp::EvalReport& report) {
  if (report.out_of_grid_predictions > 0) {
    std::cerr << "warning: " << report.out_of_grid_predictions
              << " query points had no local basis function; the prior was used\n";
  }
  if (report.clamped_variances > 0) {
    std::cerr << "warning: " << report.clamped_variances
              << " negative variances were clamped to zero\n";
  }
}

int run_predict(const PredictArgs& args) {
  const lgp::InformationState state = lgp::load_model(args.model_path);
  const Eigen::MatrixXd points =
      lgp::load_points_csv(args.points_path, state.grid().dim());
  lgp::PredictorOptions opts;
  opts.workers = args.workers;
  const lgp::Predictor predictor(state, opts);

  lgp::EvalReport report;
  const auto results = predict_all(predictor, points, report);
  write_prediction_csv(args.out_path, points, results);
  std::cout << "wrote " << points.rows() << " predictions to " << args.out_path << "\n";
  report_warnings(report);
  return kExitSuccess;
}

int run_evaluate(const EvaluateArgs& args) {
  const lgp::InformationState state = lgp::load_model(args.model_path);
  lgp::Dataset test = lgp::load_csv(args.data_path);
  if (test.dim() != state.grid().dim()) {
    throw lgp::DataError("evaluate: test data dimension does not match the model");
  }

  lgp::PredictorOptions opts;
  opts.workers = args.workers;
  const lgp::Predictor predictor(state, opts);

  lgp::EvalReport report;
  const auto results = predict_all(predictor, test.inputs, report);
  Eigen::VectorXd means(test.size()), variances(test.size());
  for (Eigen::Index i = 0; i < test.size(); ++i) {
    means[i] = results[static_cast<std::size_t>(i)].mean;
    variances[i] = results[static_cast<std::size_t>(i)].variance;
  }

  const double train_mean = state.y_mean();
  report.n_test = test.size();
  report.smae = lgp::smae(means, test.targets, train_mean);
  report.smse = lgp::smse(means, test.targets, train_mean);

  std::cout << "n_test " << report.n_test << "\n";
  std::cout << "smae " << g17(report.smae) << "\n";
  std::cout << "smse " << g17(report.smse) << "\n";

  if (!args.train_path.empty()) {
    const lgp::Dataset train = lgp::load_csv(args.train_path);
    const double mean = train.targets.mean();
    const double var = (train.targets.array() - mean).square().mean();
    // Score the targets, not the latent function: the predictive variance
    // of an observation adds the noise variance.
    const Eigen::VectorXd target_vars =
        variances.array() + state.hyperparams().sigma_y_sq();
    report.msll = lgp::msll(means, target_vars, test.targets, mean, var);
    std::cout << "msll " << g17(report.msll) << "\n";
  } else {
    std::cout << "msll skipped (pass --train to score log loss against the "
                 "trivial Gaussian fit)\n";
  }

  if (!args.out_path.empty()) {
    write_prediction_csv(args.out_path, test.inputs, results);
    std::cout << "wrote per-point predictions to " << args.out_path << "\n";
  }
  report_warnings(report);
  return kExitSuccess;
}

int run_benchmark(const BenchmarkArgs& args) {
  if (args.repetitions < 1) throw lgp::ConfigError("benchmark: repetitions must be >= 1");

  lgp::TimingStats train_time;
  std::unique_ptr<lgp::InformationState> state;
  if (!args.data_path.empty()) {
    if (args.config_path.empty()) {
      throw lgp::ConfigError("benchmark: --data needs --config to retrain");
    }
    const lgp::RunConfig cfg = lgp::parse_config_file(args.config_path);
    std::vector<double> times(static_cast<std::size_t>(args.repetitions));
    for (int rep = 0; rep < args.repetitions; ++rep) {
      double seconds = 0.0;
      auto trained = train_from_csv(args.data_path, cfg, &seconds, nullptr);
      times[static_cast<std::size_t>(rep)] = seconds;
      if (rep + 1 == args.repetitions) {
        state = std::make_unique<lgp::InformationState>(std::move(trained));
      }
    }
    double sum = 0.0;
    for (double t : times) sum += t;
    train_time.repetitions = args.repetitions;
    train_time.mean_s = sum / static_cast<double>(times.size());
    if (times.size() > 1) {
      double sq = 0.0;
      for (double t : times) sq += (t - train_time.mean_s) * (t - train_time.mean_s);
      train_time.std_s = std::sqrt(sq / static_cast<double>(times.size() - 1));
    }
  } else if (!args.model_path.empty()) {
    state = std::make_unique<lgp::InformationState>(lgp::load_model(args.model_path));
  } else {
    throw lgp::ConfigError("benchmark: provide --model, or --data with --config");
  }

  const Eigen::MatrixXd points =
      lgp::load_points_csv(args.points_path, state->grid().dim());
  const lgp::Predictor predictor(*state);
  const lgp::EvalReport report =
      lgp::benchmark_predictions(predictor, points, args.repetitions);

  if (train_time.repetitions > 0) {
    std::cout << "train_time_mean_s " << g17(train_time.mean_s) << "\n";
    std::cout << "train_time_std_s " << g17(train_time.std_s) << "\n";
  }
  std::cout << "repetitions " << args.repetitions << "\n";
  std::cout << "predict_time_mean_s " << g17(report.predict_time.mean_s) << "\n";
  std::cout << "predict_time_std_s " << g17(report.predict_time.std_s) << "\n";
  std::cout << "median_prediction_latency_s " << g17(report.median_latency_s) << "\n";
  std::cout << "subset_size_histogram";
  for (const auto& [size, count] : report.subset_size_histogram) {
    std::cout << " " << size << ":" << count;
  }
  std::cout << "\n";
  report_warnings(report);
  return kExitSuccess;
}

int run_info(const InfoArgs& args) {
  if (!args.config_path.empty()) {
    const lgp::RunConfig cfg = lgp::parse_config_file(args.config_path);
    std::cout << lgp::to_json(cfg) << "\n";
    return kExitSuccess;
  }
  if (args.model_path.empty()) {
    throw lgp::ConfigError("info: provide --model or --config");
  }
  const lgp::InformationState state = lgp::load_model(args.model_path);
  const lgp::UniformGrid& grid = state.grid();
  const lgp::HyperParams& hp = state.hyperparams();

  std::cout << "format LGPIF1 v" << lgp::kModelFormatVersion << "\n";
  std::cout << "dimension " << grid.dim() << "\n";
  std::cout << "grid_counts";
  for (lgp::Index c : grid.counts()) std::cout << " " << c;
  std::cout << "\n";
  std::cout << "basis_functions " << grid.size() << "\n";
  std::cout << "grid_spacing " << g17(grid.spacing()) << "\n";
  std::cout << "grid_lower";
  for (int k = 0; k < grid.dim(); ++k) std::cout << " " << g17(grid.lower()[k]);
  std::cout << "\n";
  std::cout << "sigma_se " << g17(hp.sigma_se) << "\n";
  std::cout << "lengthscales";
  for (int k = 0; k < hp.dim(); ++k) std::cout << " " << g17(hp.lengthscales[k]);
  std::cout << "\n";
  std::cout << "sigma_y " << g17(hp.sigma_y) << "\n";
  std::cout << "r " << g17(hp.r) << "\n";
  std::cout << "r_star " << g17(hp.r_star) << "\n";
  std::cout << "y_mean " << g17(state.y_mean()) << "\n";
  std::cout << "n_measurements " << state.n_measurements() << "\n";
  std::cout << "iota_nonzeros " << state.iota_nnz() << "\n";
  std::cout << "imat_nonzeros " << state.imat_nnz() << "\n";
  return kExitSuccess;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gaussian-process regression with grid-placed finite-support "
               "basis functions: O(N) information-form training, local "
               "constant-time predictions"};
  app.require_subcommand(1);

  TrainArgs train_args;
  CLI::App* train = app.add_subcommand("train", "Train a model from a CSV dataset");
  train->add_option("--data", train_args.data_path, "training CSV (inputs..., target)")
      ->required();
  train->add_option("--config", train_args.config_path, "JSON config file")->required();
  train->add_option("--out", train_args.out_path, "output model file")->required();

  PredictArgs predict_args;
  CLI::App* predict = app.add_subcommand("predict", "Predict at query points");
  predict->add_option("--model", predict_args.model_path, "trained model file")->required();
  predict->add_option("--points", predict_args.points_path, "query points CSV")->required();
  predict->add_option("--out", predict_args.out_path, "output CSV")->required();
  predict->add_option("--workers", predict_args.workers, "prediction threads");

  EvaluateArgs evaluate_args;
  CLI::App* evaluate = app.add_subcommand("evaluate", "Score predictions against targets");
  evaluate->add_option("--model", evaluate_args.model_path, "trained model file")->required();
  evaluate->add_option("--data", evaluate_args.data_path, "test CSV with target column")
      ->required();
  evaluate->add_option("--train", evaluate_args.train_path,
                       "training CSV (enables MSLL)");
  evaluate->add_option("--out", evaluate_args.out_path, "per-point prediction CSV");
  evaluate->add_option("--workers", evaluate_args.workers, "prediction threads");

  BenchmarkArgs benchmark_args;
  CLI::App* benchmark = app.add_subcommand("benchmark", "Time training and prediction");
  benchmark->add_option("--model", benchmark_args.model_path, "trained model file");
  benchmark->add_option("--points", benchmark_args.points_path, "query points CSV")
      ->required();
  benchmark->add_option("--data", benchmark_args.data_path, "training CSV to retrain");
  benchmark->add_option("--config", benchmark_args.config_path, "JSON config file");
  benchmark->add_option("--repetitions", benchmark_args.repetitions,
                        "timing repetitions (default 10)");

  InfoArgs info_args;
  CLI::App* info = app.add_subcommand("info", "Describe a model or config file");
  info->add_option("--model", info_args.model_path, "trained model file");
  info->add_option("--config", info_args.config_path, "JSON config file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (*train) return run_train(train_args);
    if (*predict) return run_predict(predict_args);
    if (*evaluate) return run_evaluate(evaluate_args);
    if (*benchmark) return run_benchmark(benchmark_args);
    if (*info) return run_info(info_args);
    return kExitConfig;
  } catch (const lgp::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const lgp::NumericalError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const lgp::DataError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInternal;
  }
}
