#include <benchmark/benchmark.h>

#include <random>

#include "lgp/predictor.hpp"
#include "lgp/trainer.hpp"

namespace {

using namespace lgp;

HyperParams bench_hp(double r_star) {
  HyperParams hp;
  hp.sigma_se = 1.0;
  hp.lengthscales = Eigen::VectorXd::Ones(2);
  hp.sigma_y = 0.1;
  hp.r_star = r_star;
  hp.r = 2.0 * r_star;
  return hp;
}

UniformGrid square_grid(Index cells) {
  return UniformGrid(Eigen::Vector2d(0.0, 0.0), 1.0, {cells, cells});
}

Eigen::MatrixXd random_points(std::mt19937& rng, int n, double extent) {
  std::uniform_real_distribution<double> unif(0.0, extent);
  Eigen::MatrixXd pts(n, 2);
  for (int i = 0; i < n; ++i) {
    pts(i, 0) = unif(rng);
    pts(i, 1) = unif(rng);
  }
  return pts;
}

void BM_SupportSet(benchmark::State& state) {
  const UniformGrid grid = square_grid(state.range(0));
  const double extent = static_cast<double>(state.range(0) - 1);
  std::mt19937 rng(1);
  const Eigen::MatrixXd queries = random_points(rng, 512, extent);
  int i = 0;
  for (auto _ : state) {
    const auto s = grid.support_set(queries.row(i % 512).transpose(), 3.0);
    benchmark::DoNotOptimize(s.data());
    ++i;
  }
}
BENCHMARK(BM_SupportSet)->Arg(32)->Arg(100)->Arg(317);

// Per-measurement update cost at fixed grid density: flat as the domain
// (and with it m) grows.
void BM_TrainUpdate(benchmark::State& state) {
  const UniformGrid grid = square_grid(state.range(0));
  const double extent = static_cast<double>(state.range(0) - 1);
  const HyperParams hp = bench_hp(1.0);
  std::mt19937 rng(2);
  const Eigen::MatrixXd xs = random_points(rng, 4096, extent);
  InformationState info(grid, hp, 0.0);
  int i = 0;
  for (auto _ : state) {
    info.update(xs.row(i % 4096).transpose(), 0.5);
    ++i;
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_TrainUpdate)->Arg(32)->Arg(100)->Arg(317);

// Per-prediction cost at fixed grid density: a function of the local subset
// size only, independent of the total basis-function count.
void BM_Predict(benchmark::State& state) {
  const Index cells = state.range(0);
  const UniformGrid grid = square_grid(cells);
  const double extent = static_cast<double>(cells - 1);
  const HyperParams hp = bench_hp(1.5);
  std::mt19937 rng(3);

  InformationState info(grid, hp, 0.0);
  const Eigen::MatrixXd xs = random_points(rng, 20000, extent);
  Eigen::VectorXd ys = Eigen::VectorXd::Zero(20000);
  for (int t = 0; t < 20000; ++t) ys[t] = std::sin(xs(t, 0)) + 0.1 * xs(t, 1);
  info.train_batch(xs, ys);
  info.finalize();

  const Predictor predictor(info);
  const Eigen::MatrixXd queries = random_points(rng, 512, extent);
  int i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(predictor.predict(queries.row(i % 512).transpose()));
    ++i;
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_Predict)->Arg(32)->Arg(100)->Arg(317);

// Batch throughput across worker counts; predictions are independent reads
// of the finalized state, so scaling should stay near-linear up to the core
// count.
void BM_PredictBatchWorkers(benchmark::State& state) {
  const UniformGrid grid = square_grid(100);
  const HyperParams hp = bench_hp(1.5);
  std::mt19937 rng(5);

  InformationState info(grid, hp, 0.0);
  const Eigen::MatrixXd xs = random_points(rng, 20000, 99.0);
  Eigen::VectorXd ys = Eigen::VectorXd::Zero(20000);
  for (int t = 0; t < 20000; ++t) ys[t] = std::sin(xs(t, 0)) + 0.1 * xs(t, 1);
  info.train_batch(xs, ys);
  info.finalize();

  PredictorOptions opts;
  opts.workers = static_cast<int>(state.range(0));
  const Predictor predictor(info, opts);
  const Eigen::MatrixXd queries = random_points(rng, 2048, 99.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(predictor.predict_batch(queries));
  }
  state.SetItemsProcessed(state.iterations() * queries.rows());
}
BENCHMARK(BM_PredictBatchWorkers)->Arg(1)->Arg(2)->Arg(4)->UseRealTime();

// Local solve cost across subset sizes (r_star sweep).
void BM_PredictSubsetSize(benchmark::State& state) {
  const UniformGrid grid = square_grid(64);
  const double r_star = static_cast<double>(state.range(0)) / 2.0;
  const HyperParams hp = bench_hp(r_star);
  std::mt19937 rng(4);

  InformationState info(grid, hp, 0.0);
  const Eigen::MatrixXd xs = random_points(rng, 8000, 63.0);
  Eigen::VectorXd ys = Eigen::VectorXd::Zero(8000);
  for (int t = 0; t < 8000; ++t) ys[t] = std::sin(xs(t, 0));
  info.train_batch(xs, ys);
  info.finalize();

  const Predictor predictor(info);
  const Eigen::MatrixXd queries = random_points(rng, 512, 40.0);
  int i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(predictor.predict(queries.row(i % 512).transpose()));
    ++i;
  }
}
BENCHMARK(BM_PredictSubsetSize)->Arg(2)->Arg(4)->Arg(7)->Arg(11);

}  // namespace

BENCHMARK_MAIN();
