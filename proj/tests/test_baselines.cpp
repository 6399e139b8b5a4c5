#include <doctest.h>

#include <random>

#include "lgp/baselines.hpp"
#include "test_support.hpp"

using namespace lgp;
using namespace lgp::testing;

TEST_CASE("full GP with a single training point") {
  const double sigma = 1.3, noise = 0.4, y = 2.0;
  const HyperParams hp = make_hp(sigma, {1.0}, noise, 6.0, 3.0);
  Eigen::MatrixXd x(1, 1);
  x << 0.7;
  Eigen::VectorXd ys(1);
  ys << y;
  const DenseGPModel gp(x, ys, hp);
  const auto [mean, var] = gp.predict(vec1(0.7));
  CHECK(mean == doctest::Approx(sigma * sigma * y / (sigma * sigma + noise * noise))
                    .epsilon(1e-12));
  CHECK(var > 0.0);
  CHECK(var < sigma * sigma);
}

TEST_CASE("full GP far from the data returns the prior") {
  const HyperParams hp = make_hp(1.0, {0.5}, 0.1, 6.0, 3.0);
  Eigen::MatrixXd x(3, 1);
  x << 0.0, 0.4, 1.0;
  Eigen::VectorXd ys(3);
  ys << 1.0, 0.5, -0.2;
  const DenseGPModel gp(x, ys, hp, /*y_mean=*/2.5);
  const auto [mean, var] = gp.predict(vec1(500.0));
  CHECK(mean == doctest::Approx(2.5).epsilon(1e-12));
  CHECK(var == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("full GP variance at training points is below the noise floor") {
  std::mt19937 rng(9);
  std::uniform_real_distribution<double> unif01(0.0, 1.0);
  const HyperParams hp = make_hp(1.0, {0.5}, 0.1, 6.0, 3.0);
  const int n = 50;
  Eigen::MatrixXd xs(n, 1);
  Eigen::VectorXd ys(n);
  for (int t = 0; t < n; ++t) {
    xs(t, 0) = 5.0 * unif01(rng);
    ys[t] = smooth_field(xs(t, 0));
  }
  const DenseGPModel gp(xs, ys, hp);
  for (int t = 0; t < n; ++t) {
    const auto [mean, var] = gp.predict(xs.row(t).transpose());
    (void)mean;
    CHECK(var < hp.sigma_y_sq() + 1e-6);
  }
}

TEST_CASE("full GP is invariant under permutation of the training data") {
  std::mt19937 rng(13);
  std::uniform_real_distribution<double> unif01(0.0, 1.0);
  const HyperParams hp = make_hp(1.0, {0.7}, 0.2, 6.0, 3.0);
  const int n = 25;
  Eigen::MatrixXd xs(n, 1);
  Eigen::VectorXd ys(n);
  for (int t = 0; t < n; ++t) {
    xs(t, 0) = 4.0 * unif01(rng);
    ys[t] = smooth_field(xs(t, 0));
  }
  const DenseGPModel gp(xs, ys, hp);
  const DenseGPModel gp_rev(xs.colwise().reverse(), ys.reverse(), hp);
  for (double q : {0.3, 1.1, 2.7, 3.9}) {
    const auto [m1, v1] = gp.predict(vec1(q));
    const auto [m2, v2] = gp_rev.predict(vec1(q));
    CHECK(m1 == doctest::Approx(m2).epsilon(1e-10));
    CHECK(v1 == doctest::Approx(v2).epsilon(1e-10));
  }
}

TEST_CASE("dense cap is enforced") {
  const HyperParams hp = make_hp(1.0, {1.0}, 0.1, 6.0, 3.0);
  Eigen::MatrixXd xs = Eigen::MatrixXd::Random(11, 1);
  Eigen::VectorXd ys = Eigen::VectorXd::Random(11);
  CHECK_THROWS_AS(DenseGPModel(xs, ys, hp, 0.0, /*dense_cap=*/10), GridSizeError);
  CHECK_THROWS_AS(GlobalDTCModel(UniformGrid(vec1(0.0), 1.0, {11}), hp,
                                 GlobalDTCModel::BasisMode::kTruncated, 0.0,
                                 /*dense_cap=*/10),
                  GridSizeError);
}

TEST_CASE("untrained DTC model predicts the prior") {
  const HyperParams hp = make_hp(1.2, {1.0}, 0.1, 6.0, 3.0);
  const GlobalDTCModel dtc(UniformGrid(vec1(0.0), 0.5, {21}), hp,
                           GlobalDTCModel::BasisMode::kTruncated, 0.7);
  const auto [mean, var] = dtc.predict(vec1(5.0));
  CHECK(mean == doctest::Approx(0.7).epsilon(1e-12));
  CHECK(var == doctest::Approx(hp.sigma_se_sq()).epsilon(1e-10));
}

TEST_CASE("DTC information terms match the dense oracle") {
  std::mt19937 rng(21);
  std::uniform_real_distribution<double> unif01(0.0, 1.0);
  const HyperParams hp = make_hp(1.0, {1.0}, 0.15, 2.0, 1.0);
  const UniformGrid grid(vec1(0.0), 0.5, {17});
  GlobalDTCModel dtc(grid, hp, GlobalDTCModel::BasisMode::kTruncated);
  const int n = 40;
  Eigen::MatrixXd xs(n, 1);
  Eigen::VectorXd ys(n);
  for (int t = 0; t < n; ++t) {
    xs(t, 0) = 8.0 * unif01(rng);
    ys[t] = unif01(rng) - 0.5;
  }
  dtc.train(xs, ys);
  std::vector<Index> all(static_cast<std::size_t>(grid.size()));
  for (Index j = 0; j < grid.size(); ++j) all[static_cast<std::size_t>(j)] = j;
  const DenseInformation want = dense_information(grid, all, xs, ys, hp);
  CHECK((dtc.iota() - want.iota).cwiseAbs().maxCoeff() <= 1e-12);
  CHECK((dtc.imat() - want.imat).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("DTC variance stays within the prior bound") {
  std::mt19937 rng(33);
  std::uniform_real_distribution<double> unif01(0.0, 1.0);
  const HyperParams hp = make_hp(1.0, {0.5}, 0.1, 8.0, 4.0);
  const UniformGrid grid = UniformGrid::from_bounds(vec1(0.0), vec1(10.0), 0.5, 2.0);
  GlobalDTCModel dtc(grid, hp, GlobalDTCModel::BasisMode::kTruncated);
  const int n = 80;
  Eigen::MatrixXd xs(n, 1);
  Eigen::VectorXd ys(n);
  for (int t = 0; t < n; ++t) {
    xs(t, 0) = 5.0 * unif01(rng);
    ys[t] = smooth_field(xs(t, 0));
  }
  dtc.train(xs, ys);
  for (int q = 0; q < 50; ++q) {
    const auto [mean, var] = dtc.predict(vec1(5.0 * unif01(rng)));
    (void)mean;
    CHECK(var >= 0.0);
    CHECK(var <= hp.sigma_se_sq() + 1e-8);
  }
}

TEST_CASE("DTC converges to the full GP as the grid refines") {
  // Fixed synthetic dataset; RMSE against the dense GP must decrease
  // (within a small slack) as the spacing halves.
  std::mt19937 rng(55);
  std::uniform_real_distribution<double> unif01(0.0, 1.0);
  std::normal_distribution<double> noise(0.0, 0.1);
  const double l = 0.5;
  const HyperParams hp_gp = make_hp(1.0, {l}, 0.1, 1e6, 3.0);

  const int n = 120;
  Eigen::MatrixXd xs(n, 1);
  Eigen::VectorXd ys(n);
  for (int t = 0; t < n; ++t) {
    xs(t, 0) = 6.0 * unif01(rng);
    ys[t] = smooth_field(xs(t, 0)) + noise(rng);
  }
  const DenseGPModel gp(xs, ys, hp_gp);

  Eigen::MatrixXd queries(40, 1);
  for (int q = 0; q < 40; ++q) queries(q, 0) = 0.15 + 5.7 * q / 39.0;

  std::vector<double> rmse;
  for (const double spacing_raw : {l, l / 2.0, l / 4.0}) {
    const double spacing = spacing_raw / l;  // normalized units
    const UniformGrid grid =
        UniformGrid::from_bounds(vec1(0.0), vec1(6.0 / l), spacing, 2.0);
    GlobalDTCModel dtc(grid, hp_gp, GlobalDTCModel::BasisMode::kUntruncated);
    dtc.train(xs, ys);
    double sq = 0.0;
    for (int q = 0; q < queries.rows(); ++q) {
      const auto [dm, dv] = dtc.predict(queries.row(q).transpose());
      const auto [gm, gv] = gp.predict(queries.row(q).transpose());
      (void)dv;
      (void)gv;
      sq += (dm - gm) * (dm - gm);
    }
    rmse.push_back(std::sqrt(sq / static_cast<double>(queries.rows())));
  }
  // Monotone within noise: below 1e-6 the sequence sits on the numerical
  // floor of the solves and may wiggle.
  CHECK(rmse[1] <= std::max(rmse[0] * 1.1, 1e-6));
  CHECK(rmse[2] <= std::max(rmse[1] * 1.1, 1e-6));
  CHECK(rmse.back() <= 0.02);
}
