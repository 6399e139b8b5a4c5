#include <doctest.h>

#include <Eigen/Eigenvalues>

#include <random>

#include "lgp/kernel.hpp"
#include "test_support.hpp"

using namespace lgp;
using namespace lgp::testing;

TEST_CASE("kernel_eval at zero distance is exactly sigma_se squared") {
  const HyperParams hp = make_hp(2.5, {0.7, 1.3}, 0.1, 6.0, 3.0);
  const Eigen::VectorXd x = vec2(0.4, -1.9);
  CHECK(kernel_eval(x, x, hp) == 2.5 * 2.5);
}

TEST_CASE("kernel_eval unit case") {
  const HyperParams hp = make_hp(1.0, {1.0}, 0.1, 6.0, 3.0);
  CHECK(kernel_eval(vec1(0.0), vec1(1.0), hp) ==
        doctest::Approx(0.6065306597126334).epsilon(1e-14));
}

TEST_CASE("kernel_eval is symmetric and respects ARD lengthscales") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> unif(-3.0, 3.0);
  const HyperParams hp = make_hp(1.7, {3.094, 2.030, 0.189}, 0.1, 6.0, 3.0);
  for (int trial = 0; trial < 50; ++trial) {
    Eigen::VectorXd a(3), b(3);
    for (int k = 0; k < 3; ++k) {
      a[k] = unif(rng);
      b[k] = unif(rng);
    }
    CHECK(kernel_eval(a, b, hp) == kernel_eval(b, a, hp));
    double q = 0.0;
    for (int k = 0; k < 3; ++k) {
      const double s = (a[k] - b[k]) / hp.lengthscales[k];
      q += s * s;
    }
    CHECK(kernel_eval(a, b, hp) ==
          doctest::Approx(hp.sigma_se_sq() * std::exp(-0.5 * q)).epsilon(1e-14));
  }
}

TEST_CASE("kernel_eval rejects dimension mismatch") {
  const HyperParams hp = make_hp(1.0, {1.0, 1.0}, 0.1, 6.0, 3.0);
  CHECK_THROWS_AS(kernel_eval(vec1(0.0), vec2(0.0, 0.0), hp), DimensionError);
  CHECK_THROWS_AS(kernel_eval(vec1(0.0), vec1(0.0), hp), DimensionError);
}

TEST_CASE("kernel_matrix single point and fixed 1-D values") {
  const HyperParams hp = make_hp(1.0, {1.0}, 0.1, 6.0, 3.0);
  Eigen::MatrixXd one(1, 1);
  one << 0.3;
  const Eigen::MatrixXd k1 = kernel_matrix(one, one, hp);
  CHECK(k1.rows() == 1);
  CHECK(k1(0, 0) == 1.0);

  Eigen::MatrixXd pts(3, 1);
  pts << 0.0, 1.0, 2.0;
  const Eigen::MatrixXd k = kernel_matrix(pts, pts, hp);
  CHECK(k(0, 1) == doctest::Approx(0.6065306597126334).epsilon(1e-14));
  CHECK(k(1, 2) == doctest::Approx(0.6065306597126334).epsilon(1e-14));
  CHECK(k(0, 2) == doctest::Approx(0.1353352832366127).epsilon(1e-14));
  CHECK(k.diagonal().isConstant(1.0));
}

TEST_CASE("kernel_matrix cross version transposes") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> unif(-2.0, 2.0);
  const HyperParams hp = make_hp(0.8, {0.5, 1.5}, 0.1, 6.0, 3.0);
  Eigen::MatrixXd a(4, 2), b(6, 2);
  for (Eigen::Index i = 0; i < a.size(); ++i) a(i) = unif(rng);
  for (Eigen::Index i = 0; i < b.size(); ++i) b(i) = unif(rng);
  const Eigen::MatrixXd kab = kernel_matrix(a, b, hp);
  const Eigen::MatrixXd kba = kernel_matrix(b, a, hp);
  CHECK((kab - kba.transpose()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("kernel matrices are numerically positive semidefinite") {
  std::mt19937 rng(23);
  std::uniform_real_distribution<double> unif(-5.0, 5.0);
  std::uniform_int_distribution<int> size(2, 100);
  const HyperParams hp = make_hp(1.3, {0.9, 1.8}, 0.1, 6.0, 3.0);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = size(rng);
    Eigen::MatrixXd pts(n, 2);
    for (Eigen::Index i = 0; i < pts.size(); ++i) pts(i) = unif(rng);
    const Eigen::MatrixXd k = kernel_matrix(pts, pts, hp);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(k, Eigen::EigenvaluesOnly);
    CHECK(eig.eigenvalues().minCoeff() >= -1e-10 * hp.sigma_se_sq());
  }
}

TEST_CASE("basis_eval at its center and outside support") {
  const HyperParams hp = make_hp(1.4, {1.0}, 0.1, 1.0, 0.5);
  const UniformGrid grid(vec1(0.0), 1.0, {5});

  CHECK(basis_eval(2, vec1(2.0), grid, hp) == hp.sigma_se_sq());
  // Just past the support radius: exactly zero, not merely small.
  CHECK(basis_eval(2, vec1(3.0 + 1e-9), grid, hp) == 0.0);
  // On the boundary: included (closed ball).
  CHECK(basis_eval(2, vec1(3.0), grid, hp) ==
        doctest::Approx(hp.sigma_se_sq() * std::exp(-0.5)).epsilon(1e-14));
}

TEST_CASE("basis_eval fixed value") {
  const HyperParams hp = make_hp(1.0, {1.0}, 0.1, 1.0, 0.5);
  const UniformGrid grid(vec1(0.0), 1.0, {3});
  CHECK(basis_eval(0, vec1(0.5), grid, hp) ==
        doctest::Approx(0.8824969025845953).epsilon(1e-14));
}

TEST_CASE("basis_eval equals kernel_eval at the center wherever nonzero") {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> unif(-4.0, 8.0);
  const HyperParams hp = make_hp(1.1, {1.7, 0.6}, 0.1, 2.0, 1.0);
  const UniformGrid grid(vec2(0.0, 0.0), 0.5, {6, 7});
  for (int trial = 0; trial < 200; ++trial) {
    const Eigen::VectorXd x = vec2(unif(rng), unif(rng));
    const Index j = std::uniform_int_distribution<Index>(0, grid.size() - 1)(rng);
    const double phi = basis_eval(j, x, grid, hp);
    if (phi != 0.0) {
      // The center lives in normalized coordinates; de-normalize for the
      // raw-coordinate kernel.
      const Eigen::VectorXd u_raw = grid.center_of(j).cwiseProduct(hp.lengthscales);
      CHECK(phi == doctest::Approx(kernel_eval(u_raw, x, hp)).epsilon(1e-12));
    }
  }
}

TEST_CASE("anisotropic truncation uses normalized sup-norm") {
  // lengthscales (2, 0.5): a raw offset of 2*r along axis 0 but normalized
  // offset r stays inside support; the same raw offset on axis 1 does not.
  const HyperParams hp = make_hp(1.0, {2.0, 0.5}, 0.1, 1.0, 0.5);
  const UniformGrid grid(vec2(0.0, 0.0), 1.0, {3, 3});
  CHECK(basis_eval(0, vec2(2.0, 0.0), grid, hp) > 0.0);
  CHECK(basis_eval(0, vec2(0.0, 2.0), grid, hp) == 0.0);
}

TEST_CASE("hyperparameter validation") {
  HyperParams hp = make_hp(1.0, {1.0}, 0.1, 6.0, 3.0);
  CHECK_NOTHROW(hp.validate());
  hp.r = 5.9;
  CHECK_THROWS_AS(hp.validate(), ConfigError);
  CHECK_NOTHROW(hp.validate(/*require_fast_prior=*/false));
  hp.sigma_y = 0.0;
  CHECK_THROWS_AS(hp.validate(false), ConfigError);
}
