#pragma once

#include <Eigen/Cholesky>
#include <Eigen/Core>

#include <string>

#include "lgp/errors.hpp"

namespace lgp {

// Diagonal loading applied when a Cholesky factorization fails. Amounts are
// multiples of sigma_se^2 so the policy is scale-free.
struct JitterPolicy {
  double initial = 1e-9;
  double max = 1e-3;
  double growth = 10.0;
};

// Symmetric factorization of a small dense SPD (or numerically
// semidefinite) matrix with jitter escalation. Uses pivoted LDLT, which
// stays stable on the near-singular systems dense basis-function grids
// produce. The factorization is accepted when it succeeds and the diagonal
// is nonnegative up to roundoff; otherwise jitter*scale is added to the
// diagonal, escalating geometrically up to policy.max, after which a
// NumericalError carrying the system size and a condition estimate is
// thrown.
class SpdSolver {
 public:
  SpdSolver(Eigen::MatrixXd matrix, double scale, const JitterPolicy& policy,
            const std::string& context);

  template <typename Derived>
  auto solve(const Eigen::MatrixBase<Derived>& rhs) const {
    return ldlt_.solve(rhs).eval();
  }

  // Jitter actually added to the diagonal (0 when the first attempt passed).
  double jitter_used() const { return jitter_used_; }

 private:
  Eigen::LDLT<Eigen::MatrixXd> ldlt_;
  double jitter_used_ = 0.0;
};

}  // namespace lgp
