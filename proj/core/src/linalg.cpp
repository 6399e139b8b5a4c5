#include "lgp/linalg.hpp"

#include <Eigen/Eigenvalues>

#include <sstream>

namespace lgp {

namespace {

// Numerically positive semidefinite: D may dip below zero only at the
// roundoff level of the largest pivot.
bool acceptable(const Eigen::LDLT<Eigen::MatrixXd>& ldlt) {
  if (ldlt.info() != Eigen::Success) return false;
  const auto& d = ldlt.vectorD();
  if (d.size() == 0) return false;
  const double largest = d.maxCoeff();
  if (!(largest > 0.0)) return false;
  return d.minCoeff() >= -1e-10 * largest;
}

}  // namespace

SpdSolver::SpdSolver(Eigen::MatrixXd matrix, double scale,
                     const JitterPolicy& policy, const std::string& context) {
  ldlt_.compute(matrix);
  if (acceptable(ldlt_)) return;

  for (double jitter = policy.initial; jitter <= policy.max * (1.0 + 1e-12);
       jitter *= policy.growth) {
    Eigen::MatrixXd loaded = matrix;
    loaded.diagonal().array() += jitter * scale;
    ldlt_.compute(loaded);
    if (acceptable(ldlt_)) {
      jitter_used_ = jitter * scale;
      return;
    }
  }

  // Failure path: the matrix is small, so an exact spectrum is affordable
  // for the diagnostic.
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(matrix, Eigen::EigenvaluesOnly);
  std::ostringstream msg;
  msg << context << ": symmetric factorization failed for a " << matrix.rows()
      << "x" << matrix.cols() << " system after jitter escalation to "
      << policy.max * scale;
  if (eig.info() == Eigen::Success && matrix.rows() > 0) {
    msg << " (eigenvalue range [" << eig.eigenvalues().minCoeff() << ", "
        << eig.eigenvalues().maxCoeff() << "])";
  }
  throw NumericalError(msg.str());
}

}  // namespace lgp
