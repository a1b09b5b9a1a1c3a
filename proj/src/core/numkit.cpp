#include "numkit.hpp"

#include <Eigen/SVD>

namespace ddfdi::numkit {

namespace {

// JacobiSVD is run on the tall orientation; singular values are unchanged
// under transposition and this keeps us on the well-trodden code path for
// every rows/cols combination.
template <typename Matrix>
Eigen::VectorXd svals_impl(const Matrix& M) {
  if (M.rows() == 0 || M.cols() == 0) return Eigen::VectorXd();
  if (M.cols() > M.rows()) {
    Matrix Mt = M.adjoint();
    Eigen::JacobiSVD<Matrix> svd(Mt);
    return svd.singularValues();
  }
  Eigen::JacobiSVD<Matrix> svd(M);
  return svd.singularValues();
}

int rank_from_svals(const Eigen::VectorXd& s, double rel_tol) {
  if (s.size() == 0 || s(0) <= 0.0) return 0;
  const double cut = rel_tol * s(0);
  int rank = 0;
  while (rank < s.size() && s(rank) > cut) ++rank;
  return rank;
}

}  // namespace

VectorXd singular_values(const MatrixXd& M) { return svals_impl(M); }
VectorXd singular_values(const MatrixXcd& M) { return svals_impl(M); }

int numerical_rank(const MatrixXd& M, const Tolerance& tol) {
  tol.validate();
  return rank_from_svals(singular_values(M), tol.rel_rank_tol);
}

int numerical_rank(const MatrixXcd& M, const Tolerance& tol) {
  tol.validate();
  return rank_from_svals(singular_values(M), tol.rel_rank_tol);
}

MatrixXd pseudo_inverse(const MatrixXd& M, const Tolerance& tol) {
  tol.validate();
  if (M.rows() == 0 || M.cols() == 0) return MatrixXd::Zero(M.cols(), M.rows());

  const bool wide = M.cols() > M.rows();
  MatrixXd T = wide ? M.transpose() : M;
  Eigen::JacobiSVD<MatrixXd> svd(T, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const VectorXd& s = svd.singularValues();
  if (s.size() == 0 || s(0) <= 0.0) return MatrixXd::Zero(M.cols(), M.rows());

  const double cut = tol.rel_rank_tol * s(0);
  VectorXd inv = VectorXd::Zero(s.size());
  for (int i = 0; i < s.size(); ++i)
    if (s(i) > cut) inv(i) = 1.0 / s(i);

  MatrixXd pinvT = svd.matrixV() * inv.asDiagonal() * svd.matrixU().transpose();
  return wide ? MatrixXd(pinvT.transpose()) : pinvT;
}

MatrixXd null_space_basis(const MatrixXd& M, const Tolerance& tol) {
  tol.validate();
  if (M.cols() == 0) return MatrixXd::Zero(0, 0);
  if (M.rows() == 0) return MatrixXd::Identity(M.cols(), M.cols());

  if (M.cols() >= M.rows()) {
    // Kernel of M = trailing left singular vectors of M'.
    MatrixXd Mt = M.transpose();
    Eigen::JacobiSVD<MatrixXd> svd(Mt, Eigen::ComputeFullU);
    const int rank = rank_from_svals(svd.singularValues(), tol.rel_rank_tol);
    return svd.matrixU().rightCols(M.cols() - rank);
  }
  Eigen::JacobiSVD<MatrixXd> svd(M, Eigen::ComputeFullV);
  const int rank = rank_from_svals(svd.singularValues(), tol.rel_rank_tol);
  return svd.matrixV().rightCols(M.cols() - rank);
}

NilpotencyResult is_nilpotent(const MatrixXd& M, const Tolerance& tol) {
  tol.validate();
  if (M.rows() != M.cols()) raise(Errc::dimension_mismatch, "is_nilpotent needs a square matrix");
  const int n = static_cast<int>(M.rows());
  if (n == 0) return {true, 0};

  MatrixXd P = M;
  for (int k = 1; k <= n; ++k) {
    if (P.cwiseAbs().maxCoeff() < tol.abs_zero_tol) return {true, k};
    if (k < n) P = P * M;
  }
  return {false, std::nullopt};
}

int pbh_rank_at(const MatrixXd& Apart, const MatrixXd& Cpart, std::complex<double> z,
                const Tolerance& tol) {
  const auto n = Apart.rows();
  if (Apart.cols() != n || Cpart.cols() != n)
    raise(Errc::dimension_mismatch, "pbh_rank_at: inconsistent dimensions");
  MatrixXcd stacked(n + Cpart.rows(), n);
  stacked.topRows(n) = z * MatrixXcd::Identity(n, n) - Apart.cast<std::complex<double>>();
  stacked.bottomRows(Cpart.rows()) = Cpart.cast<std::complex<double>>();
  return numerical_rank(stacked, tol);
}

}  // namespace ddfdi::numkit
