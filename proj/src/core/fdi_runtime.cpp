#include "fdi_runtime.hpp"

namespace ddfdi::fdi {

MarkovStack build_markov_stack(const UioMatrices& uio, int N) {
  if (N < 1) raise(Errc::invalid_argument, "window length N must be >= 1");
  const int p = uio.p(), m = uio.m();

  MarkovStack stack;
  stack.N = N;
  stack.M = MatrixXd::Zero(N * p, N * m);

  MatrixXd CA = uio.C;  // holds C * A_uio^lag
  for (int lag = 0; lag < N; ++lag) {
    const MatrixXd block = CA * uio.B_u;
    for (int i = lag; i < N; ++i) stack.M.block(i * p, (i - lag) * m, p, m) = block;
    if (lag + 1 < N) CA = CA * uio.A_uio;
  }
  return stack;
}

VectorXd identify_fault_window(const MarkovStack& stack, const StackedVector& r_window,
                               const Tolerance& tol) {
  if (r_window.depth != stack.N)
    raise(Errc::dimension_mismatch, "residual window depth must match the stack");
  if (r_window.value.size() != stack.M.rows())
    raise(Errc::dimension_mismatch, "residual window length must be N p");
  if (numkit::numerical_rank(stack.M, tol) != stack.M.cols())
    raise(Errc::not_identifiable, "Markov stack is not of full column rank");
  return numkit::pseudo_inverse(stack.M, tol) * r_window.value;
}

RecursiveFaultEstimator::RecursiveFaultEstimator(const UioMatrices& uio, const Tolerance& tol)
    : A_uio_(uio.A_uio), B_u_(uio.B_u), C_(uio.C) {
  const MatrixXd cbu = C_ * B_u_;
  if (numkit::numerical_rank(cbu, tol) != B_u_.cols())
    raise(Errc::not_identifiable, "C B_u is not of full column rank");
  cbu_pinv_ = numkit::pseudo_inverse(cbu, tol);
  ehat_ = VectorXd::Zero(A_uio_.rows());
}

VectorXd RecursiveFaultEstimator::step(const VectorXd& next_residual) {
  if (next_residual.size() != C_.rows())
    raise(Errc::dimension_mismatch, "residual must have p entries");
  VectorXd fhat = cbu_pinv_ * (next_residual - C_ * (A_uio_ * ehat_));
  ehat_ = A_uio_ * ehat_ + B_u_ * fhat;
  return fhat;
}

void RecursiveFaultEstimator::reset() { ehat_.setZero(); }

MatrixXd identify_fault_recursive(const UioMatrices& uio, const MatrixXd& residuals, int k_start,
                                  const Tolerance& tol) {
  const int T = static_cast<int>(residuals.cols());
  if (residuals.rows() != uio.p())
    raise(Errc::dimension_mismatch, "residuals must have p rows");
  if (k_start < 0 || k_start > T - 1)
    raise(Errc::out_of_range, "k_start outside the residual range");

  RecursiveFaultEstimator est(uio, tol);
  MatrixXd fhat = MatrixXd::Zero(uio.m(), std::max(0, T - 1));
  for (int k = k_start; k + 1 < T; ++k) fhat.col(k) = est.step(residuals.col(k + 1));
  return fhat;
}

std::optional<int> detect(const MatrixXd& residuals, double threshold) {
  if (threshold < 0.0) raise(Errc::invalid_argument, "threshold must be nonnegative");
  for (int k = 0; k < residuals.cols(); ++k)
    if (residuals.col(k).norm() > threshold) return k;
  return std::nullopt;
}

FaultTrace monitor(const UioMatrices& uio, const MatrixXd& u, const MatrixXd& y,
                   const VectorXd& z0, int k_id, double threshold, const Tolerance& tol) {
  auto [xhat, res] = lti::run_residual_generator(uio, z0, u, y);
  FaultTrace trace;
  trace.k_id = k_id;
  trace.threshold = threshold;
  trace.detection_time = detect(res, threshold);
  trace.estimates = identify_fault_recursive(uio, res, k_id, tol);
  trace.residuals = std::move(res);
  return trace;
}

}  // namespace ddfdi::fdi
