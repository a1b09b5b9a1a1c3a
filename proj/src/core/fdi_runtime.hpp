#pragma once

#include <optional>

#include "lti_model.hpp"

namespace ddfdi::fdi {

using Eigen::MatrixXd;
using Eigen::VectorXd;
using lti::StackedVector;
using lti::UioMatrices;
using numkit::Tolerance;

/// Block lower-triangular Toeplitz stack of the residual generator's Markov
/// parameters: block (i, j), i >= j, equals C A_uio^(i-j) B_u. Maps a window
/// of stacked faults to the following window of stacked residuals.
struct MarkovStack {
  int N = 0;
  MatrixXd M;  // (N p) x (N m)
};

MarkovStack build_markov_stack(const UioMatrices& uio, int N);

/// Windowed least-squares fault estimate from a stacked residual window of
/// depth N. Exact when the residuals contain no estimation-error transient.
VectorXd identify_fault_window(const MarkovStack& stack, const StackedVector& r_window,
                               const Tolerance& tol = {});

/// One-step recursive fault estimator. Feed residuals in time order; after
/// the internal error estimate is aligned (zero start state, fault-free
/// history), each step returns the exact fault of the previous instant.
class RecursiveFaultEstimator {
 public:
  RecursiveFaultEstimator(const UioMatrices& uio, const Tolerance& tol = {});

  /// Consume r(k+1); returns the estimate of f(k).
  VectorXd step(const VectorXd& next_residual);

  void reset();

 private:
  MatrixXd A_uio_, B_u_, C_;
  MatrixXd cbu_pinv_;
  VectorXd ehat_;
};

/// Run the recursive estimator over a residual matrix (one sample per
/// column) starting at k_start. Returns an m x (T-1) matrix whose column k
/// holds the estimate of f(k); columns before k_start are zero.
MatrixXd identify_fault_recursive(const UioMatrices& uio, const MatrixXd& residuals, int k_start,
                                  const Tolerance& tol = {});

/// First index with ||r(k)||_2 > threshold, or nullopt.
std::optional<int> detect(const MatrixXd& residuals, double threshold);

/// Result of one monitoring run: residual stream, threshold crossing, and
/// the fault estimates from k_id on.
struct FaultTrace {
  MatrixXd residuals;                 // p x T
  std::optional<int> detection_time;  // K*, first threshold crossing
  MatrixXd estimates;                 // m x (T-1), columns < k_id are zero
  int k_id = 0;
  double threshold = 0.0;
};

/// Drive the residual generator over recorded (u, y), detect, and estimate.
FaultTrace monitor(const UioMatrices& uio, const MatrixXd& u, const MatrixXd& y,
                   const VectorXd& z0, int k_id, double threshold, const Tolerance& tol = {});

}  // namespace ddfdi::fdi
