#pragma once

#include <Eigen/Dense>
#include <string>
#include <utility>

#include "numkit.hpp"

namespace ddfdi::lti {

using Eigen::MatrixXd;
using Eigen::VectorXd;
using numkit::Tolerance;

/// Ground-truth plant
///   x(k+1) = A x(k) + B u(k) + E d(k) + B f(k)
///   y(k)   = C x(k)
/// with the disturbance matrix E of full column rank. Inside this project it
/// only plays the role of simulator and oracle: the data-driven design path
/// never reads A, B or E.
struct SystemRealization {
  MatrixXd A;  // n x n
  MatrixXd B;  // n x m
  MatrixXd C;  // p x n
  MatrixXd E;  // n x r

  int n() const { return static_cast<int>(A.rows()); }
  int m() const { return static_cast<int>(B.cols()); }
  int p() const { return static_cast<int>(C.rows()); }
  int r() const { return static_cast<int>(E.cols()); }

  static SystemRealization create(MatrixXd A, MatrixXd B, MatrixXd C, MatrixXd E,
                                  const Tolerance& tol = {});
};

/// Residual generator
///   z(k+1) = A_uio z(k) + B_u u(k) + B_y y(k)
///   xhat(k) = z(k) + D_uio y(k)
///   res(k)  = y(k) - C xhat(k)
struct UioMatrices {
  MatrixXd A_uio;  // n x n
  MatrixXd B_u;    // n x m
  MatrixXd B_y;    // n x p
  MatrixXd D_uio;  // n x p
  MatrixXd C;      // p x n

  int n() const { return static_cast<int>(A_uio.rows()); }
  int m() const { return static_cast<int>(B_u.cols()); }
  int p() const { return static_cast<int>(C.rows()); }

  static UioMatrices create(MatrixXd A_uio, MatrixXd B_u, MatrixXd B_y, MatrixXd D_uio,
                            MatrixXd C);
};

/// One recorded run over a horizon T. States and outputs carry T samples
/// (indices 0..T-1); inputs, disturbances and faults carry T-1 samples
/// (indices 0..T-2), matching the plant's update indexing. Signals are
/// stored one sample per column.
struct SignalTrace {
  MatrixXd u;  // m x (T-1)
  MatrixXd d;  // r x (T-1)
  MatrixXd f;  // m x (T-1)
  MatrixXd x;  // n x T
  MatrixXd y;  // p x T
  int T = 0;

  int n() const { return static_cast<int>(x.rows()); }
  int m() const { return static_cast<int>(u.rows()); }
  int p() const { return static_cast<int>(y.rows()); }
  int r() const { return static_cast<int>(d.rows()); }
};

/// Window of N consecutive samples of a signal, concatenated in ascending
/// time order into one column vector.
struct StackedVector {
  std::string signal;
  int start = 0;
  int depth = 0;
  VectorXd value;
};

/// Simulate the plant for T steps from x0. Sequences are one sample per
/// column and must provide at least T-1 samples; d and f may be passed empty
/// (0 columns), meaning identically zero.
SignalTrace simulate_plant(const SystemRealization& sys, const VectorXd& x0, const MatrixXd& u,
                           const MatrixXd& d, const MatrixXd& f, int T);

/// Drive the residual generator with recorded u (m x (T-1)) and y (p x T).
/// Returns the state estimates (n x T) and residuals (p x T).
std::pair<MatrixXd, MatrixXd> run_residual_generator(const UioMatrices& uio, const VectorXd& z0,
                                                     const MatrixXd& u, const MatrixXd& y);

/// z0 = 0 overload; the dead-beat property makes the choice immaterial after
/// the settling index.
std::pair<MatrixXd, MatrixXd> run_residual_generator(const UioMatrices& uio, const MatrixXd& u,
                                                     const MatrixXd& y);

StackedVector stack(const MatrixXd& signal, const std::string& name, int k, int N);

/// Pointwise x(k) - xhat(k).
MatrixXd estimation_error(const SignalTrace& trace, const MatrixXd& xhat);

}  // namespace ddfdi::lti
