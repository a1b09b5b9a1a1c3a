#include "lti_model.hpp"

namespace ddfdi::lti {

SystemRealization SystemRealization::create(MatrixXd A, MatrixXd B, MatrixXd C, MatrixXd E,
                                            const Tolerance& tol) {
  const auto n = A.rows();
  if (A.cols() != n) raise(Errc::dimension_mismatch, "A must be square");
  if (B.rows() != n) raise(Errc::dimension_mismatch, "B must have n rows");
  if (C.cols() != n) raise(Errc::dimension_mismatch, "C must have n columns");
  if (E.rows() != n) raise(Errc::dimension_mismatch, "E must have n rows");
  if (B.cols() < 1) raise(Errc::invalid_argument, "need at least one input channel");
  if (C.rows() < 1) raise(Errc::invalid_argument, "need at least one output channel");
  if (numkit::numerical_rank(E, tol) != E.cols())
    raise(Errc::invalid_argument, "E must have full column rank r");
  return SystemRealization{std::move(A), std::move(B), std::move(C), std::move(E)};
}

UioMatrices UioMatrices::create(MatrixXd A_uio, MatrixXd B_u, MatrixXd B_y, MatrixXd D_uio,
                                MatrixXd C) {
  const auto n = A_uio.rows();
  const auto p = C.rows();
  if (A_uio.cols() != n) raise(Errc::dimension_mismatch, "A_uio must be square");
  if (B_u.rows() != n) raise(Errc::dimension_mismatch, "B_u must have n rows");
  if (B_y.rows() != n || B_y.cols() != p)
    raise(Errc::dimension_mismatch, "B_y must be n x p");
  if (D_uio.rows() != n || D_uio.cols() != p)
    raise(Errc::dimension_mismatch, "D_uio must be n x p");
  if (C.cols() != n) raise(Errc::dimension_mismatch, "C must have n columns");
  return UioMatrices{std::move(A_uio), std::move(B_u), std::move(B_y), std::move(D_uio),
                     std::move(C)};
}

SignalTrace simulate_plant(const SystemRealization& sys, const VectorXd& x0, const MatrixXd& u,
                           const MatrixXd& d, const MatrixXd& f, int T) {
  const int n = sys.n(), m = sys.m(), p = sys.p(), r = sys.r();
  if (T < 1) raise(Errc::invalid_argument, "horizon T must be >= 1");
  if (x0.size() != n) raise(Errc::dimension_mismatch, "x0 must have length n");

  // Empty d/f mean identically zero; nominal data collection is fault-free.
  MatrixXd dd = d.size() == 0 ? MatrixXd::Zero(r, T - 1) : d;
  MatrixXd ff = f.size() == 0 ? MatrixXd::Zero(m, T - 1) : f;
  if (u.rows() != m || dd.rows() != r || ff.rows() != m)
    raise(Errc::dimension_mismatch, "signal row counts must match system dimensions");
  if (u.cols() < T - 1 || dd.cols() < T - 1 || ff.cols() < T - 1)
    raise(Errc::dimension_mismatch, "signals must provide at least T-1 samples");

  SignalTrace trace;
  trace.T = T;
  trace.u = u.leftCols(T - 1);
  trace.d = dd.leftCols(T - 1);
  trace.f = ff.leftCols(T - 1);
  trace.x.resize(n, T);
  trace.y.resize(p, T);

  trace.x.col(0) = x0;
  for (int k = 0; k + 1 < T; ++k) {
    trace.x.col(k + 1) = sys.A * trace.x.col(k) + sys.B * trace.u.col(k) +
                         sys.E * trace.d.col(k) + sys.B * trace.f.col(k);
  }
  trace.y = sys.C * trace.x;
  return trace;
}

std::pair<MatrixXd, MatrixXd> run_residual_generator(const UioMatrices& uio, const VectorXd& z0,
                                                     const MatrixXd& u, const MatrixXd& y) {
  const int n = uio.n(), m = uio.m(), p = uio.p();
  const int T = static_cast<int>(y.cols());
  if (y.rows() != p) raise(Errc::dimension_mismatch, "y must have p rows");
  if (u.rows() != m || u.cols() < T - 1)
    raise(Errc::dimension_mismatch, "u must be m x (T-1) at least");
  if (z0.size() != n) raise(Errc::dimension_mismatch, "z0 must have length n");

  MatrixXd xhat(n, T), res(p, T);
  VectorXd z = z0;
  for (int k = 0; k < T; ++k) {
    xhat.col(k) = z + uio.D_uio * y.col(k);
    res.col(k) = y.col(k) - uio.C * xhat.col(k);
    if (k + 1 < T) z = uio.A_uio * z + uio.B_u * u.col(k) + uio.B_y * y.col(k);
  }
  return {std::move(xhat), std::move(res)};
}

std::pair<MatrixXd, MatrixXd> run_residual_generator(const UioMatrices& uio, const MatrixXd& u,
                                                     const MatrixXd& y) {
  return run_residual_generator(uio, VectorXd::Zero(uio.n()), u, y);
}

StackedVector stack(const MatrixXd& signal, const std::string& name, int k, int N) {
  if (N < 1) raise(Errc::invalid_argument, "stack depth N must be >= 1");
  if (k < 0 || k + N > signal.cols())
    raise(Errc::out_of_range, "stack window [k, k+N-1] exceeds signal range");
  StackedVector out;
  out.signal = name;
  out.start = k;
  out.depth = N;
  out.value.resize(signal.rows() * N);
  for (int i = 0; i < N; ++i) out.value.segment(i * signal.rows(), signal.rows()) = signal.col(k + i);
  return out;
}

MatrixXd estimation_error(const SignalTrace& trace, const MatrixXd& xhat) {
  if (xhat.rows() != trace.x.rows() || xhat.cols() != trace.x.cols())
    raise(Errc::dimension_mismatch, "xhat must match the trace state dimensions");
  return trace.x - xhat;
}

}  // namespace ddfdi::lti
