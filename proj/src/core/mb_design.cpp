#include "mb_design.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>

#include "rng.hpp"

namespace ddfdi::mb {

namespace {

constexpr std::uint64_t kWitnessSeed = 0x5eed0d13ull;  // fixed: verdicts are deterministic
constexpr int kRandomWitnesses = 8;

std::vector<std::complex<double>> random_nonzero_points(int count, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::complex<double>> zs;
  zs.reserve(count);
  for (int i = 0; i < count; ++i) {
    const double radius = 0.3 + 1.7 * rng.next_double();
    const double angle = 6.283185307179586 * rng.next_double();
    zs.emplace_back(radius * std::cos(angle), radius * std::sin(angle));
  }
  return zs;
}

MatrixXd stack_cb_ce(const SystemRealization& sys) {
  MatrixXd cb_ce(sys.p(), sys.m() + sys.r());
  cb_ce.leftCols(sys.m()) = sys.C * sys.B;
  if (sys.r() > 0) cb_ce.rightCols(sys.r()) = sys.C * sys.E;
  return cb_ce;
}

std::vector<std::complex<double>> nonzero_eigenvalues(const MatrixXd& M, double cutoff) {
  std::vector<std::complex<double>> out;
  if (M.rows() == 0) return out;
  Eigen::EigenSolver<MatrixXd> es(M, /*computeEigenvectors=*/false);
  for (int i = 0; i < es.eigenvalues().size(); ++i) {
    const auto z = es.eigenvalues()(i);
    if (std::abs(z) > cutoff) out.push_back(z);
  }
  return out;
}

// One deflation pass: returns K with F - G K nilpotent, assuming every
// eigenvalue of F that cannot be moved through G already sits at zero.
// Each step creates one zero eigenvalue with a rank-one feedback built from
// a kernel vector of [F -G], then deflates it away with a Householder
// similarity. The kernel combination maximizing the state part is chosen,
// which keeps the per-step feedback norm minimal.
MatrixXd deflate_to_nilpotent(MatrixXd F, MatrixXd G, const Tolerance& tol) {
  using Eigen::VectorXd;
  const int p = static_cast<int>(G.cols());
  const int n0 = static_cast<int>(F.rows());

  std::vector<MatrixXd> householders;  // full-size embeddings
  MatrixXd K = MatrixXd::Zero(p, n0);

  MatrixXd Fw = std::move(F);
  MatrixXd Gw = std::move(G);
  for (int offset = 0; offset < n0; ++offset) {
    const int nu = n0 - offset;

    MatrixXd pencil(nu, nu + p);
    pencil.leftCols(nu) = Fw;
    pencil.rightCols(p) = -Gw;
    MatrixXd Z = numkit::null_space_basis(pencil, tol);
    if (Z.cols() == 0)
      raise(Errc::not_reconstructable, "no deflation direction (pair not reconstructable)");

    // Combination with the largest state component.
    Eigen::JacobiSVD<MatrixXd> svd(Z.topRows(nu), Eigen::ComputeThinV);
    if (svd.singularValues()(0) < 1e-9)
      raise(Errc::not_reconstructable,
            "deflation direction has no state component (pair not reconstructable)");
    VectorXd combo = Z * svd.matrixV().col(0);
    VectorXd x = combo.head(nu);
    VectorXd u = combo.tail(p);
    const double nx = x.norm();
    x /= nx;
    u /= nx;

    // Rank-one step: (Fw - Gw u x') x = 0.
    MatrixXd K_step = u * x.transpose();
    MatrixXd Fstep = Fw - Gw * K_step;

    // Householder mapping x to +-e1.
    VectorXd v = x;
    v(0) += (x(0) >= 0.0 ? 1.0 : -1.0) * 1.0;
    v.normalize();
    MatrixXd H = MatrixXd::Identity(nu, nu) - 2.0 * v * v.transpose();

    MatrixXd Ft = H * Fstep * H.transpose();
    MatrixXd Gt = H * Gw;

    // Record in original coordinates: K += [0 K_next] H (handled by the
    // embedding below), K_step directly.
    MatrixXd K_embed = MatrixXd::Zero(p, n0);
    K_embed.rightCols(nu) = K_step;
    // Undo the accumulated similarities to express K_step in the original
    // basis: columns transform by the product of recorded Householders.
    for (auto it = householders.rbegin(); it != householders.rend(); ++it)
      K_embed = K_embed * (*it);
    K += K_embed;

    MatrixXd H_embed = MatrixXd::Identity(n0, n0);
    H_embed.bottomRightCorner(nu, nu) = H;
    householders.push_back(std::move(H_embed));

    Fw = Ft.bottomRightCorner(nu - 1, nu - 1);
    Gw = Gt.bottomRows(nu - 1);
  }
  return K;
}

double scaled_power_norm(const MatrixXd& M) {
  const int n = static_cast<int>(M.rows());
  if (n == 0) return 0.0;
  MatrixXd P = M;
  for (int k = 1; k < n; ++k) P = P * M;
  return P.cwiseAbs().maxCoeff() / std::max(1.0, M.cwiseAbs().maxCoeff());
}

}  // namespace

int disturbance_pencil_rank(const SystemRealization& sys, std::complex<double> z,
                            const Tolerance& tol) {
  const int n = sys.n(), p = sys.p(), r = sys.r();
  Eigen::MatrixXcd pencil(n + p, n + r);
  pencil.setZero();
  pencil.topLeftCorner(n, n) =
      z * Eigen::MatrixXcd::Identity(n, n) - sys.A.cast<std::complex<double>>();
  pencil.topRightCorner(n, r) = -sys.E.cast<std::complex<double>>();
  pencil.bottomLeftCorner(p, n) = sys.C.cast<std::complex<double>>();
  return numkit::numerical_rank(pencil, tol);
}

ExistenceVerdict check_strong_star_reconstructability(const SystemRealization& sys,
                                                      const Tolerance& tol) {
  const int n = sys.n(), m = sys.m(), r = sys.r();
  ExistenceVerdict v;
  v.r = r;
  v.rank_ce = numkit::numerical_rank(sys.C * sys.E, tol);
  v.cond_1a = (v.rank_ce == r);

  v.rank_cb_ce = numkit::numerical_rank(stack_cb_ce(sys), tol);
  v.cond_prop5 = (v.rank_cb_ce == m + r);

  // Candidate drop points: the pencil can lose rank only at invariant zeros,
  // which are eigenvalues of the decoupled matrix (I - DC)A when a decoupler
  // exists; eigenvalues of A and random witnesses guard the rest.
  const double eig_cutoff = 10.0 * tol.abs_zero_tol;
  std::vector<std::complex<double>> candidates = nonzero_eigenvalues(sys.A, eig_cutoff);
  if (v.cond_1a) {
    const MatrixXd D = sys.E * numkit::pseudo_inverse(sys.C * sys.E, tol);
    const MatrixXd Abar = (MatrixXd::Identity(n, n) - D * sys.C) * sys.A;
    for (const auto& z : nonzero_eigenvalues(Abar, eig_cutoff)) candidates.push_back(z);
  }
  for (const auto& z : random_nonzero_points(kRandomWitnesses, kWitnessSeed))
    candidates.push_back(z);

  v.cond_1b = true;
  for (const auto& z : candidates) {
    const int rank = disturbance_pencil_rank(sys, z, tol);
    v.pencil_ranks.push_back({z, rank, n + r});
    if (rank != n + r) v.cond_1b = false;
  }

  v.overall = v.cond_1b && v.cond_prop5;
  return v;
}

MatrixXd solve_disturbance_decoupler(const SystemRealization& sys, const Tolerance& tol) {
  const int n = sys.n(), p = sys.p(), r = sys.r();
  if (r == 0) return MatrixXd::Zero(n, p);
  const MatrixXd CE = sys.C * sys.E;
  if (numkit::numerical_rank(CE, tol) != r)
    raise(Errc::rank_deficient_ce, "rank(CE) < r, no disturbance decoupler exists");
  MatrixXd D = sys.E * numkit::pseudo_inverse(CE, tol);
  if (numkit::numerical_rank(D, tol) != r)
    raise(Errc::guarantee_violated, "canonical decoupler lost rank numerically");
  return D;
}

MatrixXd deadbeat_gain(const MatrixXd& Abar, const MatrixXd& C, const Tolerance& tol) {
  const int n = static_cast<int>(Abar.rows());
  if (Abar.cols() != n || C.cols() != n)
    raise(Errc::dimension_mismatch, "deadbeat_gain: inconsistent dimensions");

  for (const auto& z : nonzero_eigenvalues(Abar, 10.0 * tol.abs_zero_tol)) {
    if (numkit::pbh_rank_at(Abar, C, z, tol) != n)
      raise(Errc::not_reconstructable, "nonzero eigenvalue fails the PBH test");
  }

  // Dual problem: K with Abar' - C' K nilpotent, then L = K'. Retries rotate
  // the basis, which changes the greedy deflation path; the best candidate by
  // scaled power norm wins.
  MatrixXd best_L;
  double best_norm = std::numeric_limits<double>::infinity();
  for (int attempt = 0; attempt < 4; ++attempt) {
    MatrixXd Q = MatrixXd::Identity(n, n);
    if (attempt > 0) {
      Rng rng(0x9d2c5680ull + attempt);
      MatrixXd Grand(n, n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) Grand(i, j) = rng.normal();
      Q = Eigen::HouseholderQR<MatrixXd>(Grand).householderQ();
    }
    MatrixXd At = Q.transpose() * Abar * Q;
    MatrixXd Ct = C * Q;
    MatrixXd L;
    try {
      L = Q * deflate_to_nilpotent(At.transpose(), Ct.transpose(), tol).transpose();
    } catch (const Error&) {
      if (attempt == 3 && !std::isfinite(best_norm)) throw;
      continue;
    }
    const double norm = scaled_power_norm(Abar - L * C);
    if (norm < best_norm) {
      best_norm = norm;
      best_L = std::move(L);
    }
    if (best_norm < tol.abs_zero_tol) break;
  }
  if (!std::isfinite(best_norm))
    raise(Errc::not_reconstructable, "deflation failed on every attempt");
  return best_L;
}

ConstraintReport verify_constraints(const UioMatrices& uio, const SystemRealization& sys,
                                    const Tolerance& tol) {
  const int n = sys.n();
  const MatrixXd I = MatrixXd::Identity(n, n);
  const MatrixXd IDC = I - uio.D_uio * sys.C;

  ConstraintReport rep;
  rep.scale = std::max(1.0, sys.A.cwiseAbs().maxCoeff());
  rep.res_commutation =
      (IDC * sys.A - uio.A_uio * IDC - uio.B_y * sys.C).cwiseAbs().maxCoeff();
  rep.res_input = (uio.B_u - IDC * sys.B).cwiseAbs().maxCoeff();
  rep.res_decoupling = sys.r() > 0 ? (IDC * sys.E).cwiseAbs().maxCoeff() : 0.0;

  // Nilpotency is checked at the same normalization as the other residuals.
  Tolerance power_tol = tol;
  power_tol.abs_zero_tol = tol.abs_zero_tol * std::max(1.0, uio.A_uio.cwiseAbs().maxCoeff());
  rep.nilpotency = numkit::is_nilpotent(uio.A_uio, power_tol);
  rep.cbu_full_column_rank = numkit::numerical_rank(sys.C * uio.B_u, tol) == uio.m();
  return rep;
}

UioMatrices synthesize_uio(const SystemRealization& sys, const Tolerance& tol) {
  const auto verdict = check_strong_star_reconstructability(sys, tol);
  if (!verdict.overall) {
    if (!verdict.cond_1a)
      raise(Errc::rank_deficient_ce, "rank(CE) < r, no dead-beat estimator exists");
    if (!verdict.cond_1b)
      raise(Errc::not_reconstructable, "disturbance pencil drops rank at a nonzero point");
    raise(Errc::solvability_failed, "rank([CB CE]) < m + r, faults are not identifiable");
  }

  const int n = sys.n();
  const MatrixXd D = solve_disturbance_decoupler(sys, tol);
  const MatrixXd IDC = MatrixXd::Identity(n, n) - D * sys.C;
  const MatrixXd Abar = IDC * sys.A;
  const MatrixXd L = deadbeat_gain(Abar, sys.C, tol);

  UioMatrices uio;
  uio.A_uio = Abar - L * sys.C;
  uio.B_u = IDC * sys.B;
  uio.B_y = L + uio.A_uio * D;
  uio.D_uio = D;
  uio.C = sys.C;

  const auto rep = verify_constraints(uio, sys, tol);
  const double worst =
      std::max({rep.res_commutation, rep.res_input, rep.res_decoupling});
  if (worst > tol.abs_zero_tol * rep.scale)
    raise(Errc::guarantee_violated, "synthesized matrices violate the structural constraints");
  if (!rep.nilpotency.nilpotent)
    raise(Errc::guarantee_violated, "synthesized state matrix failed the nilpotency check");
  if (!rep.cbu_full_column_rank)
    raise(Errc::guarantee_violated, "C B_u lost full column rank numerically");
  return uio;
}

bool check_fault_identifiability(const SystemRealization& sys, const Tolerance& tol) {
  return numkit::numerical_rank(stack_cb_ce(sys), tol) == sys.m() + sys.r();
}

}  // namespace ddfdi::mb
