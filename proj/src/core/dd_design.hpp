#pragma once

#include <utility>
#include <vector>

#include "mb_design.hpp"

namespace ddfdi::dd {

using Eigen::MatrixXd;
using lti::SignalTrace;
using lti::UioMatrices;
using mb::RankEvidence;
using numkit::Tolerance;

/// The five historical data blocks sliced from one fault-free recorded
/// trajectory. All blocks have T-1 columns; X_f/Y_f are the one-step shifts
/// of X_p/Y_p against the same trace.
struct DataMatrices {
  MatrixXd U_p;  // m x (T-1)
  MatrixXd X_p;  // n x (T-1)
  MatrixXd Y_p;  // p x (T-1)
  MatrixXd X_f;  // n x (T-1)
  MatrixXd Y_f;  // p x (T-1)
  int T = 0;
  int r_claimed = 0;

  int m() const { return static_cast<int>(U_p.rows()); }
  int n() const { return static_cast<int>(X_p.rows()); }
  int p() const { return static_cast<int>(Y_p.rows()); }

  /// max(1, largest |entry| across the blocks); normalization for the
  /// post-hoc identity checks.
  double scale() const;
};

/// Data-driven solvability verdict. `richness_ok` is the data-visible proxy
/// for the excitation assumption: the disturbance-dimension formula must
/// return r_claimed and [U_p; X_p] must have full row rank.
struct DdSolvabilityReport {
  bool cond_iia = false;
  std::vector<RankEvidence> iia_ranks;
  bool tier2_available = false;  // candidate drop points were testable

  bool cond_iib = false;
  int rank_xp_yf = 0;

  bool richness_ok = false;
  int rank_up_xp = 0;
  int rank_up_xp_xf = 0;

  bool overall = false;  // cond_iia && cond_iib && richness_ok
};

/// Everything produced along the way by the design procedure, kept for
/// diagnostics and for the invariants the tests check.
struct AlgorithmOneTrace {
  MatrixXd S;                      // (T-1) x (T-1) column compression
  MatrixXd Y_B, Y_E, Y_A;          // p x m, p x (T-1-m-n), p x n
  MatrixXd X_B, X_E, X_A;          // n x m, n x (T-1-m-n), n x n
  MatrixXd T1, T3, T4;             // candidate solution (T3 before output injection)
  MatrixXd L;                      // dead-beat gain
  MatrixXd C_hat;                  // identified output matrix

  double eq17_residual = 0.0;      // block-pattern defect of [U_p; X_p] S
  double t4_residual = 0.0;        // ||X_E - T4 Y_E||_max
  double eq14_residual = 0.0;      // defect of the four-block data identity
  int t4_rank = 0;
  numkit::NilpotencyResult nilpotency;
};

/// Slice the five data blocks out of a recorded trace. The trace must be
/// fault-free and long enough (T >= m + n + r_claimed + 2).
DataMatrices build_data_matrices(const SignalTrace& trace, int r_claimed,
                                 const Tolerance& tol = {});

/// Disturbance-dimension estimate: max over datasets of
/// rank([U_p; X_p; X_f]) - (n + m), clamped at zero.
int estimate_disturbance_dim(const std::vector<DataMatrices>& datasets,
                             const Tolerance& tol = {});

DdSolvabilityReport check_dd_solvability(const DataMatrices& dm, const Tolerance& tol = {});

/// Column compression: S = [S1 | S2 | S3] built from the pseudo-inverse of
/// [U_p; X_p] and an orthonormal basis of its kernel, so that the stacked
/// data take the block form the solution step reads off. Returns a partial
/// trace holding S and the six blocks.
AlgorithmOneTrace compress_columns(const DataMatrices& dm, const Tolerance& tol = {});

/// Minimum-norm solution of X_E = T4 Y_E, which is rank r by construction of
/// the blocks; both facts are verified numerically.
MatrixXd solve_t4(const MatrixXd& X_E, const MatrixXd& Y_E, int r, const Tolerance& tol = {},
                  double scale = 1.0);

/// The full data-driven design: solvability check, column compression,
/// candidate solution, dead-beat gain, assembled residual generator.
std::pair<UioMatrices, AlgorithmOneTrace> run_algorithm_one(const DataMatrices& dm,
                                                            const Tolerance& tol = {});

}  // namespace ddfdi::dd
