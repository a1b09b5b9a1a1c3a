#pragma once

#include <complex>
#include <vector>

#include "lti_model.hpp"

namespace ddfdi::mb {

using Eigen::MatrixXd;
using lti::SystemRealization;
using lti::UioMatrices;
using numkit::Tolerance;

/// One tested point of a rank condition, kept as evidence in the verdicts.
struct RankEvidence {
  std::complex<double> z;
  int rank = 0;
  int expected = 0;
};

/// Outcome of the model-based existence checks. `overall` is the existence
/// condition for an identifying dead-beat residual generator; the first
/// condition (rank CE = r) is implied by the third and kept as evidence.
struct ExistenceVerdict {
  bool cond_1a = false;
  int rank_ce = 0;
  int r = 0;

  bool cond_1b = false;
  std::vector<RankEvidence> pencil_ranks;

  bool cond_prop5 = false;
  int rank_cb_ce = 0;

  bool overall = false;  // cond_1b && cond_prop5
};

/// Existence check for a dead-beat unknown-input residual generator that can
/// uniquely identify actuator faults. The all-z rank condition is tested at
/// the finitely many points where the pencil can drop rank (nonzero
/// eigenvalues of A and of the decoupled state matrix) plus random samples
/// that witness the generic rank.
ExistenceVerdict check_strong_star_reconstructability(const SystemRealization& sys,
                                                      const Tolerance& tol = {});

/// Canonical disturbance decoupler D = E (CE)^+. Guarantees (I - DC)E = 0
/// and rank(D) = r. Throws RankDeficientCE when rank(CE) < r.
MatrixXd solve_disturbance_decoupler(const SystemRealization& sys, const Tolerance& tol = {});

/// Output-injection gain L such that Abar - L C is nilpotent. Requires the
/// pair (Abar, C) to be reconstructable (every nonzero eigenvalue of Abar
/// passes the PBH test); throws NotReconstructable otherwise.
MatrixXd deadbeat_gain(const MatrixXd& Abar, const MatrixXd& C, const Tolerance& tol = {});

/// Full model-based synthesis: decoupler, dead-beat gain, remaining blocks.
/// The returned matrices satisfy the four structural constraints to within
/// abs_zero_tol (scaled by max(1, |A|_max)) and C B_u has full column rank.
UioMatrices synthesize_uio(const SystemRealization& sys, const Tolerance& tol = {});

/// rank([CB CE]) == m + r, the fault-identifiability condition.
bool check_fault_identifiability(const SystemRealization& sys, const Tolerance& tol = {});

/// Residuals of the structural constraints of a candidate residual generator
/// against a reference plant. Entries are max-abs residuals, `scale` is the
/// normalization max(1, |A|_max) used by the synthesis checks.
struct ConstraintReport {
  double res_commutation = 0.0;  // (I-DC)A - A_uio(I-DC) - B_y C
  double res_input = 0.0;        // B_u - (I-DC)B
  double res_decoupling = 0.0;   // (I-DC)E
  double scale = 1.0;
  numkit::NilpotencyResult nilpotency;
  bool cbu_full_column_rank = false;
};

ConstraintReport verify_constraints(const UioMatrices& uio, const SystemRealization& sys,
                                    const Tolerance& tol = {});

/// Rank of the pencil [zI - A, -E; C, 0], the quantity behind the all-z
/// existence condition.
int disturbance_pencil_rank(const SystemRealization& sys, std::complex<double> z,
                            const Tolerance& tol = {});

}  // namespace ddfdi::mb
