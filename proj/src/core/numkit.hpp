#pragma once

#include <Eigen/Dense>
#include <complex>
#include <optional>

#include "errors.hpp"

namespace ddfdi::numkit {

using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXd;

/// Tolerance policy shared by every rank/zero decision in the library.
///
/// Rank decisions are relative to the largest singular value, so they are
/// invariant under uniform scaling of the data. "Is this matrix zero" checks
/// are absolute, because the quantities involved (constraint residuals,
/// matrix powers) are meaningful on an absolute scale.
struct Tolerance {
  double rel_rank_tol = 1e-9;
  double abs_zero_tol = 1e-8;

  void validate() const {
    if (!(rel_rank_tol > 0.0) || !(abs_zero_tol > 0.0))
      raise(Errc::invalid_argument, "tolerances must be strictly positive");
    if (!(rel_rank_tol < 1.0))
      raise(Errc::invalid_argument, "rel_rank_tol must be < 1");
  }
};

/// Count of singular values above rel_rank_tol * sigma_max. Zero matrix has
/// rank 0. Empty matrices (a zero dimension) have rank 0 as well.
int numerical_rank(const MatrixXd& M, const Tolerance& tol = {});
int numerical_rank(const MatrixXcd& M, const Tolerance& tol = {});

/// Moore-Penrose inverse via SVD, truncating singular values below
/// rel_rank_tol * sigma_max. Satisfies the four Penrose identities to within
/// abs_zero_tol for well-scaled input; pseudo_inverse of the zero matrix is
/// the zero matrix of transposed shape.
MatrixXd pseudo_inverse(const MatrixXd& M, const Tolerance& tol = {});

/// Orthonormal basis of the (right) kernel of M, one column per kernel
/// dimension. M * basis vanishes entrywise and basis' * basis = I. The
/// column count is cols(M) - numerical_rank(M).
MatrixXd null_space_basis(const MatrixXd& M, const Tolerance& tol = {});

struct NilpotencyResult {
  bool nilpotent = false;
  std::optional<int> index;  // least k with ||M^k||_max < abs_zero_tol
};

/// Verdict by explicit powers M, M^2, ..., M^n. Eigenvalues are not trusted
/// here: the power criterion is exactly the dead-beat contract the rest of
/// the library relies on.
NilpotencyResult is_nilpotent(const MatrixXd& M, const Tolerance& tol = {});

/// Rank of the PBH observability matrix [zI - Apart; Cpart] at a complex z.
int pbh_rank_at(const MatrixXd& Apart, const MatrixXd& Cpart, std::complex<double> z,
                const Tolerance& tol = {});

/// Singular values of M (descending). Internal helper shared by the rank and
/// pseudo-inverse routines; exposed for diagnostics.
VectorXd singular_values(const MatrixXd& M);
VectorXd singular_values(const MatrixXcd& M);

}  // namespace ddfdi::numkit
