#pragma once

#include <Eigen/Dense>

#include "randteam/errors.hpp"

namespace randteam {

using Eigen::MatrixXd;
using Eigen::RowVectorXd;
using Eigen::VectorXd;

/// Solves A x = b by Gaussian elimination with partial pivoting.
/// A pivot is treated as zero when |pivot| <= 1e-12 * max|A_ij|.
VectorXd solve_linear(MatrixXd a, VectorXd b);

bool is_symmetric(const MatrixXd& a, double tol = 1e-10);

/// Eigenvalues of a symmetric matrix, ascending.
VectorXd sym_eigenvalues(const MatrixXd& a);

double min_eigenvalue(const MatrixXd& a);

/// Symmetric PSD square root L (A = L L^T, L symmetric) via eigendecomposition.
/// Eigenvalues in [-1e-8, 0) get jitter 1e-12 on the diagonal first; smaller
/// ones are an error.
MatrixXd sym_sqrt_psd(const MatrixXd& a);

/// Requires symmetry within `sym_tol` and min eigenvalue >= -`psd_tol`.
void require_covariance(const MatrixXd& a, const char* name,
                        double sym_tol = 1e-10, double psd_tol = 1e-8);

}  // namespace randteam
