#pragma once

#include <Eigen/Dense>

namespace procova {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Reciprocal-condition threshold shared by the rank-deficiency and
/// singularity checks.
inline constexpr double kMinReciprocalCondition = 1e-12;

/// sigma_min / sigma_max of a (not necessarily square) matrix; 0 for an
/// empty or all-zero matrix.
double reciprocal_condition(const Matrix& m);

/// Least-squares coefficients via Householder QR.
///
/// Throws RankDeficient when rows < cols or when the reciprocal condition
/// number of the triangular factor falls below kMinReciprocalCondition.
/// Throws DimensionMismatch when response length differs from design rows.
Vector solve_least_squares(const Matrix& design, const Vector& response);

/// Inverse of a square matrix. Throws Singular below the conditioning
/// threshold and DimensionMismatch for non-square input.
Matrix invert(const Matrix& m);

/// e' m e.
double quadratic_form(const Vector& e, const Matrix& m);

/// (m + m') / 2.
Matrix symmetrize(const Matrix& m);

bool all_finite(const Matrix& m);

}  // namespace procova
