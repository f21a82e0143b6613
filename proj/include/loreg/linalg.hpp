#pragma once

#include <utility>

#include "loreg/matrix.hpp"

namespace loreg {

// Dense kernels for the p <= 400 scales this library targets; all O(p^3) or
// cheaper, no external dependencies. Inputs are immutable, outputs are values.

/// Lower-triangular L with L L^T = m. Pivot floor: 1e-12 x max diagonal.
Matrix cholesky(const Matrix& m);

/// Inverse of an SPD matrix via its Cholesky factor.
Matrix spd_inverse(const Matrix& m);

/// Solves m X = b for SPD m.
Matrix solve_spd(const Matrix& m, const Matrix& b);
Vector solve_spd_vec(const Matrix& m, const Vector& b);

/// Full symmetric eigendecomposition by cyclic Jacobi rotations.
/// vectors holds eigenvectors as columns; m = V diag(values) V^T.
struct EigenSym {
  Vector values;   // ascending
  Matrix vectors;
};
EigenSym eigen_sym(const Matrix& m);

std::pair<double, double> symmetric_eigen_extremes(const Matrix& m);

/// ||m||_2 = sqrt(lambda_max(m^T m)); valid for any rectangular m.
double spectral_norm(const Matrix& m);

/// Symmetric R with R R = m^{-1}.
Matrix spd_inverse_sqrt(const Matrix& m);

/// X^T X / n over the rows of x.
Matrix sample_covariance(const Matrix& x);

}  // namespace loreg
