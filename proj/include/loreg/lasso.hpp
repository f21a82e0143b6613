#pragma once

#include "loreg/matrix.hpp"

namespace loreg {

struct LassoConfig {
  double lambda = 0.0;
  double tol = 1e-7;      // convergence threshold on max coefficient change
  int max_sweeps = 10000;
};

struct LassoResult {
  Vector alpha;
  int sweeps = 0;
  bool max_sweeps_exceeded = false;  // best iterate is still returned
};

/// Cyclic coordinate descent for min ||y - Z a||^2/n + 2*lambda*||a||_1 on a
/// sqrt(n)-normalized design. Coordinates are visited in order 0..p-1.
LassoResult lasso_cd(const Vector& y, const Matrix& z, const LassoConfig& cfg);

/// ||y - Z_raw a||^2/n + lambda*||a||_1 on the unstandardized design.
/// Throws NonPositiveVariance when the value degenerates to ~0.
double lasso_sigma2(const Vector& y, const Matrix& z_raw, const Vector& alpha, double lambda);

/// The paper-scale grid: `count` logarithmically spaced values on [lo, hi].
std::vector<double> log_spaced_grid(double lo, double hi, int count);

}  // namespace loreg
