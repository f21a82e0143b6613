#pragma once

#include "loreg/matrix.hpp"

namespace loreg {

struct SdarConfig {
  int t = 1;          // active-set size; 1 <= t <= number of predictors
  int max_iter = 50;
};

struct SdarResult {
  Vector beta;      // length p_pred, zero outside active
  IndexSet active;  // |active| == t, ascending
  Vector dual;      // d at termination, zero on active
  int iterations = 0;
  bool converged = false;
};

/// Indices of the t largest |values|; ties prefer the lower index.
IndexSet top_t_indices(const Vector& values, int t);

/// Support-detection / root-finding iteration for L0-penalized least squares.
/// Requires sqrt(n)-normalized columns of z. Stops when the active set is a
/// fixed point; a cycle or the iteration cap returns the smallest-RSS iterate
/// with converged = false.
SdarResult sdar_fit(const Vector& y, const Matrix& z, const SdarConfig& cfg);

/// Fixed-point violation of a result: max over (restricted OLS gap on the
/// active set, dual mismatch off the active set, 0 or +inf for the top-t
/// selection identity).
double kkt_residual(const SdarResult& r, const Vector& y, const Matrix& z);

}  // namespace loreg
