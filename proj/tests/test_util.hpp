#pragma once

#include <cmath>

#include "loreg/matrix.hpp"
#include "loreg/rng.hpp"

namespace loreg::testutil {

inline Matrix random_matrix(int rows, int cols, CounterRng& rng) {
  Matrix m(rows, cols);
  for (double& v : m.data()) v = rng.next_normal();
  return m;
}

// G^T G / n + ridge * I: SPD with probability one.
inline Matrix random_spd(int p, CounterRng& rng, double ridge = 0.5) {
  const int n = p + 4;
  Matrix g = random_matrix(n, p, rng);
  Matrix s(p, p);
  for (int i = 0; i < p; ++i)
    for (int j = i; j < p; ++j) {
      double acc = 0.0;
      for (int k = 0; k < n; ++k) acc += g(k, i) * g(k, j);
      s(i, j) = s(j, i) = acc / n;
    }
  for (int i = 0; i < p; ++i) s(i, i) += ridge;
  return s;
}

// Modified Gram-Schmidt, then rescale columns to norm sqrt(n): an exactly
// orthogonal sqrt(n)-normalized design (requires n >= p).
inline Matrix orthogonal_design(int n, int p, CounterRng& rng) {
  Matrix z = random_matrix(n, p, rng);
  for (int j = 0; j < p; ++j) {
    for (int k = 0; k < j; ++k) {
      double proj = 0.0;
      for (int i = 0; i < n; ++i) proj += z(i, j) * z(i, k);
      for (int i = 0; i < n; ++i) z(i, j) -= proj * z(i, k);
    }
    double norm = 0.0;
    for (int i = 0; i < n; ++i) norm += z(i, j) * z(i, j);
    norm = std::sqrt(norm);
    for (int i = 0; i < n; ++i) z(i, j) /= norm;
  }
  const double root_n = std::sqrt(static_cast<double>(n));
  for (double& v : z.data()) v *= root_n;
  return z;
}

// Rescale columns of a random matrix to norm sqrt(n).
inline Matrix normalized_design(int n, int p, CounterRng& rng) {
  Matrix z = random_matrix(n, p, rng);
  const double root_n = std::sqrt(static_cast<double>(n));
  for (int j = 0; j < p; ++j) {
    double norm = 0.0;
    for (int i = 0; i < n; ++i) norm += z(i, j) * z(i, j);
    norm = std::sqrt(norm);
    for (int i = 0; i < n; ++i) z(i, j) *= root_n / norm;
  }
  return z;
}

}  // namespace loreg::testutil
