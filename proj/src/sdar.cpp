#include "loreg/sdar.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "loreg/linalg.hpp"

namespace loreg {

namespace {

void check_normalized(const Matrix& z) {
  const double root_n = std::sqrt(static_cast<double>(z.rows()));
  for (int j = 0; j < z.cols(); ++j) {
    double s = 0.0;
    for (int k = 0; k < z.rows(); ++k) s += z(k, j) * z(k, j);
    const double norm = std::sqrt(s);
    if (std::fabs(norm - root_n) > 1e-6 * root_n)
      throw NotNormalized("column " + std::to_string(j) + " has norm " + std::to_string(norm) +
                          ", expected sqrt(n) = " + std::to_string(root_n));
  }
}

// Solves the least squares restricted to `active`; throws SingularActiveGram
// when the Gram submatrix fails the Cholesky pivot floor.
Vector restricted_ols(const Vector& y, const Matrix& z, const IndexSet& active) {
  const int t = static_cast<int>(active.size());
  const int n = z.rows();
  Matrix gram(t, t);
  Vector rhs(t, 0.0);
  Vector row(t);
  for (int k = 0; k < n; ++k) {
    const double* zk = z.row_ptr(k);
    for (int a = 0; a < t; ++a) row[a] = zk[active[a]];
    for (int a = 0; a < t; ++a) {
      rhs[a] += row[a] * y[k];
      double* ga = gram.row_ptr(a);
      for (int b = a; b < t; ++b) ga[b] += row[a] * row[b];
    }
  }
  for (int a = 0; a < t; ++a)
    for (int b = 0; b < a; ++b) gram(a, b) = gram(b, a);
  try {
    return solve_spd_vec(gram, rhs);
  } catch (const NotPositiveDefinite& e) {
    throw SingularActiveGram(std::string("active Gram matrix is numerically singular: ") + e.what());
  }
}

Vector residual_on_active(const Vector& y, const Matrix& z, const IndexSet& active,
                          const Vector& beta_active) {
  Vector r = y;
  const int t = static_cast<int>(active.size());
  for (int k = 0; k < z.rows(); ++k) {
    const double* zk = z.row_ptr(k);
    double s = 0.0;
    for (int a = 0; a < t; ++a) s += zk[active[a]] * beta_active[a];
    r[k] -= s;
  }
  return r;
}

Vector dual_from_residual(const Matrix& z, const Vector& r, const IndexSet& active) {
  const int p = z.cols();
  Vector d(p, 0.0);
  for (int k = 0; k < z.rows(); ++k) {
    const double* zk = z.row_ptr(k);
    const double rk = r[k];
    if (rk == 0.0) continue;
    for (int j = 0; j < p; ++j) d[j] += zk[j] * rk;
  }
  const double inv_n = 1.0 / z.rows();
  for (int j = 0; j < p; ++j) d[j] *= inv_n;
  for (int a : active) d[a] = 0.0;
  return d;
}

double sum_sq(const Vector& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return s;
}

}  // namespace

IndexSet top_t_indices(const Vector& values, int t) {
  const int p = static_cast<int>(values.size());
  std::vector<int> idx(p);
  std::iota(idx.begin(), idx.end(), 0);
  auto by_magnitude = [&](int a, int b) {
    const double fa = std::fabs(values[a]), fb = std::fabs(values[b]);
    if (fa != fb) return fa > fb;
    return a < b;
  };
  std::nth_element(idx.begin(), idx.begin() + (t - 1), idx.end(), by_magnitude);
  IndexSet out(idx.begin(), idx.begin() + t);
  std::sort(out.begin(), out.end());
  return out;
}

SdarResult sdar_fit(const Vector& y, const Matrix& z, const SdarConfig& cfg) {
  const int n = z.rows();
  const int p = z.cols();
  if (static_cast<int>(y.size()) != n) throw DimensionMismatch("sdar_fit: y length != rows of z");
  if (cfg.t < 1 || cfg.t > p) throw ValidationError("sdar_fit: t must be in [1, p]");
  if (cfg.max_iter < 1) throw ValidationError("sdar_fit: max_iter must be >= 1");
  check_normalized(z);

  // beta^0 = 0, d^0 = Z^T y / n, A^0 = top-t |beta^0 + d^0|.
  Vector d(p, 0.0);
  for (int k = 0; k < n; ++k) {
    const double* zk = z.row_ptr(k);
    for (int j = 0; j < p; ++j) d[j] += zk[j] * y[k];
  }
  for (int j = 0; j < p; ++j) d[j] /= n;
  IndexSet a = top_t_indices(d, cfg.t);

  SdarResult best;
  double best_rss = std::numeric_limits<double>::infinity();
  std::vector<IndexSet> visited;
  visited.push_back(a);

  for (int k = 0; k < cfg.max_iter; ++k) {
    const Vector beta_a = restricted_ols(y, z, a);
    const Vector r = residual_on_active(y, z, a, beta_a);
    Vector d_next = dual_from_residual(z, r, a);

    Vector beta(p, 0.0);
    for (size_t i = 0; i < a.size(); ++i) beta[a[i]] = beta_a[i];
    Vector scored(p);
    for (int j = 0; j < p; ++j) scored[j] = beta[j] + d_next[j];
    IndexSet a_next = top_t_indices(scored, cfg.t);

    const double rss = sum_sq(r);
    if (rss < best_rss) {
      best_rss = rss;
      best.beta = beta;
      best.active = a;
      best.dual = d_next;
      best.iterations = k + 1;
      best.converged = false;
    }

    if (a_next == a) {
      return SdarResult{std::move(beta), std::move(a), std::move(d_next), k + 1, true};
    }
    // Cycle guard: revisiting any earlier active set (other than the current
    // one) would loop forever; bail out with the best iterate seen.
    if (std::find(visited.begin(), visited.end(), a_next) != visited.end()) {
      best.iterations = k + 1;
      return best;
    }
    visited.push_back(a_next);
    a = std::move(a_next);
  }
  return best;
}

double kkt_residual(const SdarResult& r, const Vector& y, const Matrix& z) {
  const int p = z.cols();
  if (static_cast<int>(r.beta.size()) != p || static_cast<int>(r.dual.size()) != p)
    throw DimensionMismatch("kkt_residual: result size mismatch");
  if (static_cast<int>(y.size()) != z.rows()) throw DimensionMismatch("kkt_residual: y length != rows of z");
  const int t = static_cast<int>(r.active.size());
  if (t == 0) throw ValidationError("kkt_residual: empty active set");

  const Vector ols = restricted_ols(y, z, r.active);
  double viol = 0.0;
  Vector beta_a(t);
  for (int i = 0; i < t; ++i) {
    beta_a[i] = r.beta[r.active[i]];
    viol = std::max(viol, std::fabs(beta_a[i] - ols[i]));
  }

  const Vector res = residual_on_active(y, z, r.active, beta_a);
  const Vector d_check = dual_from_residual(z, res, r.active);
  for (int j = 0; j < p; ++j) {
    if (index_set_contains(r.active, j)) continue;
    viol = std::max(viol, std::fabs(r.dual[j] - d_check[j]));
  }

  Vector scored(p);
  for (int j = 0; j < p; ++j) scored[j] = r.beta[j] + r.dual[j];
  if (top_t_indices(scored, t) != r.active)
    return std::numeric_limits<double>::infinity();
  return viol;
}

}  // namespace loreg
