#include "loreg/lasso.hpp"

#include <algorithm>
#include <cmath>

namespace loreg {

namespace {

double soft_threshold(double x, double lambda) {
  if (x > lambda) return x - lambda;
  if (x < -lambda) return x + lambda;
  return 0.0;
}

}  // namespace

LassoResult lasso_cd(const Vector& y, const Matrix& z, const LassoConfig& cfg) {
  const int n = z.rows();
  const int p = z.cols();
  if (static_cast<int>(y.size()) != n) throw DimensionMismatch("lasso_cd: y length != rows of z");
  if (cfg.lambda < 0.0) throw ValidationError("lasso_cd: lambda must be >= 0");
  if (cfg.tol <= 0.0) throw ValidationError("lasso_cd: tol must be > 0");
  const double root_n = std::sqrt(static_cast<double>(n));
  for (int j = 0; j < p; ++j) {
    double s = 0.0;
    for (int k = 0; k < n; ++k) s += z(k, j) * z(k, j);
    if (std::fabs(std::sqrt(s) - root_n) > 1e-6 * root_n)
      throw NotNormalized("lasso_cd: column " + std::to_string(j) + " is not sqrt(n)-normalized");
  }

  LassoResult out;
  out.alpha.assign(p, 0.0);
  Vector r = y;  // residual y - Z*alpha, maintained incrementally
  for (int sweep = 0; sweep < cfg.max_sweeps; ++sweep) {
    double max_change = 0.0;
    for (int j = 0; j < p; ++j) {
      double g = 0.0;
      for (int k = 0; k < n; ++k) g += z(k, j) * r[k];
      // Z_j^T Z_j / n == 1, so the coordinate minimizer is a soft threshold.
      const double rho = g / n + out.alpha[j];
      const double updated = soft_threshold(rho, cfg.lambda);
      const double delta = updated - out.alpha[j];
      if (delta != 0.0) {
        out.alpha[j] = updated;
        for (int k = 0; k < n; ++k) r[k] -= delta * z(k, j);
        max_change = std::max(max_change, std::fabs(delta));
      }
    }
    out.sweeps = sweep + 1;
    if (max_change <= cfg.tol) return out;
  }
  out.max_sweeps_exceeded = true;
  return out;
}

double lasso_sigma2(const Vector& y, const Matrix& z_raw, const Vector& alpha, double lambda) {
  const int n = z_raw.rows();
  if (static_cast<int>(y.size()) != n) throw DimensionMismatch("lasso_sigma2: y length != rows");
  if (static_cast<int>(alpha.size()) != z_raw.cols())
    throw DimensionMismatch("lasso_sigma2: alpha length != cols");
  if (lambda < 0.0) throw ValidationError("lasso_sigma2: lambda must be >= 0");
  double rss = 0.0;
  for (int k = 0; k < n; ++k) {
    const double* zk = z_raw.row_ptr(k);
    double fit = 0.0;
    for (int j = 0; j < z_raw.cols(); ++j) fit += zk[j] * alpha[j];
    const double e = y[k] - fit;
    rss += e * e;
  }
  double l1 = 0.0;
  for (double a : alpha) l1 += std::fabs(a);
  const double value = rss / n + lambda * l1;
  if (value <= 1e-12) throw NonPositiveVariance("lasso_sigma2: degenerate fit, value " + std::to_string(value));
  return value;
}

std::vector<double> log_spaced_grid(double lo, double hi, int count) {
  if (lo <= 0.0 || hi <= lo || count < 2) throw ValidationError("log_spaced_grid: need 0 < lo < hi and count >= 2");
  std::vector<double> g(count);
  const double llo = std::log(lo), lhi = std::log(hi);
  for (int i = 0; i < count; ++i)
    g[i] = std::exp(llo + (lhi - llo) * i / (count - 1));
  return g;
}

}  // namespace loreg
