#include "loreg/nodewise.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "loreg/lasso.hpp"
#include "loreg/linalg.hpp"
#include "loreg/parallel.hpp"
#include "loreg/sdar.hpp"

namespace loreg {

namespace {

constexpr double kVarianceFloorScale = 1e-10;  // sigma2 floor: 1e-10 * Sigma_hat_jj
constexpr double kLikelihoodFloor = 1e-300;

int to_full(int j, int reduced) { return reduced < j ? reduced : reduced + 1; }

IndexSet active_to_full(int j, const IndexSet& reduced) {
  IndexSet full(reduced.size());
  for (size_t k = 0; k < reduced.size(); ++k) full[k] = to_full(j, reduced[k]);
  return full;
}

// Reduced design for column j: response X_{*j} and predictors Z_{*\j}.
struct ReducedDesign {
  Vector y;
  Matrix z;
};

ReducedDesign make_reduced(int j, const Matrix& x, const Matrix& z) {
  const int n = x.rows();
  const int p = x.cols();
  ReducedDesign rd;
  rd.y = x.col(j);
  rd.z = Matrix(n, p - 1);
  for (int k = 0; k < n; ++k) {
    const double* zk = z.row_ptr(k);
    double* rk = rd.z.row_ptr(k);
    for (int c = 0; c < j; ++c) rk[c] = zk[c];
    for (int c = j + 1; c < p; ++c) rk[c - 1] = zk[c];
  }
  return rd;
}

// Exact OLS of y on the given full-index columns of z; returns the residual
// mean square.
double restricted_rss_over_n(const Vector& y, const Matrix& z, const IndexSet& cols) {
  const int n = z.rows();
  if (cols.empty()) {
    double s = 0.0;
    for (double v : y) s += v * v;
    return s / n;
  }
  const int t = static_cast<int>(cols.size());
  Matrix gram(t, t);
  Vector rhs(t, 0.0);
  Vector row(t);
  for (int k = 0; k < n; ++k) {
    const double* zk = z.row_ptr(k);
    for (int a = 0; a < t; ++a) row[a] = zk[cols[a]];
    for (int a = 0; a < t; ++a) {
      rhs[a] += row[a] * y[k];
      double* ga = gram.row_ptr(a);
      for (int b = a; b < t; ++b) ga[b] += row[a] * row[b];
    }
  }
  for (int a = 0; a < t; ++a)
    for (int b = 0; b < a; ++b) gram(a, b) = gram(b, a);
  Vector coef;
  try {
    coef = solve_spd_vec(gram, rhs);
  } catch (const NotPositiveDefinite& e) {
    throw SingularActiveGram(std::string("hbic: singular restricted Gram: ") + e.what());
  }
  double rss = 0.0;
  for (int k = 0; k < n; ++k) {
    const double* zk = z.row_ptr(k);
    double fit = 0.0;
    for (int a = 0; a < t; ++a) fit += zk[cols[a]] * coef[a];
    const double e = y[k] - fit;
    rss += e * e;
  }
  return rss / n;
}

SelectResult select_t_impl(int j, const ReducedDesign& rd, const Matrix& x, const Matrix& z,
                           int t_max, int max_iter) {
  SelectResult out;
  double best = std::numeric_limits<double>::infinity();
  bool any = false;
  for (int t = 0; t <= t_max; ++t) {
    IndexSet active;
    if (t > 0) {
      try {
        SdarConfig cfg;
        cfg.t = t;
        cfg.max_iter = max_iter;
        active = active_to_full(j, sdar_fit(rd.y, rd.z, cfg).active);
      } catch (const SingularActiveGram&) {
        out.trace.push_back({t, std::numeric_limits<double>::quiet_NaN(), true});
        continue;
      }
    }
    double h;
    try {
      h = hbic(active, j, x, z);
    } catch (const SingularActiveGram&) {
      out.trace.push_back({t, std::numeric_limits<double>::quiet_NaN(), true});
      continue;
    }
    out.trace.push_back({t, h, false});
    if (!any || h < best) {  // strict: ties keep the smaller T
      any = true;
      best = h;
      out.t_star = t;
    }
  }
  if (!any) throw AllCandidatesFailed("select_t: every candidate T failed for column " + std::to_string(j));
  return out;
}

ColumnEstimate fit_column_loreg_impl(int j, const ReducedDesign& rd, const Matrix& x,
                                     const Matrix& z, const Vector& gamma_diag, int t,
                                     int max_iter) {
  const int n = x.rows();
  const int p = x.cols();
  ColumnEstimate ce;
  ce.j = j;
  ce.chosen_t = t;
  ce.beta.assign(p - 1, 0.0);
  ce.alpha.assign(p - 1, 0.0);
  if (t > 0) {
    SdarConfig cfg;
    cfg.t = t;
    cfg.max_iter = max_iter;
    SdarResult fit = sdar_fit(rd.y, rd.z, cfg);
    ce.beta = fit.beta;
    for (int a : fit.active) ce.active.push_back(to_full(j, a));
    if (!fit.converged) ce.note = "sdar did not converge (t=" + std::to_string(t) + ")";
  }
  for (size_t c = 0; c < ce.beta.size(); ++c) {
    if (ce.beta[c] != 0.0)
      ce.alpha[c] = ce.beta[c] / std::sqrt(gamma_diag[to_full(j, static_cast<int>(c))]);
  }
  // sigma_j^2 = ||X_{*j} - X_{*\j} alpha||^2 / n on the raw design.
  double rss = 0.0;
  for (int k = 0; k < n; ++k) {
    const double* xk = x.row_ptr(k);
    double fit_k = 0.0;
    for (int a : ce.active) {
      const int c = a < j ? a : a - 1;
      fit_k += xk[a] * ce.alpha[c];
    }
    const double e = xk[j] - fit_k;
    rss += e * e;
  }
  ce.sigma2 = rss / n;
  const double floor = kVarianceFloorScale * gamma_diag[j];
  if (ce.sigma2 < floor) {
    ce.sigma2 = floor;
    ce.variance_floored = true;
    if (!ce.note.empty()) ce.note += "; ";
    ce.note += "sigma2 floored";
  }
  ce.omega_jj = 1.0 / ce.sigma2;
  ce.omega_col.assign(p - 1, 0.0);
  for (int a : ce.active) {
    const int c = a < j ? a : a - 1;
    ce.omega_col[c] = -ce.omega_jj * ce.alpha[c];
  }
  ce.hbic_value = n >= 3 ? hbic(ce.active, j, x, z) : std::numeric_limits<double>::quiet_NaN();
  return ce;
}

ColumnEstimate fit_column_lasso_impl(int j, const ReducedDesign& rd, const Matrix& x,
                                     const Matrix& z, const Vector& gamma_diag,
                                     const std::vector<double>& grid, double tol,
                                     int max_sweeps) {
  const int n = x.rows();
  const int p = x.cols();
  double best_hbic = std::numeric_limits<double>::infinity();
  double best_lambda = grid.front();
  Vector best_beta;
  bool any = false;
  bool sweeps_exceeded = false;
  ColumnEstimate ce;
  ce.j = j;
  for (double lambda : grid) {
    LassoConfig cfg;
    cfg.lambda = lambda;
    cfg.tol = tol;
    cfg.max_sweeps = max_sweeps;
    LassoResult fit = lasso_cd(rd.y, rd.z, cfg);
    if (fit.max_sweeps_exceeded) sweeps_exceeded = true;
    IndexSet active;
    for (int c = 0; c < p - 1; ++c)
      if (fit.alpha[c] != 0.0) active.push_back(to_full(j, c));
    double h;
    try {
      h = hbic(active, j, x, z);
    } catch (const SingularActiveGram&) {
      ce.trace.emplace_back(lambda, std::numeric_limits<double>::quiet_NaN());
      continue;
    }
    ce.trace.emplace_back(lambda, h);
    if (!any || h <= best_hbic) {  // ties keep the larger lambda (sparser fit)
      any = true;
      best_hbic = h;
      best_lambda = lambda;
      best_beta = fit.alpha;
    }
  }
  if (!any) throw AllCandidatesFailed("fit_column_lasso: every lambda failed for column " + std::to_string(j));

  ce.chosen_t = best_lambda;
  ce.hbic_value = best_hbic;
  ce.beta = best_beta;
  ce.alpha.assign(p - 1, 0.0);
  for (int c = 0; c < p - 1; ++c) {
    if (ce.beta[c] != 0.0) {
      ce.alpha[c] = ce.beta[c] / std::sqrt(gamma_diag[to_full(j, c)]);
      ce.active.push_back(to_full(j, c));
    }
  }
  if (sweeps_exceeded) ce.note = "lasso_cd hit max_sweeps on at least one lambda";

  Matrix x_reduced(n, p - 1);
  for (int k = 0; k < n; ++k) {
    const double* xk = x.row_ptr(k);
    double* rk = x_reduced.row_ptr(k);
    for (int c = 0; c < j; ++c) rk[c] = xk[c];
    for (int c = j + 1; c < p; ++c) rk[c - 1] = xk[c];
  }
  const double floor = kVarianceFloorScale * gamma_diag[j];
  try {
    ce.sigma2 = lasso_sigma2(rd.y, x_reduced, ce.alpha, best_lambda);
  } catch (const NonPositiveVariance&) {
    ce.sigma2 = 0.0;
  }
  if (ce.sigma2 < floor) {
    ce.sigma2 = floor;
    ce.variance_floored = true;
    if (!ce.note.empty()) ce.note += "; ";
    ce.note += "sigma2 floored";
  }
  ce.omega_jj = 1.0 / ce.sigma2;
  ce.omega_col.assign(p - 1, 0.0);
  for (int a : ce.active) {
    const int c = a < j ? a : a - 1;
    ce.omega_col[c] = -ce.omega_jj * ce.alpha[c];
  }
  return ce;
}

}  // namespace

Standardized standardize(const Matrix& x) {
  const int n = x.rows();
  const int p = x.cols();
  Standardized out;
  out.sigma_hat = sample_covariance(x);
  out.gamma_diag.resize(p);
  for (int i = 0; i < p; ++i) {
    out.gamma_diag[i] = out.sigma_hat(i, i);
    if (out.gamma_diag[i] <= 1e-12)
      throw DegenerateColumn(i, "standardize: column " + std::to_string(i) +
                                    " has sample second moment " + std::to_string(out.gamma_diag[i]));
  }
  out.z = Matrix(n, p);
  Vector inv_scale(p);
  for (int i = 0; i < p; ++i) inv_scale[i] = 1.0 / std::sqrt(out.gamma_diag[i]);
  for (int k = 0; k < n; ++k) {
    const double* xk = x.row_ptr(k);
    double* zk = out.z.row_ptr(k);
    for (int i = 0; i < p; ++i) zk[i] = xk[i] * inv_scale[i];
  }
  return out;
}

double hbic(const IndexSet& active, int j, const Matrix& x, const Matrix& z) {
  const int n = x.rows();
  const int p = x.cols();
  if (n < 3) throw ValidationError("hbic: requires n >= 3");
  if (j < 0 || j >= p) throw ValidationError("hbic: column index out of range");
  validate_index_set(active, p);
  if (index_set_contains(active, j)) throw ValidationError("hbic: active set must exclude j");
  const double l = std::max(restricted_rss_over_n(x.col(j), z, active), kLikelihoodFloor);
  return n * std::log(l) +
         static_cast<double>(active.size()) * std::log(static_cast<double>(p - 1)) *
             std::log(std::log(static_cast<double>(n)));
}

SelectResult select_t(int j, const Matrix& x, const Matrix& z, int t_max, int max_iter) {
  if (t_max < 0 || t_max > x.cols() - 1) throw ValidationError("select_t: t_max must be in [0, p-1]");
  const ReducedDesign rd = make_reduced(j, x, z);
  return select_t_impl(j, rd, x, z, t_max, max_iter);
}

ColumnEstimate fit_column_loreg(int j, const Matrix& x, const Matrix& z,
                                const Vector& gamma_diag, int t, int max_iter) {
  if (t < 0) throw ValidationError("fit_column_loreg: t must be >= 0");
  const ReducedDesign rd = make_reduced(j, x, z);
  return fit_column_loreg_impl(j, rd, x, z, gamma_diag, t, max_iter);
}

ColumnEstimate fit_column_lasso(int j, const Matrix& x, const Matrix& z,
                                const Vector& gamma_diag, const std::vector<double>& lambda_grid,
                                double tol, int max_sweeps) {
  if (lambda_grid.empty()) throw ValidationError("fit_column_lasso: empty lambda grid");
  const ReducedDesign rd = make_reduced(j, x, z);
  return fit_column_lasso_impl(j, rd, x, z, gamma_diag, lambda_grid, tol, max_sweeps);
}

std::vector<double> default_lambda_grid() { return log_spaced_grid(0.02, 2.0, 20); }

int auto_t_max(int n, int p) {
  if (n < 3 || p < 2) throw ValidationError("auto_t_max: requires n >= 3 and p >= 2");
  const double denom = std::log(static_cast<double>(p)) * std::log(std::log(static_cast<double>(n)));
  int t = static_cast<int>(std::floor(n / denom));
  return std::clamp(t, 0, p - 1);
}

PrecisionEstimate estimate(const Matrix& x, Method method, const TuningSpec& tuning,
                           int parallelism) {
  const int n = x.rows();
  const int p = x.cols();
  if (n < 3) throw ValidationError("estimate: requires n >= 3");
  if (p < 2) throw ValidationError("estimate: requires p >= 2");

  Standardized st = standardize(x);
  PrecisionEstimate out;
  out.method = method;
  out.gamma_diag = st.gamma_diag;
  out.sigma_hat = st.sigma_hat;
  out.columns.resize(p);

  const int t_max = tuning.fixed_t >= 0
                        ? tuning.fixed_t
                        : std::min(tuning.auto_t_max ? auto_t_max(n, p) : tuning.t_max, p - 1);
  const std::vector<double> grid =
      tuning.lambda_grid.empty() ? default_lambda_grid() : tuning.lambda_grid;

  parallel_for(p, parallelism, [&](int j) {
    const ReducedDesign rd = make_reduced(j, x, st.z);
    try {
      if (method == Method::Loreg) {
        int t = tuning.fixed_t;
        SelectResult sel;
        if (t < 0) {
          sel = select_t_impl(j, rd, x, st.z, t_max, tuning.sdar_max_iter);
          t = sel.t_star;
        }
        out.columns[j] = fit_column_loreg_impl(j, rd, x, st.z, st.gamma_diag, t, tuning.sdar_max_iter);
        for (const auto& tr : sel.trace)
          if (!tr.failed) out.columns[j].trace.emplace_back(tr.t, tr.hbic);
      } else {
        out.columns[j] = fit_column_lasso_impl(j, rd, x, st.z, st.gamma_diag, grid,
                                               tuning.lasso_tol, tuning.lasso_max_sweeps);
      }
    } catch (const std::runtime_error& e) {
      // A failed column never aborts the full estimate: fall back to the
      // empty-support fit and record the diagnostic.
      out.columns[j] = fit_column_loreg_impl(j, rd, x, st.z, st.gamma_diag, 0, tuning.sdar_max_iter);
      out.columns[j].note = std::string("column ") + std::to_string(j) +
                            " fell back to t=0: " + e.what();
    }
  });

  out.omega_us = Matrix(p, p);
  for (int j = 0; j < p; ++j) {
    const ColumnEstimate& ce = out.columns[j];
    out.omega_us(j, j) = ce.omega_jj;
    for (int a : ce.active) {
      const int c = a < j ? a : a - 1;
      out.omega_us(a, j) = ce.omega_col[c];
    }
  }
  out.omega_s = min_symmetrize(out.omega_us);
  return out;
}

Matrix min_symmetrize(const Matrix& m) {
  if (m.rows() != m.cols()) throw DimensionMismatch("min_symmetrize: matrix not square");
  Matrix s(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i) {
    s(i, i) = m(i, i);
    for (int j = i + 1; j < m.cols(); ++j) {
      const double v = std::fabs(m(i, j)) <= std::fabs(m(j, i)) ? m(i, j) : m(j, i);
      s(i, j) = v;
      s(j, i) = v;
    }
  }
  return s;
}

}  // namespace loreg
