#pragma once

#include <string>
#include <vector>

#include "loreg/matrix.hpp"

namespace loreg {

enum class Method { Loreg, Lasso };

struct ColumnEstimate {
  int j = 0;
  Vector beta;        // length p-1, coefficients on the standardized design
  Vector alpha;       // length p-1, mapped back to the raw design scale
  IndexSet active;    // full-matrix column indices, excludes j
  double sigma2 = 0.0;
  double omega_jj = 0.0;   // 1 / sigma2
  Vector omega_col;        // length p-1, -omega_jj * alpha
  double chosen_t = 0.0;   // selected T (Loreg) or lambda (Lasso)
  double hbic_value = 0.0;
  bool variance_floored = false;
  std::string note;        // diagnostic when the column fell back or was flagged
  std::vector<std::pair<double, double>> trace;  // (candidate, hbic); failed fits omitted
};

struct PrecisionEstimate {
  Matrix omega_us;
  Matrix omega_s;
  std::vector<ColumnEstimate> columns;
  Method method = Method::Loreg;
  Vector gamma_diag;   // diagonal of Sigma_hat
  Matrix sigma_hat;    // X^T X / n
};

struct Standardized {
  Matrix z;            // X * Gamma^{-1/2}; every column has norm sqrt(n)
  Vector gamma_diag;
  Matrix sigma_hat;
};

struct TuningSpec {
  int t_max = 20;
  bool auto_t_max = false;   // t_max = floor(n / (log(p) log(log n)))
  int fixed_t = -1;          // >= 0 bypasses selection (Loreg only)
  int sdar_max_iter = 50;
  std::vector<double> lambda_grid;  // empty -> default_lambda_grid()
  double lasso_tol = 1e-7;
  int lasso_max_sweeps = 10000;
};

Standardized standardize(const Matrix& x);

/// n log L_A + |A| log(p-1) log(log n), with L_A the exact restricted OLS
/// residual mean square of X_{*j} on the active columns of z (natural logs,
/// L floored at 1e-300). Requires n >= 3 and j not in active.
double hbic(const IndexSet& active, int j, const Matrix& x, const Matrix& z);

struct SelectTrace {
  int t;
  double hbic;
  bool failed;
};

struct SelectResult {
  int t_star = 0;
  std::vector<SelectTrace> trace;
};

/// Scans T = 0..t_max, fitting each via SDAR and scoring the returned active
/// set with hbic; ties break toward smaller T. Failed fits are skipped.
SelectResult select_t(int j, const Matrix& x, const Matrix& z, int t_max, int max_iter = 50);

ColumnEstimate fit_column_loreg(int j, const Matrix& x, const Matrix& z,
                                const Vector& gamma_diag, int t, int max_iter = 50);

ColumnEstimate fit_column_lasso(int j, const Matrix& x, const Matrix& z,
                                const Vector& gamma_diag, const std::vector<double>& lambda_grid,
                                double tol = 1e-7, int max_sweeps = 10000);

/// Column-by-column estimation of the precision matrix with per-column tuning,
/// followed by minimum symmetrization. Column fits run on up to `parallelism`
/// threads; the assembled result does not depend on the thread count.
PrecisionEstimate estimate(const Matrix& x, Method method, const TuningSpec& tuning,
                           int parallelism = 0);

/// Keeps whichever of m_ij, m_ji has the smaller magnitude.
Matrix min_symmetrize(const Matrix& m);

std::vector<double> default_lambda_grid();

int auto_t_max(int n, int p);

}  // namespace loreg
