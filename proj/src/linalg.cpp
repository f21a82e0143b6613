#include "loreg/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace loreg {

namespace {

void require_square(const Matrix& m, const char* who) {
  if (m.rows() != m.cols()) throw DimensionMismatch(std::string(who) + ": matrix not square");
}

void require_symmetric(const Matrix& m, const char* who) {
  require_square(m, who);
  const double scale = std::max(max_abs(m), 1.0);
  for (int i = 0; i < m.rows(); ++i)
    for (int j = i + 1; j < m.cols(); ++j)
      if (std::fabs(m(i, j) - m(j, i)) > 1e-10 * scale)
        throw ValidationError(std::string(who) + ": matrix not symmetric");
}

}  // namespace

Matrix cholesky(const Matrix& m) {
  require_symmetric(m, "cholesky");
  const int n = m.rows();
  double max_diag = 0.0;
  for (int i = 0; i < n; ++i) max_diag = std::max(max_diag, m(i, i));
  const double floor = 1e-12 * std::max(max_diag, 1e-300);
  Matrix l(n, n);
  for (int j = 0; j < n; ++j) {
    double d = m(j, j);
    for (int k = 0; k < j; ++k) d -= l(j, k) * l(j, k);
    if (d <= floor) throw NotPositiveDefinite("cholesky: pivot " + std::to_string(d) + " at column " + std::to_string(j));
    l(j, j) = std::sqrt(d);
    for (int i = j + 1; i < n; ++i) {
      double s = m(i, j);
      for (int k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
      l(i, j) = s / l(j, j);
    }
  }
  return l;
}

namespace {

// Solves L y = b then L^T x = y in place.
void chol_solve_inplace(const Matrix& l, Vector& x) {
  const int n = l.rows();
  for (int i = 0; i < n; ++i) {
    double s = x[i];
    for (int k = 0; k < i; ++k) s -= l(i, k) * x[k];
    x[i] = s / l(i, i);
  }
  for (int i = n - 1; i >= 0; --i) {
    double s = x[i];
    for (int k = i + 1; k < n; ++k) s -= l(k, i) * x[k];
    x[i] = s / l(i, i);
  }
}

}  // namespace

Matrix solve_spd(const Matrix& m, const Matrix& b) {
  require_square(m, "solve_spd");
  if (m.rows() != b.rows()) throw DimensionMismatch("solve_spd: right-hand side rows differ");
  Matrix l = cholesky(m);
  Matrix x(b.rows(), b.cols());
  Vector col(b.rows());
  for (int j = 0; j < b.cols(); ++j) {
    for (int i = 0; i < b.rows(); ++i) col[i] = b(i, j);
    chol_solve_inplace(l, col);
    for (int i = 0; i < b.rows(); ++i) x(i, j) = col[i];
  }
  return x;
}

Vector solve_spd_vec(const Matrix& m, const Vector& b) {
  require_square(m, "solve_spd");
  if (m.rows() != static_cast<int>(b.size())) throw DimensionMismatch("solve_spd: vector size differs");
  Matrix l = cholesky(m);
  Vector x = b;
  chol_solve_inplace(l, x);
  return x;
}

Matrix spd_inverse(const Matrix& m) {
  const int n = m.rows();
  Matrix l = cholesky(m);
  // Invert L column by column, then assemble L^{-T} L^{-1}.
  Matrix linv(n, n);
  for (int j = 0; j < n; ++j) {
    linv(j, j) = 1.0 / l(j, j);
    for (int i = j + 1; i < n; ++i) {
      double s = 0.0;
      for (int k = j; k < i; ++k) s -= l(i, k) * linv(k, j);
      linv(i, j) = s / l(i, i);
    }
  }
  Matrix inv(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j <= i; ++j) {
      double s = 0.0;
      for (int k = i; k < n; ++k) s += linv(k, i) * linv(k, j);
      inv(i, j) = s;
      inv(j, i) = s;
    }
  }
  return inv;
}

EigenSym eigen_sym(const Matrix& m) {
  require_symmetric(m, "eigen_sym");
  const int n = m.rows();
  Matrix a = m;
  Matrix v = Matrix::identity(n);
  double fro = 0.0;
  for (double x : m.data()) fro += x * x;
  fro = std::sqrt(fro);
  const double tol = 1e-12 * std::max(fro, 1e-300);
  const int max_sweeps = 100;
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double off = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) off += 2.0 * a(i, j) * a(i, j);
    if (std::sqrt(off) <= tol) break;
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (std::fabs(apq) <= tol / (n * n)) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (int k = 0; k < n; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        for (int k = 0; k < n; ++k) {
          const double vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }
  EigenSym out;
  out.values.resize(n);
  for (int i = 0; i < n; ++i) out.values[i] = a(i, i);
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int x, int y) { return out.values[x] < out.values[y]; });
  Vector sorted(n);
  Matrix vec(n, n);
  for (int k = 0; k < n; ++k) {
    sorted[k] = out.values[order[k]];
    for (int i = 0; i < n; ++i) vec(i, k) = v(i, order[k]);
  }
  out.values = std::move(sorted);
  out.vectors = std::move(vec);
  return out;
}

std::pair<double, double> symmetric_eigen_extremes(const Matrix& m) {
  EigenSym e = eigen_sym(m);
  return {e.values.front(), e.values.back()};
}

double spectral_norm(const Matrix& m) {
  // Form the Gram matrix of the thinner side to keep the eigenproblem small.
  const bool wide = m.cols() > m.rows();
  const int k = wide ? m.rows() : m.cols();
  Matrix g(k, k);
  for (int i = 0; i < k; ++i) {
    for (int j = i; j < k; ++j) {
      double s = 0.0;
      if (wide) {
        for (int t = 0; t < m.cols(); ++t) s += m(i, t) * m(j, t);
      } else {
        for (int t = 0; t < m.rows(); ++t) s += m(t, i) * m(t, j);
      }
      g(i, j) = s;
      g(j, i) = s;
    }
  }
  double lmax = symmetric_eigen_extremes(g).second;
  return std::sqrt(std::max(lmax, 0.0));
}

Matrix spd_inverse_sqrt(const Matrix& m) {
  EigenSym e = eigen_sym(m);
  const int n = m.rows();
  const double floor = 1e-12 * std::max(e.values.back(), 1e-300);
  for (double lam : e.values)
    if (lam <= floor) throw NotPositiveDefinite("spd_inverse_sqrt: eigenvalue " + std::to_string(lam));
  Matrix r(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      double s = 0.0;
      for (int k = 0; k < n; ++k)
        s += e.vectors(i, k) * e.vectors(j, k) / std::sqrt(e.values[k]);
      r(i, j) = s;
      r(j, i) = s;
    }
  }
  return r;
}

Matrix sample_covariance(const Matrix& x) {
  const int n = x.rows();
  const int p = x.cols();
  Matrix s(p, p);
  for (int k = 0; k < n; ++k) {
    const double* row = x.row_ptr(k);
    for (int i = 0; i < p; ++i) {
      const double xi = row[i];
      if (xi == 0.0) continue;
      double* si = s.row_ptr(i);
      for (int j = i; j < p; ++j) si[j] += xi * row[j];
    }
  }
  for (int i = 0; i < p; ++i)
    for (int j = i; j < p; ++j) {
      s(i, j) /= n;
      s(j, i) = s(i, j);
    }
  return s;
}

}  // namespace loreg
