#include "loreg/inference.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "loreg/linalg.hpp"

namespace loreg {

namespace {

constexpr double kVarianceFloor = 1e-10;
const double kNaN = std::numeric_limits<double>::quiet_NaN();

int position_in(const IndexSet& a_plus, int i) {
  auto it = std::lower_bound(a_plus.begin(), a_plus.end(), i);
  if (it == a_plus.end() || *it != i)
    throw IndexNotInActiveSet("index " + std::to_string(i) + " not in the augmented active set");
  return static_cast<int>(it - a_plus.begin());
}

IndexSet augmented(const IndexSet& active, int j) {
  IndexSet a = active;
  auto it = std::lower_bound(a.begin(), a.end(), j);
  if (it == a.end() || *it != j) a.insert(it, j);
  return a;
}

}  // namespace

Matrix desparsify(const Matrix& omega, const Matrix& sigma_hat) {
  if (omega.rows() != omega.cols() || sigma_hat.rows() != sigma_hat.cols() ||
      omega.rows() != sigma_hat.rows())
    throw DimensionMismatch("desparsify: matrices must be square and conformable");
  const int p = omega.rows();
  Matrix so = multiply(sigma_hat, omega);
  Matrix oso = multiply(transpose(omega), so);
  Matrix t(p, p);
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < p; ++j) t(i, j) = omega(i, j) + omega(j, i) - oso(i, j);
  return t;
}

double var_undesp_gaussian(const Matrix& sigma_hat, const IndexSet& a_plus, int i, int j) {
  validate_index_set(a_plus, sigma_hat.rows());
  const int ih = position_in(a_plus, i);
  const int jh = position_in(a_plus, j);
  Matrix inv = spd_inverse(submatrix(sigma_hat, a_plus, a_plus));
  return inv(ih, ih) * inv(jh, jh) + inv(ih, jh) * inv(ih, jh);
}

double var_undesp_general(const Matrix& x, const Matrix& sigma_hat, const IndexSet& a_plus,
                          int i, int j, const Matrix& omega, bool* floored) {
  validate_index_set(a_plus, sigma_hat.rows());
  const int ih = position_in(a_plus, i);
  const int jh = position_in(a_plus, j);
  const int n = x.rows();
  const int t = static_cast<int>(a_plus.size());
  Matrix inv = spd_inverse(submatrix(sigma_hat, a_plus, a_plus));
  double acc = 0.0;
  Vector w(t);
  for (int k = 0; k < n; ++k) {
    const double* xk = x.row_ptr(k);
    for (int a = 0; a < t; ++a) {
      double s = 0.0;
      for (int b = 0; b < t; ++b) s += inv(a, b) * xk[a_plus[b]];
      w[a] = s;
    }
    const double term = w[ih] * w[jh];
    acc += term * term;
  }
  double v = acc / n - 0.5 * (omega(i, j) * omega(i, j) + omega(j, i) * omega(j, i));
  if (v <= 0.0) {
    v = kVarianceFloor;
    if (floored) *floored = true;
  }
  return v;
}

double var_desp_gaussian(const Matrix& omega, int i, int j) {
  return omega(i, i) * omega(j, j) + 0.5 * (omega(i, j) * omega(i, j) + omega(j, i) * omega(j, i));
}

double var_desp_general(const Matrix& x, const Matrix& omega, int i, int j, bool* floored) {
  const int n = x.rows();
  const int p = x.cols();
  if (omega.rows() != p || omega.cols() != p) throw DimensionMismatch("var_desp_general: shape mismatch");
  double acc = 0.0;
  for (int k = 0; k < n; ++k) {
    const double* xk = x.row_ptr(k);
    double a = 0.0, b = 0.0;
    for (int c = 0; c < p; ++c) {
      a += xk[c] * omega(c, i);
      b += xk[c] * omega(c, j);
    }
    acc += (a * b) * (a * b);
  }
  double v = acc / n - 0.5 * (omega(i, j) * omega(i, j) + omega(j, i) * omega(j, i));
  if (v <= 0.0) {
    v = kVarianceFloor;
    if (floored) *floored = true;
  }
  return v;
}

Matrix variance_matrix(const PrecisionEstimate& est, const Matrix& x, VarianceKind kind,
                       int* floored_count, int* undefined_count) {
  const int p = est.omega_us.rows();
  const int n = x.rows();
  Matrix var(p, p);
  for (double& v : var.data()) v = kNaN;
  int floored = 0;
  int undefined = 0;

  if (kind == VarianceKind::DespGaussian) {
    for (int i = 0; i < p; ++i)
      for (int j = 0; j < p; ++j) var(i, j) = var_desp_gaussian(est.omega_us, i, j);
  } else if (kind == VarianceKind::DespGeneral) {
    // W = X * Omega; entry (i,j) averages (W_ki W_kj)^2 over rows.
    Matrix w = multiply(x, est.omega_us);
    for (int i = 0; i < p; ++i) {
      for (int j = 0; j < p; ++j) {
        double acc = 0.0;
        for (int k = 0; k < n; ++k) {
          const double t = w(k, i) * w(k, j);
          acc += t * t;
        }
        double v = acc / n - 0.5 * (est.omega_us(i, j) * est.omega_us(i, j) +
                                    est.omega_us(j, i) * est.omega_us(j, i));
        if (v <= 0.0) {
          v = kVarianceFloor;
          ++floored;
        }
        var(i, j) = v;
      }
    }
  } else {
    for (int j = 0; j < p; ++j) {
      const IndexSet a_plus = augmented(est.columns[j].active, j);
      const int t = static_cast<int>(a_plus.size());
      Matrix inv;
      try {
        inv = spd_inverse(submatrix(est.sigma_hat, a_plus, a_plus));
      } catch (const NotPositiveDefinite&) {
        undefined += t;
        continue;
      }
      const int jh = position_in(a_plus, j);
      if (kind == VarianceKind::UndespGaussian) {
        for (int a = 0; a < t; ++a)
          var(a_plus[a], j) = inv(a, a) * inv(jh, jh) + inv(a, jh) * inv(a, jh);
      } else {
        // One pass of W = X_{A+} inv per column, then all entries i in A+.
        Matrix w(n, t);
        for (int k = 0; k < n; ++k) {
          const double* xk = x.row_ptr(k);
          for (int a = 0; a < t; ++a) {
            double s = 0.0;
            for (int b = 0; b < t; ++b) s += inv(a, b) * xk[a_plus[b]];
            w(k, a) = s;
          }
        }
        for (int a = 0; a < t; ++a) {
          const int i = a_plus[a];
          double acc = 0.0;
          for (int k = 0; k < n; ++k) {
            const double term = w(k, a) * w(k, jh);
            acc += term * term;
          }
          double v = acc / n - 0.5 * (est.omega_us(i, j) * est.omega_us(i, j) +
                                      est.omega_us(j, i) * est.omega_us(j, i));
          if (v <= 0.0) {
            v = kVarianceFloor;
            ++floored;
          }
          var(i, j) = v;
        }
      }
    }
  }
  if (floored_count) *floored_count = floored;
  if (undefined_count) *undefined_count = undefined;
  return var;
}

bool InferenceResult::defined(int i, int j) const { return !std::isnan(var_matrix(i, j)); }

InferenceResult build_inference(const PrecisionEstimate& est, const Matrix& x,
                                VarianceKind kind, PointSource point, double alpha_level) {
  if (alpha_level <= 0.0 || alpha_level >= 1.0)
    throw ValidationError("build_inference: alpha must be in (0,1)");
  const int p = est.omega_us.rows();
  const int n = x.rows();
  InferenceResult out;
  out.kind = kind;
  out.point_source = point;
  out.n = n;
  out.alpha_level = alpha_level;

  const Matrix* point_m = nullptr;
  if (point == PointSource::OmegaUS) {
    point_m = &est.omega_us;
  } else if (point == PointSource::OmegaS) {
    point_m = &est.omega_s;
  } else {
    out.t_hat = desparsify(est.omega_us, est.sigma_hat);
    point_m = &*out.t_hat;
  }

  Matrix raw = variance_matrix(est, x, kind, &out.floored_count, nullptr);
  out.point = Matrix(p, p);
  out.var_matrix = Matrix(p, p);
  const bool undesp = kind == VarianceKind::UndespGaussian || kind == VarianceKind::UndespGeneral;
  if (undesp) {
    for (double& v : out.var_matrix.data()) v = kNaN;
    for (double& v : out.point.data()) v = kNaN;
    for (int i = 0; i < p; ++i) {
      if (!std::isnan(raw(i, i))) {
        out.var_matrix(i, i) = raw(i, i);
        out.point(i, i) = (*point_m)(i, i);
      }
      for (int j = i + 1; j < p; ++j) {
        if (!std::isnan(raw(i, j))) {            // orientation (i, j): column j
          out.var_matrix(i, j) = out.var_matrix(j, i) = raw(i, j);
          out.point(i, j) = out.point(j, i) = (*point_m)(i, j);
        } else if (!std::isnan(raw(j, i))) {     // orientation (j, i): column i
          out.var_matrix(i, j) = out.var_matrix(j, i) = raw(j, i);
          out.point(i, j) = out.point(j, i) = (*point_m)(j, i);
        }
      }
    }
  } else {
    out.var_matrix = raw;
    out.point = *point_m;
  }
  out.undefined_count = 0;
  for (double v : out.var_matrix.data())
    if (std::isnan(v)) ++out.undefined_count;

  const double q = normal_quantile(1.0 - alpha_level / 2.0);
  const double root_n = std::sqrt(static_cast<double>(n));
  out.z_scores = Matrix(p, p);
  out.ci_low = Matrix(p, p);
  out.ci_high = Matrix(p, p);
  for (int i = 0; i < p; ++i) {
    for (int j = 0; j < p; ++j) {
      const double v = out.var_matrix(i, j);
      if (std::isnan(v)) {
        out.z_scores(i, j) = kNaN;
        out.ci_low(i, j) = kNaN;
        out.ci_high(i, j) = kNaN;
        continue;
      }
      const double sd = std::sqrt(v);
      const double pt = out.point(i, j);
      out.z_scores(i, j) = root_n * pt / sd;
      out.ci_low(i, j) = pt - q * sd / root_n;
      out.ci_high(i, j) = pt + q * sd / root_n;
    }
  }
  return out;
}

std::vector<int> bh_fdr(const std::vector<double>& pvalues, double q) {
  if (q <= 0.0 || q >= 1.0) throw ValidationError("bh_fdr: q must be in (0,1)");
  const int m = static_cast<int>(pvalues.size());
  for (double p : pvalues)
    if (!(p >= 0.0 && p <= 1.0)) throw InvalidPValue("bh_fdr: p-value outside [0,1]");
  if (m == 0) return {};
  std::vector<int> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return pvalues[a] < pvalues[b]; });
  double threshold = -1.0;
  for (int k = m; k >= 1; --k) {
    if (pvalues[order[k - 1]] <= static_cast<double>(k) * q / m) {
      threshold = pvalues[order[k - 1]];
      break;
    }
  }
  std::vector<int> rejected;
  if (threshold < 0.0) return rejected;
  for (int i = 0; i < m; ++i)
    if (pvalues[i] <= threshold) rejected.push_back(i);
  return rejected;
}

ThresholdOutcome apply_threshold(const Matrix& m1, const InferenceResult& z_inf,
                                 const Matrix& m3, double fdr_level) {
  const int p = m1.rows();
  if (m1.cols() != p || m3.rows() != p || m3.cols() != p || z_inf.z_scores.rows() != p)
    throw DimensionMismatch("apply_threshold: matrices must be square and conformable");
  ThresholdOutcome out;
  out.thresholded = Matrix(p, p);
  for (int i = 0; i < p; ++i) out.thresholded(i, i) = m1(i, i);

  std::vector<std::pair<int, int>> tested;  // (i, j) with i > j
  std::vector<double> pvalues;
  for (int i = 1; i < p; ++i) {
    for (int j = 0; j < i; ++j) {
      if (m3(i, j) == 0.0) continue;
      tested.emplace_back(i, j);
      const double z = z_inf.z_scores(i, j);
      if (std::isnan(z)) {
        // Untestable entries stay in the family as certain non-rejections.
        ++out.undefined;
        pvalues.push_back(1.0);
      } else {
        pvalues.push_back(2.0 * (1.0 - normal_cdf(std::fabs(z))));
      }
    }
  }
  out.tested = static_cast<int>(tested.size());
  for (int idx : bh_fdr(pvalues, fdr_level)) {
    const auto [i, j] = tested[idx];
    out.thresholded(i, j) = m1(i, j);
    out.thresholded(j, i) = m1(i, j);
    out.rejected_entries.emplace_back(i, j);
  }
  out.rejected = static_cast<int>(out.rejected_entries.size());
  return out;
}

VarOrderCheck variance_ordering_check(const Matrix& sigma_true, const IndexSet& a_plus,
                                      int i, int j) {
  VarOrderCheck out;
  Matrix omega = spd_inverse(sigma_true);
  const int ih = position_in(a_plus, i);
  const int jh = position_in(a_plus, j);
  Matrix inv = spd_inverse(submatrix(sigma_true, a_plus, a_plus));
  out.lhs = inv(ih, ih) * inv(jh, jh) + inv(ih, jh) * inv(ih, jh);
  out.rhs = omega(i, i) * omega(j, j) + omega(i, j) * omega(i, j);
  out.ok = out.lhs <= out.rhs + 1e-10;
  return out;
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

double normal_quantile(double p) {
  // Wichura (1988), algorithm AS 241, PPND16: max absolute error ~1e-16.
  if (!(p > 0.0 && p < 1.0)) throw ValidationError("normal_quantile: p must be in (0,1)");
  const double q = p - 0.5;
  if (std::fabs(q) <= 0.425) {
    const double r = 0.180625 - q * q;
    const double num =
        (((((((2.5090809287301226727e3 * r + 3.3430575583588128105e4) * r +
              6.7265770927008700853e4) * r + 4.5921953931549871457e4) * r +
            1.3731693765509461125e4) * r + 1.9715909503065514427e3) * r +
          1.3314166789178437745e2) * r + 3.3871328727963666080e0);
    const double den =
        (((((((5.2264952788528545610e3 * r + 2.8729085735721942674e4) * r +
              3.9307895800092710610e4) * r + 2.1213794301586595867e4) * r +
            5.3941960214247511077e3) * r + 6.8718700749205790830e2) * r +
          4.2313330701600911252e1) * r + 1.0);
    return q * num / den;
  }
  double r = q < 0.0 ? p : 1.0 - p;
  r = std::sqrt(-std::log(r));
  double val;
  if (r <= 5.0) {
    r -= 1.6;
    const double num =
        (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r +
              2.41780725177450611770e-1) * r + 1.27045825245236838258e0) * r +
            3.64784832476320460504e0) * r + 5.76949722146069140550e0) * r +
          4.63033784615654529590e0) * r + 1.42343711074968357734e0);
    const double den =
        (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r +
              1.51986665636164571966e-2) * r + 1.48103976427480074590e-1) * r +
            6.89767334985100004550e-1) * r + 1.67638483018380384940e0) * r +
          2.05319162663775882187e0) * r + 1.0);
    val = num / den;
  } else {
    r -= 5.0;
    const double num =
        (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
              1.24266094738807843860e-3) * r + 2.65321895265761230930e-2) * r +
            2.96560571828504891230e-1) * r + 1.78482653991729133580e0) * r +
          5.46378491116411436990e0) * r + 6.65790464350110377720e0);
    const double den =
        (((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) * r +
              1.84631831751005468180e-5) * r + 7.86869131145613259100e-4) * r +
            1.48753612908506148525e-2) * r + 1.36929880922735805310e-1) * r +
          5.99832206555887937690e-1) * r + 1.0);
    val = num / den;
  }
  return q < 0.0 ? -val : val;
}

}  // namespace loreg
