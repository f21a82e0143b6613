#include "loreg/metrics.hpp"

#include <cmath>
#include <limits>

#include "loreg/inference.hpp"
#include "loreg/linalg.hpp"

namespace loreg {

namespace {
const double kNaN = std::numeric_limits<double>::quiet_NaN();
}

LossReport norm_losses(const Matrix& est, const Matrix& truth) {
  if (est.rows() != truth.rows() || est.cols() != truth.cols())
    throw DimensionMismatch("norm_losses: shape mismatch");
  const int r = est.rows(), c = est.cols();
  Matrix diff(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) diff(i, j) = est(i, j) - truth(i, j);
  LossReport out;
  double fro2 = 0.0;
  for (int j = 0; j < c; ++j) {
    double colsum = 0.0;
    for (int i = 0; i < r; ++i) {
      const double a = std::fabs(diff(i, j));
      colsum += a;
      out.max = std::max(out.max, a);
      fro2 += a * a;
    }
    out.l1 = std::max(out.l1, colsum);
  }
  out.frobenius = std::sqrt(fro2);
  out.spectral = spectral_norm(diff);
  return out;
}

SupportReport support_metrics(const Matrix& est, const Matrix& truth, double threshold) {
  if (est.rows() != truth.rows() || est.cols() != truth.cols() || est.rows() != est.cols())
    throw DimensionMismatch("support_metrics: need square matrices of equal shape");
  SupportReport out;
  const int p = est.rows();
  for (int i = 0; i < p; ++i) {
    for (int j = 0; j < p; ++j) {
      if (i == j) continue;
      const bool e = std::fabs(est(i, j)) > threshold;
      const bool t = std::fabs(truth(i, j)) > threshold;
      if (e && t) ++out.tp;
      else if (e && !t) ++out.fp;
      else if (!e && t) ++out.fn;
      else ++out.tn;
    }
  }
  auto ratio = [&](long num, long den) {
    if (den == 0) {
      out.degenerate = true;
      return 0.0;
    }
    return static_cast<double>(num) / den;
  };
  out.precision = ratio(out.tp, out.tp + out.fp);
  out.sensitivity = ratio(out.tp, out.tp + out.fn);
  out.specificity = ratio(out.tn, out.fp + out.tn);
  const double d1 = static_cast<double>(out.tp + out.fp), d2 = static_cast<double>(out.tp + out.fn);
  const double d3 = static_cast<double>(out.tn + out.fp), d4 = static_cast<double>(out.tn + out.fn);
  if (d1 == 0.0 || d2 == 0.0 || d3 == 0.0 || d4 == 0.0) {
    out.degenerate = true;
    out.mcc = 0.0;
  } else {
    out.mcc = (static_cast<double>(out.tp) * out.tn - static_cast<double>(out.fp) * out.fn) /
              std::sqrt(d1 * d2 * d3 * d4);
  }
  return out;
}

NormalityReport normality_metrics(const std::vector<const Matrix*>& points,
                                  const std::vector<const Matrix*>& variances,
                                  const Matrix& truth, const Matrix& sigma_true, int n,
                                  double alpha, const std::string& entry_set_name,
                                  const std::vector<std::pair<int, int>>& entries) {
  const int m = static_cast<int>(points.size());
  if (m < 2) throw InsufficientReplications("normality_metrics: need at least 2 replications");
  if (variances.size() != points.size())
    throw DimensionMismatch("normality_metrics: points/variances count mismatch");
  NormalityReport out;
  out.entry_set = entry_set_name;
  out.replications = m;
  out.alpha = alpha;
  const double q = normal_quantile(1.0 - alpha / 2.0);
  const double root_n = std::sqrt(static_cast<double>(n));

  for (const auto& [i, j] : entries) {
    EntryNormality e;
    e.i = i;
    e.j = j;
    const double st = sigma_true(i, j);
    e.true_length = std::isnan(st) ? kNaN : 2.0 * q * st / root_n;
    double sum_len = 0.0, sum_cov = 0.0, sum_z = 0.0, sum_z2 = 0.0;
    int used = 0;
    for (int r = 0; r < m; ++r) {
      const double v = (*variances[r])(i, j);
      if (std::isnan(v)) {
        ++e.dropped;
        continue;
      }
      const double sd = std::sqrt(v);
      const double pt = (*points[r])(i, j);
      const double half = q * sd / root_n;
      sum_len += 2.0 * half;
      if (truth(i, j) >= pt - half && truth(i, j) <= pt + half) sum_cov += 1.0;
      const double z = root_n * (pt - truth(i, j)) / sd;
      sum_z += z;
      sum_z2 += z * z;
      ++used;
    }
    if (used >= 2) {
      e.avg_length = sum_len / used;
      e.cov_rate = sum_cov / used;
      e.abs_avg_z = std::fabs(sum_z / used);
      const double var_z = (sum_z2 - sum_z * sum_z / used) / (used - 1);
      e.sd_z = std::sqrt(std::max(var_z, 0.0));
    } else {
      e.avg_length = e.cov_rate = e.abs_avg_z = e.sd_z = kNaN;
    }
    out.entries.push_back(e);
  }

  for (int k = 0; k < 5; ++k) {
    double sum = 0.0, sum2 = 0.0;
    int cnt = 0;
    for (const auto& e : out.entries) {
      const double v = k == 0   ? e.true_length
                       : k == 1 ? e.avg_length
                       : k == 2 ? e.cov_rate
                       : k == 3 ? e.abs_avg_z
                                : e.sd_z;
      if (std::isnan(v)) continue;
      sum += v;
      sum2 += v * v;
      ++cnt;
    }
    out.mean[k] = cnt > 0 ? sum / cnt : kNaN;
    out.sd[k] = cnt > 1 ? std::sqrt(std::max((sum2 - sum * sum / cnt) / (cnt - 1), 0.0)) : kNaN;
  }
  return out;
}

std::pair<double, double> lda_scores(const Vector& x, const LdaModel& model) {
  const int p = model.omega.rows();
  if (static_cast<int>(x.size()) != p || static_cast<int>(model.mean0.size()) != p ||
      static_cast<int>(model.mean1.size()) != p || model.omega.cols() != p)
    throw DimensionMismatch("lda_scores: shape mismatch");
  if (!(model.prior0 > 0.0 && model.prior1 > 0.0) ||
      std::fabs(model.prior0 + model.prior1 - 1.0) > 1e-12)
    throw ValidationError("lda_scores: priors must be positive and sum to 1");
  const Vector om0 = multiply_vec(model.omega, model.mean0);
  const Vector om1 = multiply_vec(model.omega, model.mean1);
  const double d0 = dot(x, om0) - 0.5 * dot(model.mean0, om0) + std::log(model.prior0);
  const double d1 = dot(x, om1) - 0.5 * dot(model.mean1, om1) + std::log(model.prior1);
  return {d0, d1};
}

int lda_classify(const Vector& x, const LdaModel& model) {
  auto [d0, d1] = lda_scores(x, model);
  return d1 > d0 ? 1 : 0;
}

}  // namespace loreg
