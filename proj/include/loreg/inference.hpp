#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "loreg/matrix.hpp"
#include "loreg/nodewise.hpp"

namespace loreg {

// Which asymptotic-variance estimator fills the per-entry variances.
// "Undesp" forms are defined only for entries (i,j) with i in the column-j
// augmented active set; "Desp" forms are defined everywhere.
enum class VarianceKind { UndespGaussian, UndespGeneral, DespGaussian, DespGeneral };

enum class PointSource { OmegaUS, OmegaS, That };

/// omega + omega^T - omega^T sigma_hat omega.
Matrix desparsify(const Matrix& omega, const Matrix& sigma_hat);

/// Closed Gaussian form on the a_plus submatrix of sigma_hat; i and j must
/// both lie in a_plus.
double var_undesp_gaussian(const Matrix& sigma_hat, const IndexSet& a_plus, int i, int j);

/// Sample-moment form; may come out nonpositive in finite samples, in which
/// case it is floored at 1e-10 and *floored is set.
double var_undesp_general(const Matrix& x, const Matrix& sigma_hat, const IndexSet& a_plus,
                          int i, int j, const Matrix& omega, bool* floored = nullptr);

double var_desp_gaussian(const Matrix& omega, int i, int j);

double var_desp_general(const Matrix& x, const Matrix& omega, int i, int j,
                        bool* floored = nullptr);

/// Per-entry variance matrix in column orientation: entry (i,j) uses column
/// j's active set. Undefined entries are NaN. For Desp kinds every entry is
/// defined.
Matrix variance_matrix(const PrecisionEstimate& est, const Matrix& x, VarianceKind kind,
                       int* floored_count = nullptr, int* undefined_count = nullptr);

struct InferenceResult {
  Matrix point;       // point estimates the intervals are centered on
  Matrix var_matrix;  // sigma^2 estimates; NaN where undefined
  Matrix z_scores;    // sqrt(n) * point / sigma under H0: Omega_ij = 0
  Matrix ci_low, ci_high;
  std::optional<Matrix> t_hat;
  VarianceKind kind = VarianceKind::DespGaussian;
  PointSource point_source = PointSource::OmegaS;
  int n = 0;
  double alpha_level = 0.05;
  int undefined_count = 0;
  int floored_count = 0;

  bool defined(int i, int j) const;
};

/// Fills variances, Z-scores and confidence bounds for the chosen point
/// estimator. For Undesp kinds each off-diagonal pair is oriented: (i,j) with
/// i < j uses column j when defined there, otherwise column i, otherwise the
/// pair is undefined; both entries of the pair then carry the oriented values.
InferenceResult build_inference(const PrecisionEstimate& est, const Matrix& x,
                                VarianceKind kind, PointSource point, double alpha_level);

struct ThresholdSpec {
  PointSource value_source = PointSource::OmegaS;    // M1
  PointSource z_source = PointSource::OmegaUS;       // M2
  PointSource support_source = PointSource::OmegaS;  // M3
  double fdr_level = 0.05;
};

struct ThresholdOutcome {
  Matrix thresholded;
  int tested = 0;
  int rejected = 0;
  int undefined = 0;  // tested entries with no usable variance (never rejected)
  std::vector<std::pair<int, int>> rejected_entries;  // (i, j) with i > j
};

/// Multiple-testing threshold: tests H0: Omega_ij = 0 at every off-diagonal
/// lower-triangular support entry of m3 using the Z-scores of z_inf, keeps m1
/// values at rejected locations plus the diagonal, and zeroes the rest.
/// P-values are 2(1 - Phi(|z|)) with Benjamini-Hochberg control at fdr_level.
ThresholdOutcome apply_threshold(const Matrix& m1, const InferenceResult& z_inf,
                                 const Matrix& m3, double fdr_level);

/// Benjamini-Hochberg step-up rule; returns the sorted rejected indices.
std::vector<int> bh_fdr(const std::vector<double>& pvalues, double q);

struct VarOrderCheck {
  double lhs = 0.0;  // population variance of the undesparsified estimator
  double rhs = 0.0;  // population variance of the desparsified estimator
  bool ok = false;   // lhs <= rhs + 1e-10
};

/// Population-level comparison of the two asymptotic variances for Gaussian
/// data; both sides are evaluated in closed form from the true covariance.
VarOrderCheck variance_ordering_check(const Matrix& sigma_true, const IndexSet& a_plus,
                                      int i, int j);

double normal_cdf(double z);

/// Inverse standard normal CDF (Wichura's PPND16 rational approximation).
double normal_quantile(double p);

}  // namespace loreg
