#pragma once

#include <string>
#include <utility>
#include <vector>

#include "loreg/matrix.hpp"

namespace loreg {

struct LossReport {
  double l1 = 0.0;        // max column absolute sum of est - truth
  double spectral = 0.0;
  double frobenius = 0.0;
  double max = 0.0;
};

LossReport norm_losses(const Matrix& est, const Matrix& truth);

struct SupportReport {
  long tp = 0, tn = 0, fp = 0, fn = 0;  // over ordered off-diagonal entries
  double precision = 0.0;
  double sensitivity = 0.0;
  double specificity = 0.0;
  double mcc = 0.0;
  bool degenerate = false;  // some ratio had a zero denominator and was set to 0
};

/// Off-diagonal support recovery; an entry counts as nonzero when its
/// magnitude exceeds `threshold` (default: exact zeros).
SupportReport support_metrics(const Matrix& est, const Matrix& truth, double threshold = 0.0);

struct EntryNormality {
  int i = 0, j = 0;
  double true_length = 0.0;  // NaN when no population sigma was supplied
  double avg_length = 0.0;
  double cov_rate = 0.0;
  double abs_avg_z = 0.0;
  double sd_z = 0.0;
  int dropped = 0;  // replications with undefined variance at this entry
};

struct NormalityReport {
  std::string entry_set;
  int replications = 0;
  double alpha = 0.05;
  std::vector<EntryNormality> entries;
  // mean / sd over entries, in the order (TrueLength, AvgLength, CovRate, AbsAvgZ, SDZ)
  double mean[5] = {0, 0, 0, 0, 0};
  double sd[5] = {0, 0, 0, 0, 0};
};

/// Per-entry confidence-interval and Z-score diagnostics over M replications.
/// points[m] and variances[m] are the m-th replication's point estimates and
/// per-entry variance estimates (NaN variance drops that replication for the
/// entry). sigma_true supplies the population sigma per entry for TrueLength
/// (NaN entries leave TrueLength undefined).
NormalityReport normality_metrics(const std::vector<const Matrix*>& points,
                                  const std::vector<const Matrix*>& variances,
                                  const Matrix& truth, const Matrix& sigma_true, int n,
                                  double alpha, const std::string& entry_set_name,
                                  const std::vector<std::pair<int, int>>& entries);

struct LdaModel {
  Matrix omega;
  Vector mean0, mean1;
  double prior0 = 0.5, prior1 = 0.5;
};

/// delta_k(x) = x^T Omega mu_k - mu_k^T Omega mu_k / 2 + log pi_k.
std::pair<double, double> lda_scores(const Vector& x, const LdaModel& model);

/// 1 when delta_1 > delta_0, otherwise 0 (ties go to class 0).
int lda_classify(const Vector& x, const LdaModel& model);

}  // namespace loreg
