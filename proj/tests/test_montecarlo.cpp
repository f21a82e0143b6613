#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "loreg/inference.hpp"
#include "loreg/linalg.hpp"
#include "loreg/metrics.hpp"
#include "loreg/nodewise.hpp"
#include "loreg/sim.hpp"
#include "loreg/simgen.hpp"
#include "test_util.hpp"

using namespace loreg;

// Seeded Monte Carlo properties. Each case fixes its seeds, so the observed
// counts are deterministic; the asserted margins leave room against seed
// sensitivity if constants elsewhere change.

// Note on calibration: the HBIC penalty |A| log(p-1) log(log n) sits below
// the expected best-of-(p-1) chi-square gain 2 log(p-1) whenever
// log(log n) < 2, so a pure-noise column picks a small positive T in a
// sizable fraction of draws at any desk-scale n. The counts asserted below
// were measured from these seeded runs; symmetrization removes most of the
// per-column false positives downstream.
TEST_CASE("hbic keeps pure-noise columns near the empty model") {
  const int n = 200, p = 10;
  int zero_count = 0, small_count = 0;
  for (int seed = 0; seed < 100; ++seed) {
    CounterRng rng = CounterRng::keyed(1000 + seed, 0, "data");
    Matrix x = sample_gaussian(Matrix::identity(p), n, rng);
    Standardized st = standardize(x);
    SelectResult sel = select_t(0, x, st.z, 8);
    if (sel.t_star == 0) ++zero_count;
    if (sel.t_star <= 3) ++small_count;
  }
  CHECK(zero_count >= 35);   // measured 50
  CHECK(small_count >= 90);  // measured 99
}

TEST_CASE("hbic never underselects interior band columns and mostly hits the size") {
  const int n = 400, p = 50, j = 25;
  Matrix omega = gen_band(p);
  int exact = 0, at_least = 0, small = 0;
  for (int seed = 0; seed < 100; ++seed) {
    CounterRng rng = CounterRng::keyed(2000 + seed, 0, "data");
    Matrix x = sample_gaussian(omega, n, rng);
    Standardized st = standardize(x);
    SelectResult sel = select_t(j, x, st.z, 10);
    if (sel.t_star == 4) ++exact;  // interior columns have 4 band neighbors
    if (sel.t_star >= 4) ++at_least;
    if (sel.t_star <= 7) ++small;
  }
  CHECK(at_least >= 98);  // measured 100
  CHECK(exact >= 45);     // measured 59: overselection by one is common
  CHECK(small >= 95);     // measured 100
}

TEST_CASE("sparsistency: no missed edges and few false edges after symmetrization") {
  const int n = 400, p = 50;
  Matrix omega = gen_band(p);
  TuningSpec tuning;
  tuning.t_max = 20;
  int exact = 0, no_missed = 0, few_false = 0;
  for (int seed = 0; seed < 100; ++seed) {
    CounterRng rng = CounterRng::keyed(3000 + seed, 0, "data");
    Matrix x = sample_gaussian(omega, n, rng);
    PrecisionEstimate est = estimate(x, Method::Loreg, tuning);
    SupportReport r = support_metrics(est.omega_s, omega);
    if (r.fn == 0 && r.fp == 0) ++exact;
    if (r.fn == 0) ++no_missed;
    if (r.fp <= 6) ++few_false;  // at most 3 false undirected edges
  }
  CHECK(no_missed >= 98);  // measured 100
  CHECK(few_false >= 95);  // measured 97
  CHECK(exact >= 25);      // measured 32
}

TEST_CASE("oracle-variance confidence intervals cover at the nominal rate") {
  // The asymptotic normality is stated on the event that the fitted active
  // set covers the true one, so replications that miss it are excluded
  // (measured exclusion rate ~6% at n=800).
  const int n = 800, p = 20, reps = 400;
  const int j = 10;
  const IndexSet true_active{8, 9, 11, 12};
  Matrix omega = gen_band(p);
  const Matrix sigma_pop = spd_inverse(omega);
  const Matrix sigma_true = population_sigma_undesp(sigma_pop, omega, Dist::Gaussian);

  Matrix oracle_var(p, p);
  for (int a = 0; a < p; ++a)
    for (int b = 0; b < p; ++b) {
      const double s = sigma_true(a, b);
      oracle_var(a, b) = std::isnan(s) ? std::numeric_limits<double>::quiet_NaN() : s * s;
    }
  std::vector<Matrix> points;
  int skipped = 0;
  for (int rep = 0; rep < reps; ++rep) {
    CounterRng rng = CounterRng::keyed(4000, rep, "data");
    Matrix x = sample_gaussian(omega, n, rng);
    Standardized st = standardize(x);
    ColumnEstimate ce = fit_column_loreg(j, x, st.z, st.gamma_diag, 4);
    if (ce.active != true_active) {
      ++skipped;
      continue;
    }
    Matrix pt(p, p);
    pt(9, j) = ce.omega_col[9];
    points.push_back(std::move(pt));
  }
  CHECK(skipped <= 40);
  std::vector<const Matrix*> pp, vv;
  for (const Matrix& m : points) {
    pp.push_back(&m);
    vv.push_back(&oracle_var);
  }
  NormalityReport rep = normality_metrics(pp, vv, omega, sigma_true, n, 0.05, "oracle", {{9, 10}});
  REQUIRE(rep.entries.size() == 1);
  CHECK(rep.entries[0].cov_rate >= 0.93);
  CHECK(rep.entries[0].cov_rate <= 0.97);
  CHECK(rep.entries[0].sd_z >= 0.9);
  CHECK(rep.entries[0].sd_z <= 1.1);
  CHECK(rep.entries[0].dropped == 0);
}

TEST_CASE("sample covariance of both samplers converges to the population") {
  const int p = 10, n = 200000;
  Matrix omega = gen_band(p);
  Matrix sigma = spd_inverse(omega);

  CounterRng g = CounterRng::keyed(5000, 0, "data");
  CHECK(max_abs_diff(sample_covariance(sample_gaussian(omega, n, g)), sigma) <= 0.05);

  CounterRng u = CounterRng::keyed(5001, 0, "data");
  CHECK(max_abs_diff(sample_covariance(sample_subgaussian(omega, n, u)), sigma) <= 0.05);
}

TEST_CASE("random graph mean edge count matches the binomial expectation") {
  const int p = 5, seeds = 200;
  double total = 0.0;
  for (int s = 0; s < seeds; ++s) {
    CounterRng rng = CounterRng::keyed(6000 + s, 0, "graph");
    Matrix omega = gen_random(p, rng);
    total += count_edges(omega);
    CHECK(symmetric_eigen_extremes(omega).first >= 0.1 - 1e-8);
  }
  const double mean = total / seeds;
  // 10 candidate pairs at prob 4/5: sd per draw ~1.265, 3 SE over 200 seeds
  const double se = std::sqrt(10 * 0.8 * 0.2) / std::sqrt(double(seeds));
  CHECK(std::fabs(mean - 8.0) <= 3 * se);
}

TEST_CASE("general and gaussian variance estimators agree on large samples") {
  const int p = 8, n = 20000;
  Matrix omega = gen_band(p);
  CounterRng rng = CounterRng::keyed(7000, 0, "data");
  Matrix x = sample_gaussian(omega, n, rng);
  TuningSpec tuning;
  tuning.t_max = p - 1;
  PrecisionEstimate est = estimate(x, Method::Loreg, tuning);

  Matrix v12 = variance_matrix(est, x, VarianceKind::UndespGeneral);
  Matrix v13 = variance_matrix(est, x, VarianceKind::UndespGaussian);
  std::vector<double> gaps;
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < p; ++j)
      if (!std::isnan(v12(i, j)) && !std::isnan(v13(i, j)))
        gaps.push_back(std::fabs(v12(i, j) - v13(i, j)) / v13(i, j));
  REQUIRE(!gaps.empty());
  std::sort(gaps.begin(), gaps.end());
  CHECK(gaps[gaps.size() / 2] <= 0.10);

  Matrix d18 = variance_matrix(est, x, VarianceKind::DespGeneral);
  Matrix d19 = variance_matrix(est, x, VarianceKind::DespGaussian);
  std::vector<double> dgaps;
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < p; ++j) dgaps.push_back(std::fabs(d18(i, j) - d19(i, j)) / d19(i, j));
  std::sort(dgaps.begin(), dgaps.end());
  CHECK(dgaps[dgaps.size() / 2] <= 0.10);
}

TEST_CASE("thresholding omega_s does not lose support quality") {
  SimulationSpec spec;
  spec.graph.family = GraphFamily::Band;
  spec.graph.p = 50;
  spec.distribution = Dist::Gaussian;
  spec.n = 400;
  spec.replications = 20;
  spec.methods = {{Method::Loreg, Variant::OmegaS}, {Method::Loreg, Variant::ThrSZUs}};
  spec.seed = 8000;
  spec.parallelism = 1;
  SimulationResult result = run_simulation(spec);
  REQUIRE(result.rows.size() == 2);
  const double mcc_plain = result.rows[0].supp_mean[3];
  const double mcc_thresh = result.rows[1].supp_mean[3];
  CHECK(mcc_thresh >= mcc_plain - 0.02);
}
