#include <doctest.h>

#include <cmath>

#include "loreg/linalg.hpp"
#include "loreg/nodewise.hpp"
#include "loreg/simgen.hpp"
#include "test_util.hpp"

using namespace loreg;
using namespace loreg::testutil;

TEST_CASE("standardize gives sqrt(n) columns and is scale invariant") {
  CounterRng rng(41);
  Matrix x = random_matrix(50, 6, rng);
  Standardized st = standardize(x);
  const double root_n = std::sqrt(50.0);
  for (int j = 0; j < 6; ++j) {
    double s = 0.0;
    for (int i = 0; i < 50; ++i) s += st.z(i, j) * st.z(i, j);
    CHECK(std::sqrt(s) == doctest::Approx(root_n).epsilon(1e-12));
  }

  Matrix scaled = x;
  for (double& v : scaled.data()) v *= 7.5;
  Standardized st2 = standardize(scaled);
  CHECK(max_abs_diff(st.z, st2.z) <= 1e-12);

  // columns already at unit sample second moment pass through unchanged
  Standardized st3 = standardize(st.z);
  CHECK(max_abs_diff(st3.z, st.z) <= 1e-12);
}

TEST_CASE("standardize rejects constant columns") {
  Matrix x(5, 2);
  for (int i = 0; i < 5; ++i) x(i, 0) = i + 1.0;
  try {
    standardize(x);
    FAIL("expected DegenerateColumn");
  } catch (const DegenerateColumn& e) {
    CHECK(e.column == 1);
  }
}

TEST_CASE("hbic closed forms and monotone likelihood") {
  CounterRng rng(42);
  const int n = 40, p = 6;
  Matrix x = random_matrix(n, p, rng);
  Standardized st = standardize(x);

  // empty support: n log(||y||^2 / n)
  double y2 = 0.0;
  for (int i = 0; i < n; ++i) y2 += x(i, 0) * x(i, 0);
  CHECK(hbic({}, 0, x, st.z) == doctest::Approx(n * std::log(y2 / n)));

  // full support vs an independent OLS
  IndexSet full{1, 2, 3, 4, 5};
  Matrix zf(n, 5);
  for (int i = 0; i < n; ++i)
    for (int a = 0; a < 5; ++a) zf(i, a) = st.z(i, full[a]);
  Matrix gram(5, 5);
  Vector rhs(5, 0.0);
  for (int a = 0; a < 5; ++a)
    for (int b = 0; b < 5; ++b) {
      double s = 0.0;
      for (int i = 0; i < n; ++i) s += zf(i, a) * zf(i, b);
      gram(a, b) = s;
    }
  for (int a = 0; a < 5; ++a)
    for (int i = 0; i < n; ++i) rhs[a] += zf(i, a) * x(i, 0);
  Vector coef = solve_spd_vec(gram, rhs);
  double rss = 0.0;
  for (int i = 0; i < n; ++i) {
    double fit = 0.0;
    for (int a = 0; a < 5; ++a) fit += zf(i, a) * coef[a];
    rss += (x(i, 0) - fit) * (x(i, 0) - fit);
  }
  const double expected =
      n * std::log(rss / n) + 5.0 * std::log(p - 1.0) * std::log(std::log(double(n)));
  CHECK(hbic(full, 0, x, st.z) == doctest::Approx(expected).epsilon(1e-10));

  // nested supports: the likelihood part can only improve
  const double pen = std::log(p - 1.0) * std::log(std::log(double(n)));
  const double l_small = (hbic({1, 2}, 0, x, st.z) - 2 * pen) / n;
  const double l_big = (hbic({1, 2, 3}, 0, x, st.z) - 3 * pen) / n;
  CHECK(l_big <= l_small + 1e-12);

  CHECK_THROWS_AS(hbic({0}, 0, x, st.z), ValidationError);  // active must exclude j
}

TEST_CASE("select_t with t_max = 0") {
  CounterRng rng(43);
  Matrix x = random_matrix(20, 4, rng);
  Standardized st = standardize(x);
  SelectResult r = select_t(1, x, st.z, 0);
  CHECK(r.t_star == 0);
  CHECK(r.trace.size() == 1);
}

TEST_CASE("fit_column_loreg with t = 0 uses the empty-support closed form") {
  CounterRng rng(44);
  Matrix x = random_matrix(30, 5, rng);
  Standardized st = standardize(x);
  ColumnEstimate ce = fit_column_loreg(2, x, st.z, st.gamma_diag, 0);
  double y2 = 0.0;
  for (int i = 0; i < 30; ++i) y2 += x(i, 2) * x(i, 2);
  CHECK(ce.sigma2 == doctest::Approx(y2 / 30));
  CHECK(ce.omega_jj == doctest::Approx(30 / y2));
  CHECK(ce.active.empty());
  for (double v : ce.omega_col) CHECK(v == 0.0);
}

TEST_CASE("precision column scales by c^-2 when the data is scaled by c") {
  CounterRng rng(45);
  Matrix x = random_matrix(60, 5, rng);
  Standardized st = standardize(x);
  ColumnEstimate base = fit_column_loreg(1, x, st.z, st.gamma_diag, 2);

  const double c = 3.7;
  Matrix xs = x;
  for (double& v : xs.data()) v *= c;
  Standardized sts = standardize(xs);
  ColumnEstimate scaled = fit_column_loreg(1, xs, sts.z, sts.gamma_diag, 2);

  CHECK(scaled.omega_jj == doctest::Approx(base.omega_jj / (c * c)).epsilon(1e-9));
  for (size_t k = 0; k < base.omega_col.size(); ++k)
    CHECK(scaled.omega_col[k] == doctest::Approx(base.omega_col[k] / (c * c)).epsilon(1e-9));
  CHECK(scaled.active == base.active);
}

TEST_CASE("bivariate gaussian recovers the closed-form 2x2 precision") {
  Matrix omega(2, 2, Vector{4.0 / 3, -2.0 / 3, -2.0 / 3, 4.0 / 3});  // inverse of [[1,.5],[.5,1]]
  CounterRng rng = CounterRng::keyed(4242, 0, "data");
  Matrix x = sample_gaussian(omega, 5000, rng);
  TuningSpec tuning;
  tuning.t_max = 1;
  PrecisionEstimate est = estimate(x, Method::Loreg, tuning);
  CHECK(max_abs_diff(est.omega_s, omega) <= 0.1);
}

TEST_CASE("population nodewise identities reconstruct omega for all graph families") {
  auto check_family = [](const Matrix& omega) {
    const int p = omega.rows();
    const Matrix sigma = spd_inverse(omega);
    Matrix rebuilt(p, p);
    for (int j = 0; j < p; ++j) {
      IndexSet rest;
      for (int i = 0; i < p; ++i)
        if (i != j) rest.push_back(i);
      Matrix s_rr = submatrix(sigma, rest, rest);
      Vector s_rj(p - 1);
      for (int a = 0; a < p - 1; ++a) s_rj[a] = sigma(rest[a], j);
      Vector alpha = solve_spd_vec(s_rr, s_rj);
      double cond = sigma(j, j);
      for (int a = 0; a < p - 1; ++a) cond -= sigma(j, rest[a]) * alpha[a];
      const double omega_jj = 1.0 / cond;
      rebuilt(j, j) = omega_jj;
      for (int a = 0; a < p - 1; ++a) rebuilt(rest[a], j) = -omega_jj * alpha[a];
    }
    CHECK(max_abs_diff(rebuilt, omega) <= 1e-8);
  };

  check_family(gen_band(12));
  CounterRng r1 = CounterRng::keyed(9, 0, "graph");
  check_family(gen_random(12, r1));
  check_family(gen_hub(20, 10));
  CounterRng r2 = CounterRng::keyed(10, 0, "graph");
  check_family(gen_cluster(20, r2, 10));
}

TEST_CASE("minimum symmetrization") {
  Matrix m(2, 2, Vector{1, 5, -2, 1});
  Matrix s = min_symmetrize(m);
  CHECK(s(0, 1) == -2.0);
  CHECK(s(1, 0) == -2.0);

  // already symmetric input is unchanged, and the rule is idempotent
  Matrix sym(3, 3, Vector{2, .5, 0, .5, 2, -.3, 0, -.3, 2});
  CHECK(max_abs_diff(min_symmetrize(sym), sym) == 0.0);
  CHECK(max_abs_diff(min_symmetrize(s), s) == 0.0);

  // magnitude never grows
  CounterRng rng(46);
  Matrix r = random_matrix(6, 6, rng);
  Matrix rs = min_symmetrize(r);
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j)
      if (i != j)
        CHECK(std::fabs(rs(i, j)) <= std::max(std::fabs(r(i, j)), std::fabs(r(j, i))));
}

TEST_CASE("estimate is deterministic across parallelism levels") {
  Matrix omega = gen_band(8);
  CounterRng rng = CounterRng::keyed(77, 0, "data");
  Matrix x = sample_gaussian(omega, 80, rng);
  TuningSpec tuning;
  tuning.t_max = 4;
  PrecisionEstimate a = estimate(x, Method::Loreg, tuning, 1);
  PrecisionEstimate b = estimate(x, Method::Loreg, tuning, 4);
  CHECK(a.omega_us == b.omega_us);
  CHECK(a.omega_s == b.omega_s);
}

TEST_CASE("symmetrized support implies membership in both active sets") {
  Matrix omega = gen_band(10);
  CounterRng rng = CounterRng::keyed(78, 0, "data");
  Matrix x = sample_gaussian(omega, 120, rng);
  TuningSpec tuning;
  tuning.t_max = 5;
  PrecisionEstimate est = estimate(x, Method::Loreg, tuning);
  for (int i = 0; i < 10; ++i)
    for (int j = 0; j < 10; ++j) {
      if (i == j || est.omega_s(i, j) == 0.0) continue;
      CHECK(index_set_contains(est.columns[j].active, i));
      CHECK(index_set_contains(est.columns[i].active, j));
    }
}

TEST_CASE("lasso column fit selects from the grid and fills the estimator fields") {
  Matrix omega = gen_band(6);
  CounterRng rng = CounterRng::keyed(79, 0, "data");
  Matrix x = sample_gaussian(omega, 200, rng);
  Standardized st = standardize(x);
  ColumnEstimate ce = fit_column_lasso(2, x, st.z, st.gamma_diag, default_lambda_grid());
  CHECK(ce.sigma2 > 0.0);
  CHECK(ce.omega_jj == doctest::Approx(1.0 / ce.sigma2));
  CHECK(ce.chosen_t >= 0.02);
  CHECK(ce.chosen_t <= 2.0);
  for (int a : ce.active) CHECK(a != 2);

  PrecisionEstimate est = estimate(x, Method::Lasso, TuningSpec{});
  CHECK(max_abs_diff(est.omega_s, transpose(est.omega_s)) == 0.0);
}

TEST_CASE("auto_t_max matches the documented arithmetic") {
  // floor(112 / (log(300) * log(log 112))) = 12
  CHECK(auto_t_max(112, 300) == 12);
  CHECK(auto_t_max(400, 200) ==
        static_cast<int>(std::floor(400.0 / (std::log(200.0) * std::log(std::log(400.0))))));
}

TEST_CASE("estimate validates its inputs") {
  Matrix tiny(2, 3);
  CHECK_THROWS_AS(estimate(tiny, Method::Loreg, TuningSpec{}), ValidationError);
}
