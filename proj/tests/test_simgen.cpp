#include <doctest.h>

#include <cmath>

#include "loreg/linalg.hpp"
#include "loreg/simgen.hpp"
#include "test_util.hpp"

using namespace loreg;

TEST_CASE("band graph matches the formula") {
  Matrix b4 = gen_band(4);
  Matrix expect(4, 4, Vector{1, .5, .3, 0, .5, 1, .5, .3, .3, .5, 1, .5, 0, .3, .5, 1});
  CHECK(max_abs_diff(b4, expect) == 0.0);

  Matrix b3 = gen_band(3);
  CHECK(count_edges(b3) == 3);
  CHECK(b3(0, 2) == 0.3);

  CHECK(count_edges(gen_band(200)) == 2 * 200 - 3);
  CHECK(symmetric_eigen_extremes(gen_band(40)).first > 0.0);
  CHECK_THROWS_AS(gen_band(2), ValidationError);
}

TEST_CASE("random graph construction") {
  CounterRng rng = CounterRng::keyed(5, 0, "graph");
  Matrix omega = gen_random(12, rng);
  CHECK(symmetric_eigen_extremes(omega).first >= 0.1 - 1e-8);

  // omega minus its adjacency is a nonnegative multiple of the identity
  const double shift = omega(0, 0);
  CHECK(shift >= 0.1);
  for (int i = 0; i < 12; ++i) {
    CHECK(omega(i, i) == doctest::Approx(shift));
    for (int j = i + 1; j < 12; ++j) {
      CHECK((omega(i, j) == 0.0 || omega(i, j) == 1.0));
      CHECK(omega(i, j) == omega(j, i));
    }
  }

  // forced empty adjacency: the shift alone remains
  CounterRng rng2 = CounterRng::keyed(6, 0, "graph");
  Matrix empty = gen_random(6, rng2, 0.0);
  CHECK(max_abs_diff(empty, Matrix::diag(Vector(6, 0.1))) <= 1e-15);
}

TEST_CASE("hub graph") {
  Matrix h20 = gen_hub(20, 10);
  CHECK(count_edges(h20) == 20 - 2);
  for (int hub : {0, 10}) {
    int degree = 0;
    for (int j = 0; j < 20; ++j)
      if (j != hub && h20(hub, j) != 0.0) ++degree;
    CHECK(degree == 9);
  }
  CHECK(count_edges(gen_hub(200, 10)) == 180);
  CHECK(symmetric_eigen_extremes(h20).first >= 0.1 - 1e-8);
  CHECK_THROWS_AS(gen_hub(15, 10), IndivisibleGroups);
}

TEST_CASE("cluster graph keeps all edges inside groups") {
  CounterRng rng = CounterRng::keyed(7, 0, "graph");
  Matrix c = gen_cluster(30, rng, 10);
  for (int i = 0; i < 30; ++i)
    for (int j = i + 1; j < 30; ++j)
      if (i / 10 != j / 10) CHECK(c(i, j) == 0.0);
  CHECK(symmetric_eigen_extremes(c).first >= 0.1 - 1e-8);
  CHECK_THROWS_AS(gen_cluster(25, rng, 10), IndivisibleGroups);
}

TEST_CASE("gaussian sampler: determinism and identity covariance") {
  Matrix eye = Matrix::identity(5);
  CounterRng a = CounterRng::keyed(11, 0, "data");
  CounterRng b = CounterRng::keyed(11, 0, "data");
  Matrix xa = sample_gaussian(eye, 50, a);
  Matrix xb = sample_gaussian(eye, 50, b);
  CHECK(xa == xb);

  CounterRng c = CounterRng::keyed(11, 0, "data");
  Matrix big = sample_gaussian(eye, 10000, c);
  for (int j = 0; j < 5; ++j) {
    double s2 = 0.0;
    for (int i = 0; i < 10000; ++i) s2 += big(i, j) * big(i, j);
    s2 /= 10000;
    CHECK(s2 >= 0.9);
    CHECK(s2 <= 1.1);
  }
}

TEST_CASE("subgaussian sampler stays within the uniform bound under identity mixing") {
  Matrix eye = Matrix::identity(4);
  CounterRng rng = CounterRng::keyed(12, 0, "data");
  Matrix x = sample_subgaussian(eye, 5000, rng);
  const double bound = std::sqrt(3.0) + 1e-12;
  double var = 0.0;
  for (int i = 0; i < 5000; ++i)
    for (int j = 0; j < 4; ++j) {
      CHECK(std::fabs(x(i, j)) <= bound);
      var += x(i, j) * x(i, j);
    }
  var /= 5000.0 * 4;
  CHECK(var == doctest::Approx(1.0).epsilon(0.05));
}
