#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>

#include "loreg/matrix.hpp"
#include "loreg/rng.hpp"
#include "test_util.hpp"

using namespace loreg;

TEST_CASE("matrix construction validates shape and finiteness") {
  CHECK_THROWS_AS(Matrix(0, 3), DimensionMismatch);
  CHECK_THROWS_AS(Matrix(2, 2, Vector{1, 2, 3}), DimensionMismatch);
  CHECK_THROWS_AS(Matrix(1, 2, Vector{1.0, std::nan("")}), ValidationError);
  Matrix m(2, 2, Vector{1, 2, 3, 4});
  CHECK(m(1, 0) == 3.0);
}

TEST_CASE("index set validation") {
  CHECK_NOTHROW(validate_index_set({0, 2, 5}, 6));
  CHECK_THROWS_AS(validate_index_set({0, 0}, 3), ValidationError);
  CHECK_THROWS_AS(validate_index_set({2, 1}, 3), ValidationError);
  CHECK_THROWS_AS(validate_index_set({3}, 3), ValidationError);
  CHECK(index_set_contains({1, 4}, 4));
  CHECK_FALSE(index_set_contains({1, 4}, 2));
}

TEST_CASE("csv round trip preserves doubles exactly") {
  CounterRng rng(7);
  Matrix m(5, 4);
  for (double& v : m.data()) v = rng.next_normal() * std::pow(10.0, rng.next_uniform(-20, 20));
  m(0, 0) = 1.0 / 3.0;
  m(0, 1) = -2.5e-300;
  m(0, 2) = 0.1 + 0.2;
  const std::string path = "csv_roundtrip_test.csv";
  write_csv_matrix(path, m);
  Matrix back = read_csv_matrix(path);
  REQUIRE(back.rows() == m.rows());
  REQUIRE(back.cols() == m.cols());
  CHECK(back == m);
  std::remove(path.c_str());
}

TEST_CASE("csv header flag") {
  const std::string path = "csv_header_test.csv";
  Matrix m(2, 2, Vector{1, 2, 3, 4});
  write_csv_matrix(path, m, true);
  Matrix back = read_csv_matrix(path, true);
  CHECK(back == m);
  CHECK_THROWS_AS(read_csv_matrix(path, false), ValidationError);  // header not numeric
  std::remove(path.c_str());
}

TEST_CASE("csv parse errors name the location") {
  const std::string path = "csv_bad_test.csv";
  {
    std::ofstream out(path);
    out << "1,2\n3,oops\n";
  }
  try {
    read_csv_matrix(path);
    FAIL("expected a parse error");
  } catch (const ValidationError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("row 2") != std::string::npos);
    CHECK(msg.find("column 2") != std::string::npos);
  }
  {
    std::ofstream out(path);
    out << "1,2\n3\n";
  }
  CHECK_THROWS_AS(read_csv_matrix(path), ValidationError);
  std::remove(path.c_str());
}

TEST_CASE("counter rng is reproducible and stream-keyed") {
  CounterRng a = CounterRng::keyed(42, 3, "data");
  CounterRng b = CounterRng::keyed(42, 3, "data");
  for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());

  CounterRng c = CounterRng::keyed(42, 3, "graph");
  CounterRng d = CounterRng::keyed(42, 4, "data");
  CHECK(CounterRng::keyed(42, 3, "data").next_u64() != c.next_u64());
  CHECK(CounterRng::keyed(42, 3, "data").next_u64() != d.next_u64());
}

TEST_CASE("rng uniform and normal moments") {
  CounterRng rng(123);
  const int n = 200000;
  double sum = 0.0, sum2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double u = rng.next_unit();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    sum += u;
    sum2 += u * u;
  }
  CHECK(std::fabs(sum / n - 0.5) < 0.005);
  CHECK(std::fabs(sum2 / n - 1.0 / 3.0) < 0.005);

  double nsum = 0.0, nsum2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double z = rng.next_normal();
    nsum += z;
    nsum2 += z * z;
  }
  CHECK(std::fabs(nsum / n) < 0.01);
  CHECK(std::fabs(nsum2 / n - 1.0) < 0.02);
}

TEST_CASE("fnv1a64 matches the reference vectors") {
  CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
  CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
  CHECK(fnv1a64("foobar") == 0x85944171f73967e8ULL);
}
