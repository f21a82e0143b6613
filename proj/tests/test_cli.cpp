#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "loreg/linalg.hpp"
#include "loreg/matrix.hpp"
#include "loreg/rng.hpp"
#include "loreg/simgen.hpp"
#include "test_util.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace loreg;
using namespace loreg::testutil;

namespace {

int run_cli(const std::string& args) {
  const std::string cmd = std::string(LOREG_CLI_PATH) + " " + args + " > /dev/null";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Workdir {
  fs::path root;
  explicit Workdir(const std::string& name) : root(fs::path("cli_work") / name) {
    fs::remove_all(root);
    fs::create_directories(root);
  }
  std::string operator/(const std::string& rel) const { return (root / rel).string(); }
};

}  // namespace

TEST_CASE("simulate is byte-for-byte deterministic under a fixed seed") {
  Workdir wd("determinism");
  const json spec{{"schema_version", 1},
                  {"graph", {{"family", "band"}, {"p", 20}, {"seed", 3}}},
                  {"distribution", "gaussian"},
                  {"n", 100},
                  {"replications", 3},
                  {"methods", json::array({{{"estimator", "loreg"}, {"variant", "omega_s"}}})},
                  {"seed", 5},
                  {"parallelism", 2}};
  std::ofstream(wd / "spec.json") << spec.dump(2);
  REQUIRE(run_cli("simulate " + (wd / "spec.json") + " --out " + (wd / "run1")) == 0);
  REQUIRE(run_cli("simulate " + (wd / "spec.json") + " --out " + (wd / "run2")) == 0);
  CHECK(slurp(wd / "run1/metrics.json") == slurp(wd / "run2/metrics.json"));
  CHECK(slurp(wd / "run1/rep_000/loreg_omega_s.csv") == slurp(wd / "run2/rep_000/loreg_omega_s.csv"));
  CHECK(slurp(wd / "run1/rep_002/loreg_omega_us.csv") == slurp(wd / "run2/rep_002/loreg_omega_us.csv"));
  CHECK(fs::exists(wd / "run1/manifest.json"));
  CHECK(fs::exists(wd / "run1/losses.csv"));

  // the manifest records the graph: band p=20 has 2p-3 = 37 edges
  const json metrics = json::parse(slurp(wd / "run1/metrics.json"));
  CHECK(metrics.at("graph").at("edges").get<int>() == 37);
}

TEST_CASE("simulate rejects unknown spec fields") {
  Workdir wd("badspec");
  const json spec{{"schema_version", 1},
                  {"graph", {{"family", "band"}, {"p", 20}}},
                  {"n", 100},
                  {"replicas", 3}};  // typo
  std::ofstream(wd / "spec.json") << spec.dump(2);
  CHECK(run_cli("simulate " + (wd / "spec.json") + " --out " + (wd / "run")) == 1);
}

TEST_CASE("estimate on a two-column toy") {
  Workdir wd("toy");
  CounterRng rng(17);
  Matrix x = random_matrix(30, 2, rng);
  write_csv_matrix(wd / "data.csv", x);
  REQUIRE(run_cli("estimate " + (wd / "data.csv") + " --out " + (wd / "est")) == 0);
  Matrix omega = read_csv_matrix(wd / "est/omega_s.csv");
  CHECK(omega.rows() == 2);
  CHECK(omega.cols() == 2);
  CHECK(fs::exists(wd / "est/columns.json"));
  CHECK(fs::exists(wd / "est/manifest.json"));
}

TEST_CASE("--center equals estimating pre-centered data") {
  Workdir wd("center");
  CounterRng rng(18);
  Matrix x = random_matrix(40, 3, rng);
  for (int i = 0; i < 40; ++i) {
    x(i, 0) += 5.0;
    x(i, 1) -= 2.0;
  }
  write_csv_matrix(wd / "raw.csv", x);
  Matrix centered = x;
  for (int j = 0; j < 3; ++j) {
    double mean = 0.0;
    for (int i = 0; i < 40; ++i) mean += x(i, j);
    mean /= 40;
    for (int i = 0; i < 40; ++i) centered(i, j) -= mean;
  }
  write_csv_matrix(wd / "centered.csv", centered);
  REQUIRE(run_cli("estimate " + (wd / "raw.csv") + " --center --out " + (wd / "a")) == 0);
  REQUIRE(run_cli("estimate " + (wd / "centered.csv") + " --out " + (wd / "b")) == 0);
  CHECK(slurp(wd / "a/omega_s.csv") == slurp(wd / "b/omega_s.csv"));
}

TEST_CASE("--t-max auto caps the per-column scan") {
  Workdir wd("auto");
  CounterRng rng(19);
  Matrix x = random_matrix(112, 300, rng);
  write_csv_matrix(wd / "data.csv", x);
  REQUIRE(run_cli("estimate " + (wd / "data.csv") + " --t-max auto --out " + (wd / "est")) == 0);
  const json cols = json::parse(slurp(wd / "est/columns.json"));
  // floor(112 / (log 300 * log log 112)) = 12: candidates are T = 0..12
  for (const auto& c : cols.at("columns")) {
    CHECK(c.at("trace").size() <= 13);
    CHECK(c.at("chosen").get<double>() <= 12.0);
  }
}

TEST_CASE("infer reproduces the desparsify identity on an exact inverse") {
  Workdir wd("infer");
  const int n = 50, p = 5;
  Matrix omega_pop = gen_band(p);
  CounterRng rng = CounterRng::keyed(20, 0, "data");
  Matrix x = sample_gaussian(omega_pop, n, rng);
  write_csv_matrix(wd / "data.csv", x);

  // craft an estimate directory whose omega is exactly the inverse sample
  // covariance, with full active sets
  Matrix sigma_hat = sample_covariance(x);
  Matrix omega = spd_inverse(sigma_hat);
  fs::create_directories(wd / "est");
  write_csv_matrix(wd / "est/omega_us.csv", omega);
  write_csv_matrix(wd / "est/omega_s.csv", omega);
  json cols{{"schema_version", 1}, {"method", "loreg"}, {"p", p}, {"centered", false}};
  cols["columns"] = json::array();
  for (int j = 0; j < p; ++j) {
    IndexSet active;
    for (int i = 0; i < p; ++i)
      if (i != j) active.push_back(i);
    cols["columns"].push_back({{"j", j},
                               {"active", active},
                               {"sigma2", 1.0 / omega(j, j)},
                               {"omega_jj", omega(j, j)}});
  }
  std::ofstream(wd / "est/columns.json") << cols.dump(2);

  REQUIRE(run_cli("infer --estimate-dir " + (wd / "est") + " --data " + (wd / "data.csv") +
                  " --point t_hat --kind gaussian --out " + (wd / "out")) == 0);
  Matrix t_hat = read_csv_matrix(wd / "out/t_hat.csv");
  CHECK(max_abs_diff(t_hat, omega) <= 1e-8);
  CHECK(fs::exists(wd / "out/zscores.csv"));
  CHECK(fs::exists(wd / "out/inference.json"));
}

TEST_CASE("infer with a zero off-diagonal estimate thresholds to the diagonal") {
  Workdir wd("thresh");
  const int n = 40, p = 4;
  CounterRng rng(21);
  Matrix x = random_matrix(n, p, rng);
  write_csv_matrix(wd / "data.csv", x);

  fs::create_directories(wd / "est");
  Matrix eye = Matrix::identity(p);
  write_csv_matrix(wd / "est/omega_us.csv", eye);
  write_csv_matrix(wd / "est/omega_s.csv", eye);
  json cols{{"schema_version", 1}, {"method", "loreg"}, {"p", p}, {"centered", false}};
  cols["columns"] = json::array();
  for (int j = 0; j < p; ++j)
    cols["columns"].push_back(
        {{"j", j}, {"active", IndexSet{}}, {"sigma2", 1.0}, {"omega_jj", 1.0}});
  std::ofstream(wd / "est/columns.json") << cols.dump(2);

  REQUIRE(run_cli("infer --estimate-dir " + (wd / "est") + " --data " + (wd / "data.csv") +
                  " --point omega_us --fdr 0.05 --out " + (wd / "out")) == 0);
  Matrix thr = read_csv_matrix(wd / "out/thresholded.csv");
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < p; ++j) CHECK(thr(i, j) == (i == j ? 1.0 : 0.0));
}

TEST_CASE("evaluate on an exact estimate and on simulation artifacts") {
  Workdir wd("evaluate");
  Matrix truth = gen_band(10);
  write_csv_matrix(wd / "truth.csv", truth);
  write_csv_matrix(wd / "est.csv", truth);
  REQUIRE(run_cli("evaluate --est " + (wd / "est.csv") + " --truth " + (wd / "truth.csv") +
                  " --out " + (wd / "out")) == 0);
  const json losses = json::parse(slurp(wd / "out/losses.json"));
  CHECK(losses.at("frobenius").get<double>() == 0.0);
  const json supp = json::parse(slurp(wd / "out/support.json"));
  CHECK(supp.at("mcc").get<double>() == 1.0);

  // a single-replication run reproduces its own internal report
  const json spec{{"schema_version", 1},
                  {"graph", {{"family", "band"}, {"p", 10}, {"seed", 1}}},
                  {"n", 60},
                  {"replications", 1},
                  {"methods", json::array({{{"estimator", "loreg"}, {"variant", "omega_s"}}})},
                  {"seed", 9}};
  std::ofstream(wd / "spec.json") << spec.dump(2);
  REQUIRE(run_cli("simulate " + (wd / "spec.json") + " --out " + (wd / "run")) == 0);
  REQUIRE(run_cli("evaluate --est " + (wd / "run/rep_000/loreg_omega_s.csv") + " --truth " +
                  (wd / "run/omega_truth.csv") + " --out " + (wd / "out2")) == 0);
  const json metrics = json::parse(slurp(wd / "run/metrics.json"));
  const json ev = json::parse(slurp(wd / "out2/losses.json"));
  const double reported =
      metrics.at("methods")[0].at("losses").at("frobenius").at("mean").get<double>();
  CHECK(ev.at("frobenius").get<double>() == reported);
}

TEST_CASE("exit codes distinguish validation from io failures") {
  Workdir wd("exitcodes");
  {
    std::ofstream out(wd / "bad.csv");
    out << "1,2\n3,oops\n";
  }
  CHECK(run_cli("estimate " + (wd / "bad.csv") + " --out " + (wd / "x")) == 1);
  CHECK(run_cli("estimate " + (wd / "missing.csv") + " --out " + (wd / "x")) == 3);
  CHECK(run_cli("--version") == 0);
  CHECK(run_cli("estimate") == 1);  // missing required positional
}
