#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "loreg/inference.hpp"
#include "loreg/lasso.hpp"
#include "loreg/linalg.hpp"
#include "loreg/matrix.hpp"
#include "loreg/metrics.hpp"
#include "loreg/nodewise.hpp"
#include "loreg/rng.hpp"
#include "loreg/sim.hpp"
#include "loreg/version.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace loreg;

namespace {

std::string iso_now() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string file_checksum(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string() + " for checksum");
  std::ostringstream ss;
  ss << in.rdbuf();
  const std::string bytes = ss.str();
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(fnv1a64(bytes)));
  return buf;
}

void write_json_file(const fs::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  out << j.dump(2) << '\n';
}

json read_json_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
}

// NaN-tolerant writer for variance matrices with undefined entries.
void write_csv_allow_nan(const fs::path& path, const Matrix& m) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) {
      if (j) out << ',';
      const double v = m(i, j);
      out << (std::isnan(v) ? std::string("nan") : format_double(v));
    }
    out << '\n';
  }
}

Matrix read_csv_allow_nan(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream ls(line);
    std::string field;
    while (std::getline(ls, field, ',')) {
      if (field == "nan") {
        row.push_back(std::numeric_limits<double>::quiet_NaN());
      } else {
        row.push_back(std::stod(field));
      }
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ValidationError(path.string() + ": no data rows");
  Matrix m(static_cast<int>(rows.size()), static_cast<int>(rows.front().size()));
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < rows[i].size(); ++j)
      m(static_cast<int>(i), static_cast<int>(j)) = rows[i][j];
  return m;
}

Matrix center_columns(const Matrix& x) {
  Matrix out = x;
  for (int j = 0; j < x.cols(); ++j) {
    double mean = 0.0;
    for (int i = 0; i < x.rows(); ++i) mean += x(i, j);
    mean /= x.rows();
    for (int i = 0; i < x.rows(); ++i) out(i, j) -= mean;
  }
  return out;
}

json columns_to_json(const PrecisionEstimate& est, bool centered) {
  json cols = json::array();
  for (const auto& ce : est.columns) {
    json trace = json::array();
    for (const auto& [t, h] : ce.trace) trace.push_back({t, h});
    cols.push_back({{"j", ce.j},
                    {"chosen", ce.chosen_t},
                    {"sigma2", ce.sigma2},
                    {"omega_jj", ce.omega_jj},
                    {"active", ce.active},
                    {"hbic", ce.hbic_value},
                    {"variance_floored", ce.variance_floored},
                    {"note", ce.note},
                    {"trace", trace}});
  }
  return json{{"schema_version", 1},
              {"method", est.method == Method::Loreg ? "loreg" : "lasso"},
              {"p", est.omega_us.rows()},
              {"centered", centered},
              {"gamma_diag", est.gamma_diag},
              {"columns", cols}};
}

struct ManifestBuilder {
  json files = json::array();
  void add(const fs::path& path, const fs::path& rel) {
    files.push_back({{"path", rel.string()}, {"fnv1a64", file_checksum(path)}});
  }
  json finish(const std::string& command, uint64_t spec_hash,
              const std::vector<uint64_t>& rep_keys = {}) const {
    char hex[20];
    std::snprintf(hex, sizeof(hex), "%016llx", static_cast<unsigned long long>(spec_hash));
    json m{{"version", kVersion},
           {"command", command},
           {"created", iso_now()},
           {"spec_hash", hex},
           {"files", files}};
    if (!rep_keys.empty()) m["replication_keys"] = rep_keys;
    return m;
  }
};

int cmd_simulate(const std::string& spec_path, const std::string& out_dir, int parallelism,
                 bool skip_estimates) {
  SimulationSpec spec = simulation_spec_from_json(read_json_file(spec_path));
  if (parallelism > 0) spec.parallelism = parallelism;
  fs::create_directories(out_dir);

  ManifestBuilder manifest;
  const fs::path root(out_dir);

  RepSink sink;
  if (!skip_estimates) {
    sink = [&](const ReplicationOutput& rep) {
      char name[32];
      std::snprintf(name, sizeof(name), "rep_%03d", rep.rep);
      const fs::path dir = root / name;
      fs::create_directories(dir);
      if (rep.loreg) {
        write_csv_matrix((dir / "loreg_omega_s.csv").string(), rep.loreg->omega_s);
        write_csv_matrix((dir / "loreg_omega_us.csv").string(), rep.loreg->omega_us);
        write_json_file(dir / "loreg_columns.json", columns_to_json(*rep.loreg, false));
      }
      if (rep.lasso) {
        write_csv_matrix((dir / "lasso_omega_s.csv").string(), rep.lasso->omega_s);
        write_csv_matrix((dir / "lasso_omega_us.csv").string(), rep.lasso->omega_us);
        write_json_file(dir / "lasso_columns.json", columns_to_json(*rep.lasso, false));
      }
      if (rep.us_variances) write_csv_allow_nan(dir / "variances_us.csv", *rep.us_variances);
    };
  }

  const SimulationResult result = run_simulation(spec, sink);

  write_csv_matrix((root / "omega_truth.csv").string(), result.omega_truth);
  write_json_file(root / "metrics.json", simulation_report_json(result));
  write_simulation_csv_tables(result, out_dir);

  manifest.add(root / "omega_truth.csv", "omega_truth.csv");
  manifest.add(root / "metrics.json", "metrics.json");
  manifest.add(root / "losses.csv", "losses.csv");
  manifest.add(root / "support.csv", "support.csv");
  if (fs::exists(root / "normality.csv")) manifest.add(root / "normality.csv", "normality.csv");
  if (!skip_estimates) {
    for (int r = 0; r < spec.replications; ++r) {
      char name[32];
      std::snprintf(name, sizeof(name), "rep_%03d", r);
      for (const auto& entry : fs::directory_iterator(root / name))
        manifest.add(entry.path(), fs::path(name) / entry.path().filename());
    }
  }
  std::vector<uint64_t> rep_keys;
  for (int r = 0; r < spec.replications; ++r)
    rep_keys.push_back(CounterRng::keyed(spec.seed, r, "data").key());
  write_json_file(root / "manifest.json",
                  manifest.finish("simulate", simulation_spec_hash(spec), rep_keys));

  std::cout << "simulate: " << spec.replications << " replications, "
            << result.rows.size() << " method variants, edges " << result.edges << "\n";
  std::cout << "report: " << (root / "metrics.json").string() << "\n";
  return 0;
}

int cmd_estimate(const std::string& data_path, const std::string& method_name,
                 const std::string& t_max_arg, int fixed_t, double lambda_lo, double lambda_hi,
                 int lambda_count, bool center, bool header, int parallelism,
                 const std::string& out_dir) {
  Matrix x = read_csv_matrix(data_path, header);
  if (x.rows() < 3) throw ValidationError("estimate: need n >= 3 rows");
  if (center) x = center_columns(x);

  Method method;
  if (method_name == "loreg") method = Method::Loreg;
  else if (method_name == "lasso") method = Method::Lasso;
  else throw ValidationError("estimate: unknown method '" + method_name + "'");

  TuningSpec tuning;
  if (t_max_arg == "auto") {
    tuning.auto_t_max = true;
  } else if (!t_max_arg.empty()) {
    tuning.t_max = std::stoi(t_max_arg);
  }
  tuning.fixed_t = fixed_t;
  if (lambda_count > 0) tuning.lambda_grid = log_spaced_grid(lambda_lo, lambda_hi, lambda_count);

  const PrecisionEstimate est = estimate(x, method, tuning, parallelism);

  fs::create_directories(out_dir);
  const fs::path root(out_dir);
  write_csv_matrix((root / "omega_s.csv").string(), est.omega_s);
  write_csv_matrix((root / "omega_us.csv").string(), est.omega_us);
  write_json_file(root / "columns.json", columns_to_json(est, center));

  ManifestBuilder manifest;
  manifest.add(root / "omega_s.csv", "omega_s.csv");
  manifest.add(root / "omega_us.csv", "omega_us.csv");
  manifest.add(root / "columns.json", "columns.json");
  write_json_file(root / "manifest.json",
                  manifest.finish("estimate", fnv1a64(data_path + "|" + method_name)));
  std::cout << "estimate: " << method_name << " on " << x.rows() << "x" << x.cols()
            << ", output " << out_dir << "\n";
  return 0;
}

PrecisionEstimate load_estimate(const fs::path& dir, const Matrix& x) {
  PrecisionEstimate est;
  est.omega_us = read_csv_matrix((dir / "omega_us.csv").string());
  est.omega_s = read_csv_matrix((dir / "omega_s.csv").string());
  const json cols = read_json_file(dir / "columns.json");
  const int p = est.omega_us.rows();
  if (x.cols() != p)
    throw ValidationError("infer: data has " + std::to_string(x.cols()) +
                          " columns but the estimate has p = " + std::to_string(p));
  est.method = cols.value("method", std::string("loreg")) == "lasso" ? Method::Lasso : Method::Loreg;
  est.sigma_hat = sample_covariance(x);
  est.gamma_diag.resize(p);
  for (int i = 0; i < p; ++i) est.gamma_diag[i] = est.sigma_hat(i, i);
  est.columns.resize(p);
  for (const json& c : cols.at("columns")) {
    const int j = c.at("j").get<int>();
    if (j < 0 || j >= p) throw ValidationError("infer: columns.json has out-of-range column index");
    est.columns[j].j = j;
    est.columns[j].active = c.at("active").get<IndexSet>();
    est.columns[j].sigma2 = c.at("sigma2").get<double>();
    est.columns[j].omega_jj = c.at("omega_jj").get<double>();
  }
  return est;
}

int cmd_infer(const std::string& estimate_dir, const std::string& data_path, bool header,
              const std::string& point_name, const std::string& kind_name, double alpha,
              double fdr, const std::string& value_name, const std::string& z_name,
              const std::string& support_name, const std::string& out_dir) {
  Matrix x = read_csv_matrix(data_path, header);
  const json cols = read_json_file(fs::path(estimate_dir) / "columns.json");
  if (cols.value("centered", false)) x = center_columns(x);
  const PrecisionEstimate est = load_estimate(estimate_dir, x);

  auto point_from = [](const std::string& s) {
    if (s == "omega_us") return PointSource::OmegaUS;
    if (s == "omega_s") return PointSource::OmegaS;
    if (s == "t_hat") return PointSource::That;
    throw ValidationError("infer: unknown point source '" + s + "'");
  };
  const bool gaussian = kind_name == "gaussian";
  if (!gaussian && kind_name != "general")
    throw ValidationError("infer: --kind must be gaussian or general");
  auto kind_for = [&](PointSource src) {
    if (src == PointSource::That)
      return gaussian ? VarianceKind::DespGaussian : VarianceKind::DespGeneral;
    return gaussian ? VarianceKind::UndespGaussian : VarianceKind::UndespGeneral;
  };

  const PointSource point = point_from(point_name);
  const InferenceResult inf = build_inference(est, x, kind_for(point), point, alpha);

  fs::create_directories(out_dir);
  const fs::path root(out_dir);
  write_csv_allow_nan(root / "variances.csv", inf.var_matrix);
  write_csv_allow_nan(root / "zscores.csv", inf.z_scores);
  write_csv_allow_nan(root / "ci_low.csv", inf.ci_low);
  write_csv_allow_nan(root / "ci_high.csv", inf.ci_high);
  if (inf.t_hat) write_csv_matrix((root / "t_hat.csv").string(), *inf.t_hat);

  // Thresholding: M1 values kept, Z-scores of M2 drive the tests, lower
  // triangular support of M3 is the tested set.
  const PointSource z_src = point_from(z_name);
  if (z_src == PointSource::OmegaS)
    throw ValidationError("infer: --threshold-z must be omega_us or t_hat");
  std::optional<InferenceResult> z_inf_storage;
  const InferenceResult* z_inf = &inf;
  if (z_src != point) {
    z_inf_storage = build_inference(est, x, kind_for(z_src), z_src, alpha);
    z_inf = &*z_inf_storage;
  }
  auto matrix_for = [&](const std::string& s) -> Matrix {
    if (s == "omega_s") return est.omega_s;
    if (s == "t_hat") {
      if (inf.t_hat) return *inf.t_hat;
      if (z_inf_storage && z_inf_storage->t_hat) return *z_inf_storage->t_hat;
      return desparsify(est.omega_us, est.sigma_hat);
    }
    throw ValidationError("infer: matrix source must be omega_s or t_hat, got '" + s + "'");
  };
  const Matrix m1 = matrix_for(value_name);
  const Matrix m3 = matrix_for(support_name);
  const ThresholdOutcome thr = apply_threshold(m1, *z_inf, m3, fdr);
  write_csv_matrix((root / "thresholded.csv").string(), thr.thresholded);
  if (!fs::exists(root / "t_hat.csv") &&
      (value_name == "t_hat" || support_name == "t_hat" || z_name == "t_hat"))
    write_csv_matrix((root / "t_hat.csv").string(), matrix_for("t_hat"));

  json rejected = json::array();
  for (const auto& [i, j] : thr.rejected_entries) rejected.push_back({i, j});
  write_json_file(root / "inference.json",
                  json{{"schema_version", 1},
                       {"kind", kind_name},
                       {"point", point_name},
                       {"alpha", alpha},
                       {"fdr_level", fdr},
                       {"n", x.rows()},
                       {"undefined_entries", inf.undefined_count},
                       {"floored_entries", inf.floored_count},
                       {"threshold", {{"value", value_name}, {"z", z_name}, {"support", support_name},
                                      {"tested", thr.tested}, {"rejected", thr.rejected},
                                      {"undefined", thr.undefined}}},
                       {"rejected_entries", rejected}});

  ManifestBuilder manifest;
  for (const char* f : {"variances.csv", "zscores.csv", "ci_low.csv", "ci_high.csv",
                        "thresholded.csv", "inference.json"})
    manifest.add(root / f, f);
  if (fs::exists(root / "t_hat.csv")) manifest.add(root / "t_hat.csv", "t_hat.csv");
  write_json_file(root / "manifest.json", manifest.finish("infer", fnv1a64(data_path)));
  std::cout << "infer: tested " << thr.tested << ", rejected " << thr.rejected << "\n";
  return 0;
}

int cmd_evaluate(const std::string& est_path, const std::string& truth_path,
                 const std::string& replications_dir, const std::string& dist_name, double alpha,
                 const std::string& out_dir) {
  const Matrix est = read_csv_matrix(est_path);
  const Matrix truth = read_csv_matrix(truth_path);
  const LossReport losses = norm_losses(est, truth);
  const SupportReport supp = support_metrics(est, truth);

  fs::create_directories(out_dir);
  const fs::path root(out_dir);
  write_json_file(root / "losses.json", json{{"l1", losses.l1},
                                             {"spectral", losses.spectral},
                                             {"frobenius", losses.frobenius},
                                             {"max", losses.max}});
  write_json_file(root / "support.json", json{{"tp", supp.tp},
                                              {"tn", supp.tn},
                                              {"fp", supp.fp},
                                              {"fn", supp.fn},
                                              {"precision", supp.precision},
                                              {"sensitivity", supp.sensitivity},
                                              {"specificity", supp.specificity},
                                              {"mcc", supp.mcc},
                                              {"degenerate", supp.degenerate}});

  if (!replications_dir.empty()) {
    const Dist dist = dist_name == "subgaussian" ? Dist::SubGaussian : Dist::Gaussian;
    std::vector<Matrix> points, variances;
    for (int r = 0;; ++r) {
      char name[32];
      std::snprintf(name, sizeof(name), "rep_%03d", r);
      const fs::path dir = fs::path(replications_dir) / name;
      if (!fs::exists(dir / "loreg_omega_us.csv") || !fs::exists(dir / "variances_us.csv")) break;
      points.push_back(read_csv_matrix((dir / "loreg_omega_us.csv").string()));
      variances.push_back(read_csv_allow_nan(dir / "variances_us.csv"));
    }
    if (points.size() < 2)
      throw InsufficientReplications("evaluate: found fewer than 2 replication folders with "
                                     "loreg_omega_us.csv and variances_us.csv");
    const int p = truth.rows();
    int n = 0;
    {
      const json cols = read_json_file(fs::path(replications_dir) / "metrics.json");
      n = cols.at("spec").at("n").get<int>();
    }
    std::vector<std::pair<int, int>> s_hat;
    for (int i = 0; i < p; ++i)
      for (int j = 0; j < p; ++j) {
        bool in_all = true;
        for (const auto& m : points)
          if (m(i, j) == 0.0) {
            in_all = false;
            break;
          }
        if (in_all) s_hat.emplace_back(i, j);
      }
    const Matrix sigma_pop = spd_inverse(truth);
    const Matrix sigma_true = population_sigma_undesp(sigma_pop, truth, dist);
    std::vector<const Matrix*> pp, vv;
    for (size_t i = 0; i < points.size(); ++i) {
      pp.push_back(&points[i]);
      vv.push_back(&variances[i]);
    }
    const NormalityReport rep =
        normality_metrics(pp, vv, truth, sigma_true, n, alpha, "s_hat", s_hat);
    static const char* metric_names[5] = {"true_length", "avg_length", "cov_rate", "abs_avg_z",
                                          "sd_z"};
    json metrics;
    for (int k = 0; k < 5; ++k)
      metrics[metric_names[k]] = {{"mean", rep.mean[k]}, {"sd", rep.sd[k]}};
    write_json_file(root / "normality.json", json{{"estimator", "loreg_us"},
                                                  {"set", "s_hat"},
                                                  {"replications", rep.replications},
                                                  {"entries", rep.entries.size()},
                                                  {"metrics", metrics}});
  }
  std::cout << "evaluate: frobenius " << losses.frobenius << ", mcc " << supp.mcc << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Nodewise Loreg: L0-penalized nodewise regression for sparse precision matrices"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  // simulate
  auto* sim = app.add_subcommand("simulate", "Run a seeded Monte Carlo experiment from a JSON spec");
  std::string spec_path, sim_out = "run";
  int sim_par = 0;
  bool skip_estimates = false;
  sim->add_option("spec", spec_path, "JSON simulation spec")->required();
  sim->add_option("--out", sim_out, "Output directory");
  sim->add_option("--parallelism", sim_par, "Worker threads (0 = all cores)");
  sim->add_flag("--skip-estimates", skip_estimates, "Do not write per-replication estimates");

  // estimate
  auto* estc = app.add_subcommand("estimate", "Estimate a precision matrix from a CSV data matrix");
  std::string data_path, method_name = "loreg", t_max_arg, est_out = "estimate_out";
  int fixed_t = -1, lambda_count = 0, est_par = 0;
  double lambda_lo = 0.02, lambda_hi = 2.0;
  bool center = false, header = false;
  estc->add_option("data", data_path, "CSV data matrix, rows = samples")->required();
  estc->add_option("--method", method_name, "loreg or lasso");
  estc->add_option("--t-max", t_max_arg, "Largest candidate active-set size, or 'auto'");
  estc->add_option("--fixed-t", fixed_t, "Skip selection and use this T for every column");
  estc->add_option("--lambda-lo", lambda_lo, "Smallest lasso penalty");
  estc->add_option("--lambda-hi", lambda_hi, "Largest lasso penalty");
  estc->add_option("--lambda-count", lambda_count, "Lasso grid size (0 = default 20)");
  estc->add_flag("--center", center, "Subtract column means first");
  estc->add_flag("--header", header, "Data CSV has a header row");
  estc->add_option("--parallelism", est_par, "Worker threads (0 = all cores)");
  estc->add_option("--out", est_out, "Output directory");

  // infer
  auto* inf = app.add_subcommand("infer", "Confidence intervals, Z-scores and FDR thresholding");
  std::string est_dir, inf_data, inf_out = "infer_out";
  std::string point_name = "omega_us", kind_name = "gaussian";
  std::string value_name = "omega_s", z_name = "omega_us", support_name = "omega_s";
  double alpha = 0.05, fdr = 0.05;
  bool inf_header = false;
  inf->add_option("--estimate-dir", est_dir, "Directory written by 'estimate'")->required();
  inf->add_option("--data", inf_data, "CSV data matrix the estimate was fit on")->required();
  inf->add_flag("--header", inf_header, "Data CSV has a header row");
  inf->add_option("--point", point_name, "omega_us, omega_s or t_hat");
  inf->add_option("--kind", kind_name, "gaussian (closed-form variances) or general");
  inf->add_option("--alpha", alpha, "Confidence level alpha");
  inf->add_option("--fdr", fdr, "Nominal FDR level");
  inf->add_option("--threshold-value", value_name, "Matrix whose values are kept (omega_s / t_hat)");
  inf->add_option("--threshold-z", z_name, "Matrix whose Z-scores drive testing (omega_us / t_hat)");
  inf->add_option("--threshold-support", support_name, "Matrix whose support is tested (omega_s / t_hat)");
  inf->add_option("--out", inf_out, "Output directory");

  // evaluate
  auto* ev = app.add_subcommand("evaluate", "Score an estimate against the truth");
  std::string ev_est, ev_truth, ev_reps, ev_dist = "gaussian", ev_out = "evaluate_out";
  double ev_alpha = 0.05;
  ev->add_option("--est", ev_est, "Estimated matrix CSV")->required();
  ev->add_option("--truth", ev_truth, "True matrix CSV")->required();
  ev->add_option("--replications", ev_reps, "Simulation run directory for normality metrics");
  ev->add_option("--dist", ev_dist, "gaussian or subgaussian (population sigma for TrueLength)");
  ev->add_option("--alpha", ev_alpha, "Confidence level alpha");
  ev->add_option("--out", ev_out, "Output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (sim->parsed()) return cmd_simulate(spec_path, sim_out, sim_par, skip_estimates);
    if (estc->parsed())
      return cmd_estimate(data_path, method_name, t_max_arg, fixed_t, lambda_lo, lambda_hi,
                          lambda_count, center, header, est_par, est_out);
    if (inf->parsed())
      return cmd_infer(est_dir, inf_data, inf_header, point_name, kind_name, alpha, fdr,
                       value_name, z_name, support_name, inf_out);
    if (ev->parsed()) return cmd_evaluate(ev_est, ev_truth, ev_reps, ev_dist, ev_alpha, ev_out);
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const NumericError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 2;
  } catch (const IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return 3;
  } catch (const json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
