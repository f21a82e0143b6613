#include "loreg/sim.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <optional>

#include "loreg/lasso.hpp"
#include "loreg/linalg.hpp"
#include "loreg/parallel.hpp"
#include "loreg/rng.hpp"
#include "loreg/version.hpp"

namespace loreg {

using nlohmann::json;

namespace {

const double kNaN = std::numeric_limits<double>::quiet_NaN();

void check_keys(const json& j, std::initializer_list<const char*> allowed, const char* ctx) {
  if (!j.is_object()) throw ValidationError(std::string(ctx) + ": expected a JSON object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const char* k : allowed)
      if (it.key() == k) {
        ok = true;
        break;
      }
    if (!ok) throw ValidationError(std::string(ctx) + ": unknown field '" + it.key() + "'");
  }
}

GraphFamily family_from_string(const std::string& s) {
  if (s == "band") return GraphFamily::Band;
  if (s == "random") return GraphFamily::Random;
  if (s == "hub") return GraphFamily::Hub;
  if (s == "cluster") return GraphFamily::Cluster;
  throw ValidationError("graph.family: unknown value '" + s + "'");
}

std::string family_to_string(GraphFamily f) {
  switch (f) {
    case GraphFamily::Band: return "band";
    case GraphFamily::Random: return "random";
    case GraphFamily::Hub: return "hub";
    case GraphFamily::Cluster: return "cluster";
  }
  return "band";
}

Variant variant_from_string(const std::string& s) {
  if (s == "omega_s") return Variant::OmegaS;
  if (s == "thr_s_z_us") return Variant::ThrSZUs;
  if (s == "thr_s_z_t") return Variant::ThrSZT;
  if (s == "thr_t_sl_s") return Variant::ThrTSlS;
  if (s == "thr_t_sl_t") return Variant::ThrTSlT;
  if (s == "t_hat") return Variant::THat;
  throw ValidationError("methods.variant: unknown value '" + s + "'");
}

std::string variant_to_string(Variant v) {
  switch (v) {
    case Variant::OmegaS: return "omega_s";
    case Variant::ThrSZUs: return "thr_s_z_us";
    case Variant::ThrSZT: return "thr_s_z_t";
    case Variant::ThrTSlS: return "thr_t_sl_s";
    case Variant::ThrTSlT: return "thr_t_sl_t";
    case Variant::THat: return "t_hat";
  }
  return "omega_s";
}

}  // namespace

std::string method_spec_name(const MethodSpec& m) {
  return (m.estimator == Method::Loreg ? std::string("loreg.") : std::string("lasso.")) +
         variant_to_string(m.variant);
}

std::vector<MethodSpec> all_method_specs() {
  std::vector<MethodSpec> out;
  for (Variant v : {Variant::OmegaS, Variant::ThrSZUs, Variant::ThrSZT, Variant::ThrTSlS,
                    Variant::ThrTSlT, Variant::THat})
    out.push_back({Method::Loreg, v});
  for (Variant v :
       {Variant::OmegaS, Variant::ThrSZT, Variant::ThrTSlS, Variant::ThrTSlT, Variant::THat})
    out.push_back({Method::Lasso, v});
  return out;
}

SimulationSpec simulation_spec_from_json(const json& j) {
  check_keys(j, {"schema_version", "graph", "distribution", "n", "replications", "methods",
                 "tuning", "fdr_level", "alpha_level", "seed", "parallelism", "normality",
                 "normality_sets"},
             "spec");
  if (!j.contains("schema_version") || !j["schema_version"].is_number_integer() ||
      j["schema_version"].get<int>() != 1)
    throw ValidationError("spec: schema_version must be the integer 1");

  SimulationSpec spec;
  if (!j.contains("graph")) throw ValidationError("spec: missing 'graph'");
  const json& g = j["graph"];
  check_keys(g, {"family", "p", "seed", "group_size", "edge_prob"}, "graph");
  if (!g.contains("family") || !g.contains("p")) throw ValidationError("graph: needs 'family' and 'p'");
  spec.graph.family = family_from_string(g["family"].get<std::string>());
  spec.graph.p = g["p"].get<int>();
  if (spec.graph.p < 4) throw ValidationError("graph.p must be >= 4");
  spec.graph.seed = g.value("seed", 0ULL);
  spec.graph.group_size = g.value("group_size", 10);
  spec.graph.edge_prob = g.value("edge_prob", -1.0);

  const std::string dist = j.value("distribution", std::string("gaussian"));
  if (dist == "gaussian") spec.distribution = Dist::Gaussian;
  else if (dist == "subgaussian") spec.distribution = Dist::SubGaussian;
  else throw ValidationError("distribution: unknown value '" + dist + "'");

  if (!j.contains("n")) throw ValidationError("spec: missing 'n'");
  spec.n = j["n"].get<int>();
  if (spec.n < 3) throw ValidationError("spec: n must be >= 3");
  spec.replications = j.value("replications", 1);
  if (spec.replications < 1) throw ValidationError("spec: replications must be >= 1");

  if (j.contains("methods")) {
    for (const json& m : j["methods"]) {
      check_keys(m, {"estimator", "variant"}, "methods[]");
      MethodSpec ms;
      const std::string est = m.value("estimator", std::string("loreg"));
      if (est == "loreg") ms.estimator = Method::Loreg;
      else if (est == "lasso") ms.estimator = Method::Lasso;
      else throw ValidationError("methods.estimator: unknown value '" + est + "'");
      ms.variant = variant_from_string(m.value("variant", std::string("omega_s")));
      if (ms.estimator == Method::Lasso && ms.variant == Variant::ThrSZUs)
        throw ValidationError("methods: thr_s_z_us is only defined for loreg");
      spec.methods.push_back(ms);
    }
  }
  if (spec.methods.empty()) spec.methods = all_method_specs();

  if (j.contains("tuning")) {
    const json& t = j["tuning"];
    check_keys(t, {"t_max", "auto_t_max", "fixed_t", "sdar_max_iter", "lambda_grid",
                   "lasso_tol", "lasso_max_sweeps"},
               "tuning");
    spec.tuning.t_max = t.value("t_max", 20);
    spec.tuning.auto_t_max = t.value("auto_t_max", false);
    spec.tuning.fixed_t = t.value("fixed_t", -1);
    spec.tuning.sdar_max_iter = t.value("sdar_max_iter", 50);
    spec.tuning.lasso_tol = t.value("lasso_tol", 1e-7);
    spec.tuning.lasso_max_sweeps = t.value("lasso_max_sweeps", 10000);
    if (t.contains("lambda_grid")) {
      const json& lg = t["lambda_grid"];
      check_keys(lg, {"lo", "hi", "count"}, "tuning.lambda_grid");
      spec.tuning.lambda_grid =
          log_spaced_grid(lg.value("lo", 0.02), lg.value("hi", 2.0), lg.value("count", 20));
    }
  }

  spec.fdr_level = j.value("fdr_level", 0.05);
  if (spec.fdr_level <= 0.0 || spec.fdr_level >= 1.0)
    throw ValidationError("spec: fdr_level must be in (0,1)");
  spec.alpha_level = j.value("alpha_level", 0.05);
  if (spec.alpha_level <= 0.0 || spec.alpha_level >= 1.0)
    throw ValidationError("spec: alpha_level must be in (0,1)");
  spec.seed = j.value("seed", 0ULL);
  spec.parallelism = j.value("parallelism", 0);
  spec.normality = j.value("normality", false);
  if (j.contains("normality_sets")) {
    for (const json& s : j["normality_sets"]) {
      const std::string name = s.get<std::string>();
      if (name != "s_hat" && name != "s" && name != "s_c")
        throw ValidationError("normality_sets: unknown set '" + name + "'");
      spec.normality_sets.push_back(name);
    }
  }
  if (spec.normality_sets.empty()) spec.normality_sets = {"s_hat"};
  return spec;
}

json simulation_spec_to_json(const SimulationSpec& spec) {
  json g{{"family", family_to_string(spec.graph.family)},
         {"p", spec.graph.p},
         {"seed", spec.graph.seed},
         {"group_size", spec.graph.group_size},
         {"edge_prob", spec.graph.edge_prob}};
  json methods = json::array();
  for (const auto& m : spec.methods)
    methods.push_back({{"estimator", m.estimator == Method::Loreg ? "loreg" : "lasso"},
                       {"variant", variant_to_string(m.variant)}});
  json tuning{{"t_max", spec.tuning.t_max},
              {"auto_t_max", spec.tuning.auto_t_max},
              {"fixed_t", spec.tuning.fixed_t},
              {"sdar_max_iter", spec.tuning.sdar_max_iter},
              {"lasso_tol", spec.tuning.lasso_tol},
              {"lasso_max_sweeps", spec.tuning.lasso_max_sweeps}};
  return json{{"schema_version", 1},
              {"graph", g},
              {"distribution", spec.distribution == Dist::Gaussian ? "gaussian" : "subgaussian"},
              {"n", spec.n},
              {"replications", spec.replications},
              {"methods", methods},
              {"tuning", tuning},
              {"fdr_level", spec.fdr_level},
              {"alpha_level", spec.alpha_level},
              {"seed", spec.seed},
              {"parallelism", spec.parallelism},
              {"normality", spec.normality},
              {"normality_sets", spec.normality_sets}};
}

uint64_t simulation_spec_hash(const SimulationSpec& spec) {
  return fnv1a64(simulation_spec_to_json(spec).dump());
}

Matrix population_sigma_desp(const Matrix& sigma, const Matrix& omega, Dist dist) {
  const int p = omega.rows();
  Matrix out(p, p);
  if (dist == Dist::Gaussian) {
    for (int i = 0; i < p; ++i)
      for (int j = 0; j < p; ++j)
        out(i, j) = std::sqrt(omega(i, i) * omega(j, j) + omega(i, j) * omega(i, j));
    return out;
  }
  // x = R u with u uniform, unit variance, fourth moment 9/5: the quadratic
  // form variance picks up a (9/5 - 3) * sum_k a_k^2 b_k^2 correction.
  const Matrix r = spd_inverse_sqrt(omega);
  const Matrix a = multiply(r, omega);  // column i holds R * Omega_{*i}
  Vector colsq(p, 0.0);
  for (int k = 0; k < p; ++k)
    for (int i = 0; i < p; ++i) colsq[i] += a(k, i) * a(k, i);
  for (int i = 0; i < p; ++i) {
    for (int j = 0; j < p; ++j) {
      double cross = 0.0, quart = 0.0;
      for (int k = 0; k < p; ++k) {
        cross += a(k, i) * a(k, j);
        quart += a(k, i) * a(k, i) * a(k, j) * a(k, j);
      }
      const double v = colsq[i] * colsq[j] + cross * cross - 1.2 * quart;
      out(i, j) = std::sqrt(std::max(v, 0.0));
    }
  }
  (void)sigma;
  return out;
}

Matrix population_sigma_undesp(const Matrix& sigma, const Matrix& omega, Dist dist) {
  const int p = omega.rows();
  Matrix out(p, p);
  for (double& v : out.data()) v = kNaN;
  Matrix r;
  if (dist == Dist::SubGaussian) r = spd_inverse_sqrt(omega);
  for (int j = 0; j < p; ++j) {
    IndexSet a_plus;
    for (int i = 0; i < p; ++i)
      if (i == j || omega(i, j) != 0.0) a_plus.push_back(i);
    const int t = static_cast<int>(a_plus.size());
    Matrix inv = spd_inverse(submatrix(sigma, a_plus, a_plus));
    int jh = 0;
    while (a_plus[jh] != j) ++jh;
    if (dist == Dist::Gaussian) {
      for (int a = 0; a < t; ++a)
        out(a_plus[a], j) =
            std::sqrt(inv(a, a) * inv(jh, jh) + inv(a, jh) * inv(a, jh));
    } else {
      // Row a of `amat` is the p-vector whose inner product with u gives
      // (Sigma_{A+A+}^{-1})_{a*} x_{A+}.
      Matrix amat(t, p);
      for (int a = 0; a < t; ++a)
        for (int k = 0; k < p; ++k) {
          double s = 0.0;
          for (int b = 0; b < t; ++b) s += inv(a, b) * r(a_plus[b], k);
          amat(a, k) = s;
        }
      Vector vj = amat.row(jh);
      double vv = 0.0;
      for (double x : vj) vv += x * x;
      for (int a = 0; a < t; ++a) {
        double uu = 0.0, cross = 0.0, quart = 0.0;
        for (int k = 0; k < p; ++k) {
          const double ua = amat(a, k);
          uu += ua * ua;
          cross += ua * vj[k];
          quart += ua * ua * vj[k] * vj[k];
        }
        const double v = uu * vv + cross * cross - 1.2 * quart;
        out(a_plus[a], j) = std::sqrt(std::max(v, 0.0));
      }
    }
  }
  return out;
}

namespace {

Matrix variant_matrix(const PrecisionEstimate& est, Variant variant,
                      const InferenceResult* inf_us, const InferenceResult* inf_t,
                      const Matrix* t_hat, double fdr) {
  switch (variant) {
    case Variant::OmegaS:
      return est.omega_s;
    case Variant::THat:
      return *t_hat;
    case Variant::ThrSZUs:
      return apply_threshold(est.omega_s, *inf_us, est.omega_s, fdr).thresholded;
    case Variant::ThrSZT:
      return apply_threshold(est.omega_s, *inf_t, est.omega_s, fdr).thresholded;
    case Variant::ThrTSlS:
      return apply_threshold(*t_hat, *inf_t, est.omega_s, fdr).thresholded;
    case Variant::ThrTSlT:
      return apply_threshold(*t_hat, *inf_t, *t_hat, fdr).thresholded;
  }
  throw ValidationError("variant_matrix: unknown variant");
}

struct Stats {
  double mean = 0.0, sd = 0.0;
};

Stats mean_sd(const std::vector<double>& v) {
  Stats s;
  if (v.empty()) return s;
  double sum = 0.0;
  for (double x : v) sum += x;
  s.mean = sum / v.size();
  if (v.size() > 1) {
    double acc = 0.0;
    for (double x : v) acc += (x - s.mean) * (x - s.mean);
    s.sd = std::sqrt(acc / (v.size() - 1));
  }
  return s;
}

}  // namespace

SimulationResult run_simulation(const SimulationSpec& spec, const RepSink& sink) {
  if (spec.n < 3) throw ValidationError("run_simulation: n must be >= 3");
  if (spec.replications < 1) throw ValidationError("run_simulation: replications must be >= 1");

  SimulationResult result;
  result.spec = spec;
  result.omega_truth = make_precision(spec.graph);
  result.edges = count_edges(result.omega_truth);
  result.lambda_min = symmetric_eigen_extremes(result.omega_truth).first;

  const int m_count = static_cast<int>(spec.methods.size());
  const int reps = spec.replications;
  const Matrix& omega = result.omega_truth;

  bool any_loreg = spec.normality, any_lasso = false;
  bool loreg_z_us = false, loreg_z_t = false, loreg_t = false, lasso_z_t = false, lasso_t = false;
  for (const auto& ms : spec.methods) {
    const bool is_loreg = ms.estimator == Method::Loreg;
    (is_loreg ? any_loreg : any_lasso) = true;
    const bool needs_z_t = ms.variant == Variant::ThrSZT || ms.variant == Variant::ThrTSlS ||
                           ms.variant == Variant::ThrTSlT;
    const bool needs_t = needs_z_t || ms.variant == Variant::THat;
    if (is_loreg) {
      loreg_z_us |= ms.variant == Variant::ThrSZUs;
      loreg_z_t |= needs_z_t;
      loreg_t |= needs_t;
    } else {
      lasso_z_t |= needs_z_t;
      lasso_t |= needs_t;
    }
  }
  const VarianceKind undesp_kind = spec.distribution == Dist::Gaussian
                                       ? VarianceKind::UndespGaussian
                                       : VarianceKind::UndespGeneral;
  const VarianceKind desp_kind = spec.distribution == Dist::Gaussian ? VarianceKind::DespGaussian
                                                                     : VarianceKind::DespGeneral;
  const bool norm_loreg_t = spec.normality && loreg_t;
  const bool norm_lasso_t = spec.normality && lasso_t;

  result.losses.assign(m_count, std::vector<LossReport>(reps));
  result.supports.assign(m_count, std::vector<SupportReport>(reps));
  std::vector<Matrix> us_mats, us_vars, tl_mats, tl_vars, ts_mats, ts_vars;
  if (spec.normality) {
    us_mats.resize(reps);
    us_vars.resize(reps);
  }
  if (norm_loreg_t) {
    tl_mats.resize(reps);
    tl_vars.resize(reps);
  }
  if (norm_lasso_t) {
    ts_mats.resize(reps);
    ts_vars.resize(reps);
  }

  parallel_for(reps, spec.parallelism, [&](int rep) {
    CounterRng rng = CounterRng::keyed(spec.seed, static_cast<uint64_t>(rep), "data");
    const Matrix x = spec.distribution == Dist::Gaussian
                         ? sample_gaussian(omega, spec.n, rng)
                         : sample_subgaussian(omega, spec.n, rng);

    PrecisionEstimate est_loreg, est_lasso;
    if (any_loreg) est_loreg = estimate(x, Method::Loreg, spec.tuning, 1);
    if (any_lasso) est_lasso = estimate(x, Method::Lasso, spec.tuning, 1);

    std::optional<InferenceResult> inf_us, inf_tl, inf_ts;
    Matrix t_loreg, t_lasso;
    if (loreg_z_us) inf_us = build_inference(est_loreg, x, undesp_kind, PointSource::OmegaUS, spec.alpha_level);
    if (loreg_z_t || norm_loreg_t) {
      inf_tl = build_inference(est_loreg, x, desp_kind, PointSource::That, spec.alpha_level);
      t_loreg = *inf_tl->t_hat;
    } else if (loreg_t) {
      t_loreg = desparsify(est_loreg.omega_us, est_loreg.sigma_hat);
    }
    if (lasso_z_t || norm_lasso_t) {
      inf_ts = build_inference(est_lasso, x, desp_kind, PointSource::That, spec.alpha_level);
      t_lasso = *inf_ts->t_hat;
    } else if (lasso_t) {
      t_lasso = desparsify(est_lasso.omega_us, est_lasso.sigma_hat);
    }

    std::vector<std::pair<std::string, Matrix>> rep_mats;
    rep_mats.reserve(m_count);
    for (int mi = 0; mi < m_count; ++mi) {
      const MethodSpec& ms = spec.methods[mi];
      const bool is_loreg = ms.estimator == Method::Loreg;
      Matrix vm = variant_matrix(is_loreg ? est_loreg : est_lasso, ms.variant,
                                 inf_us ? &*inf_us : nullptr,
                                 is_loreg ? (inf_tl ? &*inf_tl : nullptr)
                                          : (inf_ts ? &*inf_ts : nullptr),
                                 is_loreg ? &t_loreg : &t_lasso, spec.fdr_level);
      result.losses[mi][rep] = norm_losses(vm, omega);
      result.supports[mi][rep] = support_metrics(vm, omega);
      if (sink) rep_mats.emplace_back(method_spec_name(ms), std::move(vm));
    }

    if (spec.normality) {
      us_mats[rep] = est_loreg.omega_us;
      us_vars[rep] = variance_matrix(est_loreg, x, undesp_kind);
    }
    if (norm_loreg_t) {
      tl_mats[rep] = t_loreg;
      tl_vars[rep] = inf_tl->var_matrix;
    }
    if (norm_lasso_t) {
      ts_mats[rep] = t_lasso;
      ts_vars[rep] = inf_ts->var_matrix;
    }

    if (sink) {
      ReplicationOutput out;
      out.rep = rep;
      out.loreg = any_loreg ? &est_loreg : nullptr;
      out.lasso = any_lasso ? &est_lasso : nullptr;
      for (const auto& [name, mat] : rep_mats) out.matrices.push_back({name, &mat});
      out.us_variances = spec.normality ? &us_vars[rep] : nullptr;
      sink(out);
    }
  });

  for (int mi = 0; mi < m_count; ++mi) {
    AggregateRow row;
    row.method = method_spec_name(spec.methods[mi]);
    std::vector<double> vals(reps);
    auto fill = [&](auto getter, double* mean, double* sd, int k) {
      for (int r = 0; r < reps; ++r) vals[r] = getter(r);
      const Stats s = mean_sd(vals);
      mean[k] = s.mean;
      sd[k] = s.sd;
    };
    fill([&](int r) { return result.losses[mi][r].l1; }, row.loss_mean, row.loss_sd, 0);
    fill([&](int r) { return result.losses[mi][r].spectral; }, row.loss_mean, row.loss_sd, 1);
    fill([&](int r) { return result.losses[mi][r].frobenius; }, row.loss_mean, row.loss_sd, 2);
    fill([&](int r) { return result.losses[mi][r].max; }, row.loss_mean, row.loss_sd, 3);
    fill([&](int r) { return result.supports[mi][r].precision; }, row.supp_mean, row.supp_sd, 0);
    fill([&](int r) { return result.supports[mi][r].sensitivity; }, row.supp_mean, row.supp_sd, 1);
    fill([&](int r) { return result.supports[mi][r].specificity; }, row.supp_mean, row.supp_sd, 2);
    fill([&](int r) { return result.supports[mi][r].mcc; }, row.supp_mean, row.supp_sd, 3);
    result.rows.push_back(row);
  }

  if (spec.normality && reps >= 2) {
    const int p = spec.graph.p;
    const Matrix sigma_pop = spd_inverse(omega);
    const Matrix sigma_undesp = population_sigma_undesp(sigma_pop, omega, spec.distribution);
    const Matrix sigma_desp = population_sigma_desp(sigma_pop, omega, spec.distribution);

    std::vector<std::pair<int, int>> s_hat, s_true, s_comp;
    for (int i = 0; i < p; ++i)
      for (int j = 0; j < p; ++j) {
        bool in_all = true;
        for (int r = 0; r < reps && in_all; ++r) in_all = us_mats[r](i, j) != 0.0;
        if (in_all) s_hat.emplace_back(i, j);
        if (omega(i, j) != 0.0) s_true.emplace_back(i, j);
        else s_comp.emplace_back(i, j);
      }
    result.s_hat_size = static_cast<int>(s_hat.size());

    std::vector<const Matrix*> us_p(reps), usv_p(reps), tl_p(reps), tlv_p(reps), ts_p(reps), tsv_p(reps);
    for (int r = 0; r < reps; ++r) {
      us_p[r] = &us_mats[r];
      usv_p[r] = &us_vars[r];
      if (norm_loreg_t) {
        tl_p[r] = &tl_mats[r];
        tlv_p[r] = &tl_vars[r];
      }
      if (norm_lasso_t) {
        ts_p[r] = &ts_mats[r];
        tsv_p[r] = &ts_vars[r];
      }
    }
    for (const std::string& set_name : spec.normality_sets) {
      const auto& entries = set_name == "s_hat" ? s_hat : set_name == "s" ? s_true : s_comp;
      if (set_name == "s_hat") {
        // The undesparsified estimator is only evaluated where its support
        // survived every replication.
        result.normality.push_back(
            {"loreg_us", normality_metrics(us_p, usv_p, omega, sigma_undesp, spec.n,
                                           spec.alpha_level, set_name, entries)});
      }
      if (norm_loreg_t)
        result.normality.push_back(
            {"loreg_t_hat", normality_metrics(tl_p, tlv_p, omega, sigma_desp, spec.n,
                                              spec.alpha_level, set_name, entries)});
      if (norm_lasso_t)
        result.normality.push_back(
            {"lasso_t_hat", normality_metrics(ts_p, tsv_p, omega, sigma_desp, spec.n,
                                              spec.alpha_level, set_name, entries)});
    }
  }
  return result;
}

json simulation_report_json(const SimulationResult& result) {
  json methods = json::array();
  static const char* loss_names[4] = {"l1", "spectral", "frobenius", "max"};
  static const char* supp_names[4] = {"precision", "sensitivity", "specificity", "mcc"};
  for (const auto& row : result.rows) {
    json losses, supp;
    for (int k = 0; k < 4; ++k) {
      losses[loss_names[k]] = {{"mean", row.loss_mean[k]}, {"sd", row.loss_sd[k]}};
      supp[supp_names[k]] = {{"mean", row.supp_mean[k]}, {"sd", row.supp_sd[k]}};
    }
    methods.push_back({{"name", row.method}, {"losses", losses}, {"support", supp}});
  }
  json normality = json::array();
  static const char* metric_names[5] = {"true_length", "avg_length", "cov_rate", "abs_avg_z", "sd_z"};
  for (const auto& block : result.normality) {
    json metrics;
    for (int k = 0; k < 5; ++k) {
      const double mean = block.report.mean[k], sd = block.report.sd[k];
      metrics[metric_names[k]] = {{"mean", std::isnan(mean) ? json() : json(mean)},
                                  {"sd", std::isnan(sd) ? json() : json(sd)}};
    }
    normality.push_back({{"estimator", block.estimator},
                         {"set", block.report.entry_set},
                         {"entries", block.report.entries.size()},
                         {"metrics", metrics}});
  }
  return json{{"schema_version", 1},
              {"spec", simulation_spec_to_json(result.spec)},
              {"graph", {{"edges", result.edges}, {"lambda_min", result.lambda_min}}},
              {"s_hat_size", result.s_hat_size},
              {"methods", methods},
              {"normality", normality}};
}

void write_simulation_csv_tables(const SimulationResult& result, const std::string& dir) {
  {
    std::ofstream out(dir + "/losses.csv");
    if (!out) throw IoError("cannot write " + dir + "/losses.csv");
    out << "method,l1_mean,l1_sd,spectral_mean,spectral_sd,frobenius_mean,frobenius_sd,max_mean,max_sd\n";
    for (const auto& row : result.rows) {
      out << row.method;
      for (int k = 0; k < 4; ++k)
        out << ',' << format_double(row.loss_mean[k]) << ',' << format_double(row.loss_sd[k]);
      out << '\n';
    }
  }
  {
    std::ofstream out(dir + "/support.csv");
    if (!out) throw IoError("cannot write " + dir + "/support.csv");
    out << "method,precision_mean,precision_sd,sensitivity_mean,sensitivity_sd,"
           "specificity_mean,specificity_sd,mcc_mean,mcc_sd\n";
    for (const auto& row : result.rows) {
      out << row.method;
      for (int k = 0; k < 4; ++k)
        out << ',' << format_double(row.supp_mean[k]) << ',' << format_double(row.supp_sd[k]);
      out << '\n';
    }
  }
  if (!result.normality.empty()) {
    std::ofstream out(dir + "/normality.csv");
    if (!out) throw IoError("cannot write " + dir + "/normality.csv");
    out << "estimator,set,entries,true_length_mean,true_length_sd,avg_length_mean,avg_length_sd,"
           "cov_rate_mean,cov_rate_sd,abs_avg_z_mean,abs_avg_z_sd,sd_z_mean,sd_z_sd\n";
    for (const auto& block : result.normality) {
      out << block.estimator << ',' << block.report.entry_set << ',' << block.report.entries.size();
      for (int k = 0; k < 5; ++k)
        out << ',' << format_double(block.report.mean[k]) << ','
            << format_double(block.report.sd[k]);
      out << '\n';
    }
  }
}

}  // namespace loreg
