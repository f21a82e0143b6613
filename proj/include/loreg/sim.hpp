#pragma once

#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "loreg/inference.hpp"
#include "loreg/matrix.hpp"
#include "loreg/metrics.hpp"
#include "loreg/nodewise.hpp"
#include "loreg/simgen.hpp"

namespace loreg {

enum class Dist { Gaussian, SubGaussian };

// The estimator/thresholding combinations evaluated in the experiments.
// Loreg supports all six, Lasso all but ThrSZUs.
enum class Variant {
  OmegaS,    // minimum-symmetrized estimate
  ThrSZUs,   // T(omega_s | Z0(omega_us), SL(omega_s))
  ThrSZT,    // T(omega_s | Z0(t_hat),   SL(omega_s))
  ThrTSlS,   // T(t_hat   | Z0(t_hat),   SL(omega_s))
  ThrTSlT,   // T(t_hat   | Z0(t_hat),   SL(t_hat))
  THat,      // desparsified estimate, unthresholded
};

struct MethodSpec {
  Method estimator = Method::Loreg;
  Variant variant = Variant::OmegaS;
};

std::string method_spec_name(const MethodSpec& m);

struct SimulationSpec {
  GraphSpec graph;
  Dist distribution = Dist::Gaussian;
  int n = 0;
  int replications = 1;
  std::vector<MethodSpec> methods;  // empty -> all eleven combinations
  TuningSpec tuning;
  double fdr_level = 0.05;
  double alpha_level = 0.05;
  uint64_t seed = 0;
  int parallelism = 0;  // 0 -> hardware concurrency
  bool normality = false;
  std::vector<std::string> normality_sets;  // subset of {"s_hat","s","s_c"}; empty -> {"s_hat"}
};

SimulationSpec simulation_spec_from_json(const nlohmann::json& j);
nlohmann::json simulation_spec_to_json(const SimulationSpec& spec);
uint64_t simulation_spec_hash(const SimulationSpec& spec);

std::vector<MethodSpec> all_method_specs();

// Per-replication artifacts handed to the optional sink (valid only during
// the call); the sink owns writing them out.
struct ReplicationOutput {
  int rep = 0;
  const PrecisionEstimate* loreg = nullptr;
  const PrecisionEstimate* lasso = nullptr;
  struct Item {
    std::string name;  // e.g. "loreg.thr_s_z_us"
    const Matrix* matrix;
  };
  std::vector<Item> matrices;
  const Matrix* us_variances = nullptr;  // column-oriented, when normality is on
};
using RepSink = std::function<void(const ReplicationOutput&)>;

struct AggregateRow {
  std::string method;
  // order: l1, spectral, frobenius, max
  double loss_mean[4] = {0, 0, 0, 0};
  double loss_sd[4] = {0, 0, 0, 0};
  // order: precision, sensitivity, specificity, mcc
  double supp_mean[4] = {0, 0, 0, 0};
  double supp_sd[4] = {0, 0, 0, 0};
};

struct NormalityBlock {
  std::string estimator;  // "loreg_us", "loreg_t_hat", "lasso_t_hat"
  NormalityReport report;
};

struct SimulationResult {
  SimulationSpec spec;
  Matrix omega_truth;
  int edges = 0;
  double lambda_min = 0.0;
  std::vector<AggregateRow> rows;
  std::vector<std::vector<LossReport>> losses;       // [method][rep]
  std::vector<std::vector<SupportReport>> supports;  // [method][rep]
  std::vector<NormalityBlock> normality;
  int s_hat_size = 0;  // entries in the across-replication support intersection
};

/// Runs the full experiment: one precision matrix, `replications` seeded data
/// sets (parallel over replications), every requested estimator variant
/// scored against the truth. Results are identical for any parallelism.
SimulationResult run_simulation(const SimulationSpec& spec, const RepSink& sink = {});

nlohmann::json simulation_report_json(const SimulationResult& result);
void write_simulation_csv_tables(const SimulationResult& result, const std::string& dir);

/// Population sigma (not variance) per entry for the desparsified estimator;
/// kurtosis-adjusted for the sub-Gaussian sampler.
Matrix population_sigma_desp(const Matrix& sigma, const Matrix& omega, Dist dist);

/// Population sigma per entry for the undesparsified estimator with the true
/// column supports as active sets; NaN outside them.
Matrix population_sigma_undesp(const Matrix& sigma, const Matrix& omega, Dist dist);

}  // namespace loreg
