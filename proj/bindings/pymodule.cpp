#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "loreg/inference.hpp"
#include "loreg/lasso.hpp"
#include "loreg/linalg.hpp"
#include "loreg/matrix.hpp"
#include "loreg/metrics.hpp"
#include "loreg/nodewise.hpp"
#include "loreg/rng.hpp"
#include "loreg/sdar.hpp"
#include "loreg/simgen.hpp"
#include "loreg/version.hpp"

namespace py = pybind11;
using namespace loreg;

namespace {

Matrix to_matrix(const py::array_t<double, py::array::c_style | py::array::forcecast>& a) {
  if (a.ndim() != 2) throw py::value_error("expected a 2-D array");
  Matrix m(static_cast<int>(a.shape(0)), static_cast<int>(a.shape(1)));
  std::copy(a.data(), a.data() + a.size(), m.data().begin());
  return m;
}

py::array_t<double> to_array(const Matrix& m) {
  return py::array_t<double>({static_cast<py::ssize_t>(m.rows()), static_cast<py::ssize_t>(m.cols())},
                             m.data().data());
}

Vector to_vector(const py::array_t<double, py::array::c_style | py::array::forcecast>& a) {
  if (a.ndim() != 1) throw py::value_error("expected a 1-D array");
  return Vector(a.data(), a.data() + a.size());
}

py::array_t<double> to_array1(const Vector& v) {
  // the (count, ptr) overload builds a zero-stride array in pybind11 3.0;
  // the shape-container overload computes proper C strides
  return py::array_t<double>(std::vector<py::ssize_t>{static_cast<py::ssize_t>(v.size())},
                             v.data());
}

using NdArray = py::array_t<double, py::array::c_style | py::array::forcecast>;

py::dict estimate_to_dict(const PrecisionEstimate& est) {
  py::dict d;
  d["omega_s"] = to_array(est.omega_s);
  d["omega_us"] = to_array(est.omega_us);
  d["sigma_hat"] = to_array(est.sigma_hat);
  d["gamma_diag"] = to_array1(est.gamma_diag);
  d["method"] = est.method == Method::Loreg ? "loreg" : "lasso";
  py::list cols;
  for (const auto& ce : est.columns) {
    py::dict c;
    c["j"] = ce.j;
    c["chosen"] = ce.chosen_t;
    c["sigma2"] = ce.sigma2;
    c["omega_jj"] = ce.omega_jj;
    c["active"] = ce.active;
    c["hbic"] = ce.hbic_value;
    c["variance_floored"] = ce.variance_floored;
    c["note"] = ce.note;
    cols.append(c);
  }
  d["columns"] = cols;
  return d;
}

PrecisionEstimate estimate_impl(const NdArray& x, const std::string& method, int t_max,
                                bool auto_t_max, int fixed_t, int parallelism) {
  TuningSpec tuning;
  tuning.t_max = t_max;
  tuning.auto_t_max = auto_t_max;
  tuning.fixed_t = fixed_t;
  Method m = method == "lasso" ? Method::Lasso : Method::Loreg;
  return estimate(to_matrix(x), m, tuning, parallelism);
}

}  // namespace

PYBIND11_MODULE(_loreg, m) {
  m.doc() = "L0-penalized nodewise regression for sparse precision matrix estimation";
  m.attr("__version__") = kVersion;

  py::register_exception<ValidationError>(m, "LoregValidationError", PyExc_ValueError);
  py::register_exception<NumericError>(m, "LoregNumericError", PyExc_ArithmeticError);

  // linear algebra kernels
  m.def("cholesky", [](const NdArray& a) { return to_array(cholesky(to_matrix(a))); },
        py::arg("m"), "Lower-triangular Cholesky factor of an SPD matrix");
  m.def("spd_inverse", [](const NdArray& a) { return to_array(spd_inverse(to_matrix(a))); },
        py::arg("m"));
  m.def("spd_inverse_sqrt",
        [](const NdArray& a) { return to_array(spd_inverse_sqrt(to_matrix(a))); }, py::arg("m"));
  m.def("spectral_norm", [](const NdArray& a) { return spectral_norm(to_matrix(a)); },
        py::arg("m"));
  m.def("symmetric_eigen_extremes",
        [](const NdArray& a) { return symmetric_eigen_extremes(to_matrix(a)); }, py::arg("m"));
  m.def("sample_covariance",
        [](const NdArray& x) { return to_array(sample_covariance(to_matrix(x))); }, py::arg("x"),
        "X^T X / n");

  // solvers
  m.def("sdar_fit",
        [](const NdArray& y, const NdArray& z, int t, int max_iter) {
          SdarConfig cfg;
          cfg.t = t;
          cfg.max_iter = max_iter;
          SdarResult r = sdar_fit(to_vector(y), to_matrix(z), cfg);
          py::dict d;
          d["beta"] = to_array1(r.beta);
          d["active"] = r.active;
          d["dual"] = to_array1(r.dual);
          d["iterations"] = r.iterations;
          d["converged"] = r.converged;
          return d;
        },
        py::arg("y"), py::arg("z"), py::arg("t"), py::arg("max_iter") = 50,
        "L0-penalized least squares on a sqrt(n)-normalized design");
  m.def("kkt_residual",
        [](const py::dict& r, const NdArray& y, const NdArray& z) {
          SdarResult res;
          res.beta = to_vector(r["beta"].cast<NdArray>());
          res.active = r["active"].cast<IndexSet>();
          res.dual = to_vector(r["dual"].cast<NdArray>());
          return kkt_residual(res, to_vector(y), to_matrix(z));
        },
        py::arg("result"), py::arg("y"), py::arg("z"));
  m.def("lasso_cd",
        [](const NdArray& y, const NdArray& z, double lam, double tol, int max_sweeps) {
          LassoConfig cfg;
          cfg.lambda = lam;
          cfg.tol = tol;
          cfg.max_sweeps = max_sweeps;
          LassoResult r = lasso_cd(to_vector(y), to_matrix(z), cfg);
          return py::make_tuple(to_array1(r.alpha), r.sweeps, r.max_sweeps_exceeded);
        },
        py::arg("y"), py::arg("z"), py::arg("lam"), py::arg("tol") = 1e-7,
        py::arg("max_sweeps") = 10000);

  // nodewise estimation
  m.def("estimate",
        [](const NdArray& x, const std::string& method, int t_max, bool auto_t_max, int fixed_t,
           int parallelism) {
          return estimate_to_dict(estimate_impl(x, method, t_max, auto_t_max, fixed_t, parallelism));
        },
        py::arg("x"), py::arg("method") = "loreg", py::arg("t_max") = 20,
        py::arg("auto_t_max") = false, py::arg("fixed_t") = -1, py::arg("parallelism") = 0,
        "Full precision-matrix estimate; returns a dict with omega_s, omega_us and per-column info");
  m.def("min_symmetrize", [](const NdArray& a) { return to_array(min_symmetrize(to_matrix(a))); },
        py::arg("m"));
  m.def("auto_t_max", &auto_t_max, py::arg("n"), py::arg("p"));
  m.def("hbic",
        [](const IndexSet& active, int j, const NdArray& x, const NdArray& z) {
          return hbic(active, j, to_matrix(x), to_matrix(z));
        },
        py::arg("active"), py::arg("j"), py::arg("x"), py::arg("z"));

  // inference
  m.def("desparsify",
        [](const NdArray& omega, const NdArray& sigma_hat) {
          return to_array(desparsify(to_matrix(omega), to_matrix(sigma_hat)));
        },
        py::arg("omega"), py::arg("sigma_hat"), "omega + omega^T - omega^T sigma_hat omega");
  m.def("var_desp_gaussian",
        [](const NdArray& omega, int i, int j) { return var_desp_gaussian(to_matrix(omega), i, j); },
        py::arg("omega"), py::arg("i"), py::arg("j"));
  m.def("var_undesp_gaussian",
        [](const NdArray& sigma_hat, const IndexSet& a_plus, int i, int j) {
          return var_undesp_gaussian(to_matrix(sigma_hat), a_plus, i, j);
        },
        py::arg("sigma_hat"), py::arg("a_plus"), py::arg("i"), py::arg("j"));
  m.def("bh_fdr", &bh_fdr, py::arg("pvalues"), py::arg("q"),
        "Benjamini-Hochberg step-up rule; returns rejected indices");
  m.def("normal_cdf", &normal_cdf, py::arg("z"));
  m.def("normal_quantile", &normal_quantile, py::arg("p"));

  // generators and samplers
  m.def("gen_band", [](int p) { return to_array(gen_band(p)); }, py::arg("p"));
  m.def("gen_random",
        [](int p, uint64_t seed, double edge_prob) {
          CounterRng rng = CounterRng::keyed(seed, 0, "graph");
          return to_array(gen_random(p, rng, edge_prob));
        },
        py::arg("p"), py::arg("seed"), py::arg("edge_prob") = -1.0);
  m.def("gen_hub", [](int p, int group_size) { return to_array(gen_hub(p, group_size)); },
        py::arg("p"), py::arg("group_size") = 10);
  m.def("gen_cluster",
        [](int p, uint64_t seed, int group_size, double edge_prob) {
          CounterRng rng = CounterRng::keyed(seed, 0, "graph");
          return to_array(gen_cluster(p, rng, group_size, edge_prob));
        },
        py::arg("p"), py::arg("seed"), py::arg("group_size") = 10, py::arg("edge_prob") = 0.6);
  m.def("sample_gaussian",
        [](const NdArray& omega, int n, uint64_t seed, uint64_t replication) {
          CounterRng rng = CounterRng::keyed(seed, replication, "data");
          return to_array(sample_gaussian(to_matrix(omega), n, rng));
        },
        py::arg("omega"), py::arg("n"), py::arg("seed"), py::arg("replication") = 0);
  m.def("sample_subgaussian",
        [](const NdArray& omega, int n, uint64_t seed, uint64_t replication) {
          CounterRng rng = CounterRng::keyed(seed, replication, "data");
          return to_array(sample_subgaussian(to_matrix(omega), n, rng));
        },
        py::arg("omega"), py::arg("n"), py::arg("seed"), py::arg("replication") = 0);

  // evaluation
  m.def("norm_losses",
        [](const NdArray& est, const NdArray& truth) {
          LossReport r = norm_losses(to_matrix(est), to_matrix(truth));
          py::dict d;
          d["l1"] = r.l1;
          d["spectral"] = r.spectral;
          d["frobenius"] = r.frobenius;
          d["max"] = r.max;
          return d;
        },
        py::arg("est"), py::arg("truth"));
  m.def("support_metrics",
        [](const NdArray& est, const NdArray& truth, double threshold) {
          SupportReport r = support_metrics(to_matrix(est), to_matrix(truth), threshold);
          py::dict d;
          d["tp"] = r.tp;
          d["tn"] = r.tn;
          d["fp"] = r.fp;
          d["fn"] = r.fn;
          d["precision"] = r.precision;
          d["sensitivity"] = r.sensitivity;
          d["specificity"] = r.specificity;
          d["mcc"] = r.mcc;
          d["degenerate"] = r.degenerate;
          return d;
        },
        py::arg("est"), py::arg("truth"), py::arg("threshold") = 0.0);
  m.def("lda_scores",
        [](const NdArray& x, const NdArray& omega, const NdArray& mean0, const NdArray& mean1,
           double prior0, double prior1) {
          LdaModel model{to_matrix(omega), to_vector(mean0), to_vector(mean1), prior0, prior1};
          return lda_scores(to_vector(x), model);
        },
        py::arg("x"), py::arg("omega"), py::arg("mean0"), py::arg("mean1"), py::arg("prior0"),
        py::arg("prior1"));
  m.def("lda_classify",
        [](const NdArray& x, const NdArray& omega, const NdArray& mean0, const NdArray& mean1,
           double prior0, double prior1) {
          LdaModel model{to_matrix(omega), to_vector(mean0), to_vector(mean1), prior0, prior1};
          return lda_classify(to_vector(x), model);
        },
        py::arg("x"), py::arg("omega"), py::arg("mean0"), py::arg("mean1"), py::arg("prior0"),
        py::arg("prior1"));
}
