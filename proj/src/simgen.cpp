#include "loreg/simgen.hpp"

#include <cmath>

#include "loreg/linalg.hpp"

namespace loreg {

Matrix gen_band(int p) {
  if (p < 3) throw ValidationError("gen_band: requires p >= 3");
  Matrix omega(p, p);
  for (int i = 0; i < p; ++i) {
    omega(i, i) = 1.0;
    if (i + 1 < p) omega(i, i + 1) = omega(i + 1, i) = 0.5;
    if (i + 2 < p) omega(i, i + 2) = omega(i + 2, i) = 0.3;
  }
  return omega;
}

Matrix precision_from_adjacency(const Matrix& a) {
  const double lmin = symmetric_eigen_extremes(a).first;
  const double shift = std::fabs(lmin) + 0.1;
  Matrix omega = a;
  for (int i = 0; i < a.rows(); ++i) omega(i, i) += shift;
  return omega;
}

Matrix gen_random(int p, CounterRng& rng, double edge_prob) {
  if (p < 4) throw ValidationError("gen_random: requires p >= 4");
  const double prob = edge_prob < 0.0 ? 4.0 / p : edge_prob;
  Matrix a(p, p);
  for (int i = 0; i < p; ++i)
    for (int j = i + 1; j < p; ++j)
      if (rng.next_bernoulli(prob)) a(i, j) = a(j, i) = 1.0;
  return precision_from_adjacency(a);
}

Matrix gen_hub(int p, int group_size) {
  if (group_size < 2) throw ValidationError("gen_hub: group_size must be >= 2");
  if (p % group_size != 0)
    throw IndivisibleGroups("gen_hub: p = " + std::to_string(p) + " not divisible by group size " +
                            std::to_string(group_size));
  Matrix a(p, p);
  for (int g = 0; g < p / group_size; ++g) {
    const int hub = g * group_size;
    for (int k = 1; k < group_size; ++k) a(hub, hub + k) = a(hub + k, hub) = 1.0;
  }
  return precision_from_adjacency(a);
}

Matrix gen_cluster(int p, CounterRng& rng, int group_size, double edge_prob) {
  if (group_size < 2) throw ValidationError("gen_cluster: group_size must be >= 2");
  if (p % group_size != 0)
    throw IndivisibleGroups("gen_cluster: p = " + std::to_string(p) +
                            " not divisible by group size " + std::to_string(group_size));
  const double prob = edge_prob < 0.0 ? 0.6 : edge_prob;
  Matrix a(p, p);
  for (int g = 0; g < p / group_size; ++g) {
    const int base = g * group_size;
    for (int i = 0; i < group_size; ++i)
      for (int j = i + 1; j < group_size; ++j)
        if (rng.next_bernoulli(prob)) a(base + i, base + j) = a(base + j, base + i) = 1.0;
  }
  return precision_from_adjacency(a);
}

Matrix make_precision(const GraphSpec& spec) {
  switch (spec.family) {
    case GraphFamily::Band:
      return gen_band(spec.p);
    case GraphFamily::Random: {
      CounterRng rng = CounterRng::keyed(spec.seed, 0, "graph");
      return gen_random(spec.p, rng, spec.edge_prob);
    }
    case GraphFamily::Hub:
      return gen_hub(spec.p, spec.group_size);
    case GraphFamily::Cluster: {
      CounterRng rng = CounterRng::keyed(spec.seed, 0, "graph");
      return gen_cluster(spec.p, rng, spec.group_size, spec.edge_prob);
    }
  }
  throw ValidationError("make_precision: unknown graph family");
}

Matrix sample_gaussian(const Matrix& omega, int n, CounterRng& rng) {
  if (n < 1) throw ValidationError("sample_gaussian: requires n >= 1");
  const int p = omega.rows();
  const Matrix sigma = spd_inverse(omega);
  const Matrix l = cholesky(sigma);
  Matrix x(n, p);
  Vector g(p);
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < p; ++i) g[i] = rng.next_normal();
    double* xk = x.row_ptr(k);
    // row = L g, so rows have covariance L L^T = Omega^{-1}
    for (int i = 0; i < p; ++i) {
      double s = 0.0;
      for (int c = 0; c <= i; ++c) s += l(i, c) * g[c];
      xk[i] = s;
    }
  }
  return x;
}

Matrix sample_subgaussian(const Matrix& omega, int n, CounterRng& rng) {
  if (n < 1) throw ValidationError("sample_subgaussian: requires n >= 1");
  const int p = omega.rows();
  const Matrix r = spd_inverse_sqrt(omega);
  const double bound = std::sqrt(3.0);
  Matrix x(n, p);
  Vector u(p);
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < p; ++i) u[i] = rng.next_uniform(-bound, bound);
    double* xk = x.row_ptr(k);
    for (int i = 0; i < p; ++i) {
      double s = 0.0;
      for (int c = 0; c < p; ++c) s += r(i, c) * u[c];
      xk[i] = s;
    }
  }
  return x;
}

int count_edges(const Matrix& omega) {
  int edges = 0;
  for (int i = 0; i < omega.rows(); ++i)
    for (int j = i + 1; j < omega.cols(); ++j)
      if (omega(i, j) != 0.0) ++edges;
  return edges;
}

}  // namespace loreg
