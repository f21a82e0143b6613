#pragma once

#include <cstdint>

#include "loreg/matrix.hpp"
#include "loreg/rng.hpp"

namespace loreg {

enum class GraphFamily { Band, Random, Hub, Cluster };

struct GraphSpec {
  GraphFamily family = GraphFamily::Band;
  int p = 0;
  uint64_t seed = 0;       // separate from the data seed; fixed per experiment
  int group_size = 10;     // Hub/Cluster
  double edge_prob = -1.0; // <0 means the default: 4/p (Random) or 0.6 (Cluster)
};

/// Banded precision: 1 on the diagonal, 0.5 at |i-j|=1, 0.3 at |i-j|=2.
Matrix gen_band(int p);

/// Symmetric 0/1 adjacency with Bernoulli(edge_prob) edges, then the diagonal
/// shift of precision_from_adjacency. Default edge_prob is 4/p.
Matrix gen_random(int p, CounterRng& rng, double edge_prob = -1.0);

/// Star per contiguous group of group_size nodes; the first node of each
/// block is the hub.
Matrix gen_hub(int p, int group_size = 10);

/// Bernoulli(edge_prob) edges inside each contiguous group, none across.
Matrix gen_cluster(int p, CounterRng& rng, int group_size = 10, double edge_prob = 0.6);

/// Omega = A + (|lambda_min(A)| + 0.1) I.
Matrix precision_from_adjacency(const Matrix& a);

Matrix make_precision(const GraphSpec& spec);

/// Rows are i.i.d. N(0, Omega^{-1}): X = G L^T with Omega^{-1} = L L^T and G
/// standard normal.
Matrix sample_gaussian(const Matrix& omega, int n, CounterRng& rng);

/// Rows are Omega^{-1/2} u with u i.i.d. uniform on [-sqrt(3), sqrt(3)]
/// (unit variance), so the rows have covariance Omega^{-1}.
Matrix sample_subgaussian(const Matrix& omega, int n, CounterRng& rng);

/// Number of nonzero strictly-upper-triangle entries.
int count_edges(const Matrix& omega);

}  // namespace loreg
