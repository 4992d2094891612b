#pragma once

#include <cstdint>
#include <vector>

#include "qmc/graph.hpp"

namespace qmc {

// n unit vectors in R^k, row-major.
struct UnitVectorEmbedding {
  int n = 0;
  int k = 0;
  std::vector<double> vectors;

  double* row(int i) { return vectors.data() + static_cast<std::size_t>(i) * k; }
  const double* row(int i) const { return vectors.data() + static_cast<std::size_t>(i) * k; }
  double max_norm_defect() const;  // max |  ||v_i|| - 1 |
};

struct RelaxationResult {
  UnitVectorEmbedding embedding;
  double objective = 0.0;  // sum w_ij (1 - v_i . v_j) / 2, upper-bounds Max-Cut
  int sweeps = 0;
  bool converged = false;
};

// Low-rank factorization of the cut SDP, maximized by cyclic row updates
// (each row set to the normalized negative weighted sum of its neighbors).
// Stalls trigger up to 3 perturbed restarts.
RelaxationResult solve_relaxation(const WeightedGraph& g, int k, int max_iter = 10000,
                                  double tol = 1e-9, std::uint64_t seed = 1);

struct RatioSample {
  double value = 0.0;
  double ratio = 0.0;
};

struct RatioDistribution {
  std::vector<RatioSample> samples;
  double mean = 0.0;
  double max = 0.0;
  std::vector<std::uint64_t> histogram;  // 100 bins of width 0.01 over [0,1]

  void finalize();  // recompute mean/max/histogram from samples
};

// n_cuts standard-normal hyperplanes; vertex i goes by sign(v_i . r), zero
// dot products count as +1. Ratios are against the brute-force optimum.
RatioDistribution hyperplane_round(const UnitVectorEmbedding& emb, const WeightedGraph& g,
                                   int n_cuts, std::uint64_t seed);
RatioDistribution hyperplane_round(const UnitVectorEmbedding& emb, const WeightedGraph& g,
                                   int n_cuts, std::uint64_t seed, double optimum);

// Relaxation at k = ceil(sqrt(2n)) + 1 followed by rounding.
RatioDistribution gw_baseline(const WeightedGraph& g, int n_cuts, std::uint64_t seed);

int gw_default_rank(int n);

}  // namespace qmc
