#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace qmc {

struct Edge {
  int u = 0;
  int v = 0;
  double w = 1.0;
};

// Simple undirected weighted graph. Edges are stored with u < v, sorted
// lexicographically, weights strictly positive. Instances are immutable after
// construction and safe to share across threads.
class WeightedGraph {
 public:
  WeightedGraph() = default;
  WeightedGraph(int n, std::vector<Edge> edges);

  int num_vertices() const { return n_; }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }

  double total_weight() const;
  double max_weight() const;  // 0 for an empty edge set

  // Every weight divided by the max weight, so max(w) == 1 afterwards.
  // Rejects an empty edge set.
  WeightedGraph normalized() const;
  bool is_normalized(double tol = 1e-12) const;

  // D = sum over edges of 2 w / (n (n-1)); 1 for a complete unweighted graph.
  double normalized_density() const;

  static WeightedGraph complete(int n);  // unweighted K_n

 private:
  int n_ = 0;
  std::vector<Edge> edges_;
};

// Per-vertex incidence lists (neighbor, weight), built on demand.
std::vector<std::vector<std::pair<int, double>>> build_adjacency(const WeightedGraph& g);

struct GraphGenSpec {
  int n = 0;
  double zero_probability = 0.0;  // per-edge removal probability
  bool weighted = false;
  std::uint64_t rng_seed = 0;
};

// Symmetric random adjacency: each potential edge kept with probability
// 1 - zero_probability, weights uniform in (0,1] when weighted, then
// normalized (empty result returned as-is). Deterministic per seed.
WeightedGraph random_graph(const GraphGenSpec& spec);

// Left-right planarity test (linear-time class). Kuratowski's theorem is the
// criterion this decides.
bool is_planar(const WeightedGraph& g);

// Oversamples random non-planar graphs across a sparsity sweep, then picks
// `count` of them with densities roughly uniform over the achievable range
// (one survivor per density bin, nearest bin center). Throws NumericError on
// shortfall after the oversampling budget.
std::vector<WeightedGraph> generate_test_suite(int count, int n, bool weighted,
                                               std::uint64_t rng_seed);

}  // namespace qmc
