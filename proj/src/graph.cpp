#include "qmc/graph.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qmc/errors.hpp"
#include "qmc/rng.hpp"

namespace qmc {

WeightedGraph::WeightedGraph(int n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
  if (n < 0) throw DataError("vertex count must be non-negative");
  for (auto& e : edges_) {
    if (e.u > e.v) std::swap(e.u, e.v);
    if (e.u < 0 || e.v >= n_ || e.u == e.v)
      throw DataError("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                      ") out of range for n=" + std::to_string(n_));
    if (!(e.w > 0.0) || !std::isfinite(e.w))
      throw DataError("edge weight must be finite and positive");
  }
  std::sort(edges_.begin(), edges_.end(), [](const Edge& a, const Edge& b) {
    return a.u != b.u ? a.u < b.u : a.v < b.v;
  });
  for (std::size_t i = 1; i < edges_.size(); ++i)
    if (edges_[i - 1].u == edges_[i].u && edges_[i - 1].v == edges_[i].v)
      throw DataError("duplicate edge (" + std::to_string(edges_[i].u) + "," +
                      std::to_string(edges_[i].v) + ")");
}

double WeightedGraph::total_weight() const {
  double s = 0.0;
  for (const auto& e : edges_) s += e.w;
  return s;
}

double WeightedGraph::max_weight() const {
  double m = 0.0;
  for (const auto& e : edges_) m = std::max(m, e.w);
  return m;
}

WeightedGraph WeightedGraph::normalized() const {
  if (edges_.empty()) throw DataError("cannot normalize a graph with no edges");
  const double m = max_weight();
  std::vector<Edge> scaled = edges_;
  for (auto& e : scaled) e.w /= m;
  return WeightedGraph(n_, std::move(scaled));
}

bool WeightedGraph::is_normalized(double tol) const {
  if (edges_.empty()) return true;
  return std::abs(max_weight() - 1.0) <= tol;
}

double WeightedGraph::normalized_density() const {
  if (n_ < 2) throw DataError("normalized density needs at least two vertices");
  return 2.0 * total_weight() / (static_cast<double>(n_) * (n_ - 1));
}

WeightedGraph WeightedGraph::complete(int n) {
  std::vector<Edge> es;
  es.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) es.push_back({i, j, 1.0});
  return WeightedGraph(n, std::move(es));
}

std::vector<std::vector<std::pair<int, double>>> build_adjacency(const WeightedGraph& g) {
  std::vector<std::vector<std::pair<int, double>>> adj(g.num_vertices());
  for (const auto& e : g.edges()) {
    adj[e.u].emplace_back(e.v, e.w);
    adj[e.v].emplace_back(e.u, e.w);
  }
  return adj;
}

WeightedGraph random_graph(const GraphGenSpec& spec) {
  if (spec.n < 0) throw DataError("random_graph: n must be non-negative");
  if (spec.zero_probability < 0.0 || spec.zero_probability > 1.0)
    throw DataError("random_graph: zero_probability must be in [0,1]");
  Rng rng(spec.rng_seed);
  std::vector<Edge> edges;
  for (int i = 0; i < spec.n; ++i) {
    for (int j = i + 1; j < spec.n; ++j) {
      const double keep = rng.uniform();
      const double w = spec.weighted ? rng.uniform_pos() : 1.0;
      if (keep < spec.zero_probability) continue;
      edges.push_back({i, j, w});
    }
  }
  WeightedGraph g(spec.n, std::move(edges));
  return g.num_edges() > 0 ? g.normalized() : g;
}

std::vector<WeightedGraph> generate_test_suite(int count, int n, bool weighted,
                                               std::uint64_t rng_seed) {
  if (count < 1) throw DataError("generate_test_suite: count must be >= 1");
  Rng rng(rng_seed);

  // Sparsity sweep: each draw uses a removal probability cycled over a grid
  // warped toward the extremes, where non-planar survivors (sparse end) and
  // extreme densities (dense end) are rare.
  const int kSweepSteps = 25;
  const int budget = std::max(4096, 1024 * count);

  struct Candidate {
    WeightedGraph g;
    double density;
  };
  std::vector<Candidate> survivors;
  for (int attempt = 0; attempt < budget; ++attempt) {
    const double t = static_cast<double>(attempt % kSweepSteps) / (kSweepSteps - 1);
    const double s = 2.0 * t - 1.0;
    const double warped = 0.5 * (1.0 + (s < 0 ? -1.0 : 1.0) * std::pow(std::abs(s), 0.35));
    const double zp = 0.02 + 0.96 * warped;
    GraphGenSpec s_spec{n, zp, weighted, rng.bits()};
    WeightedGraph g = random_graph(s_spec);
    if (g.num_edges() == 0 || is_planar(g)) continue;
    const double d = g.normalized_density();
    survivors.push_back({std::move(g), d});
  }
  if (static_cast<int>(survivors.size()) < count)
    throw NumericError("generate_test_suite: only " + std::to_string(survivors.size()) +
                       " non-planar graphs found for count=" + std::to_string(count) +
                       " (n=" + std::to_string(n) + ")");

  std::sort(survivors.begin(), survivors.end(),
            [](const Candidate& a, const Candidate& b) { return a.density < b.density; });

  // One pick per density bin, nearest to the bin center; spill unused
  // survivors into unfilled bins afterwards.
  std::vector<int> picked;
  std::vector<char> used(survivors.size(), 0);
  for (int b = 0; b < count; ++b) {
    const double lo = static_cast<double>(b) / count;
    const double hi = static_cast<double>(b + 1) / count;
    const double center = 0.5 * (lo + hi);
    int best = -1;
    for (std::size_t i = 0; i < survivors.size(); ++i) {
      if (used[i]) continue;
      const double d = survivors[i].density;
      if (d < lo || d >= hi) continue;
      if (best < 0 ||
          std::abs(d - center) < std::abs(survivors[best].density - center))
        best = static_cast<int>(i);
    }
    if (best >= 0) {
      used[best] = 1;
      picked.push_back(best);
    }
  }
  // Fill any remaining slots with the unused survivors that best even out the
  // spacing (greedy farthest-from-picked by density).
  while (static_cast<int>(picked.size()) < count) {
    int best = -1;
    double best_gap = -1.0;
    for (std::size_t i = 0; i < survivors.size(); ++i) {
      if (used[i]) continue;
      double gap = 2.0;
      for (int j : picked)
        gap = std::min(gap, std::abs(survivors[i].density - survivors[j].density));
      if (gap > best_gap) {
        best_gap = gap;
        best = static_cast<int>(i);
      }
    }
    used[best] = 1;
    picked.push_back(best);
  }
  std::sort(picked.begin(), picked.end());

  std::vector<WeightedGraph> out;
  out.reserve(picked.size());
  for (int i : picked) out.push_back(std::move(survivors[i].g));
  return out;
}

}  // namespace qmc
