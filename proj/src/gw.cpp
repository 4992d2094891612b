#include "qmc/gw.hpp"

#include <algorithm>
#include <cmath>

#include "qmc/errors.hpp"
#include "qmc/maxcut.hpp"
#include "qmc/rng.hpp"

namespace qmc {

double UnitVectorEmbedding::max_norm_defect() const {
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    double s = 0.0;
    for (int j = 0; j < k; ++j) s += row(i)[j] * row(i)[j];
    worst = std::max(worst, std::abs(std::sqrt(s) - 1.0));
  }
  return worst;
}

int gw_default_rank(int n) {
  return static_cast<int>(std::ceil(std::sqrt(2.0 * n))) + 1;
}

namespace {

double embedding_objective(const UnitVectorEmbedding& emb, const WeightedGraph& g) {
  double obj = 0.0;
  for (const auto& e : g.edges()) {
    double dot = 0.0;
    for (int j = 0; j < emb.k; ++j) dot += emb.row(e.u)[j] * emb.row(e.v)[j];
    obj += e.w * 0.5 * (1.0 - dot);
  }
  return obj;
}

void random_unit_rows(UnitVectorEmbedding& emb, Rng& rng) {
  for (int i = 0; i < emb.n; ++i) {
    double norm_sq = 0.0;
    for (int j = 0; j < emb.k; ++j) {
      emb.row(i)[j] = rng.normal();
      norm_sq += emb.row(i)[j] * emb.row(i)[j];
    }
    const double inv = 1.0 / std::sqrt(norm_sq);
    for (int j = 0; j < emb.k; ++j) emb.row(i)[j] *= inv;
  }
}

// One cyclic sweep of v_i <- -normalize(sum_j w_ij v_j); rows with a ~zero
// neighbor sum are left in place.
void sweep(UnitVectorEmbedding& emb, const std::vector<std::vector<std::pair<int, double>>>& adj) {
  std::vector<double> acc(emb.k);
  for (int i = 0; i < emb.n; ++i) {
    std::fill(acc.begin(), acc.end(), 0.0);
    for (const auto& [j, w] : adj[i])
      for (int d = 0; d < emb.k; ++d) acc[d] += w * emb.row(j)[d];
    double norm_sq = 0.0;
    for (double a : acc) norm_sq += a * a;
    if (norm_sq < 1e-30) continue;
    const double inv = -1.0 / std::sqrt(norm_sq);
    for (int d = 0; d < emb.k; ++d) emb.row(i)[d] = inv * acc[d];
  }
}

}  // namespace

RelaxationResult solve_relaxation(const WeightedGraph& g, int k, int max_iter, double tol,
                                  std::uint64_t seed) {
  const int n = g.num_vertices();
  if (k < gw_default_rank(n) - 1)
    throw DataError("solve_relaxation: rank k too small for reliable ascent");
  const auto adj = build_adjacency(g);

  Rng rng(seed);
  RelaxationResult best;
  best.objective = -1.0;

  const int kMaxRestarts = 3;
  UnitVectorEmbedding emb;
  emb.n = n;
  emb.k = k;
  emb.vectors.assign(static_cast<std::size_t>(n) * k, 0.0);
  random_unit_rows(emb, rng);

  int total_sweeps = 0;
  for (int restart = 0; restart <= kMaxRestarts; ++restart) {
    double prev = embedding_objective(emb, g);
    bool converged = false;
    while (total_sweeps < max_iter) {
      sweep(emb, adj);
      ++total_sweeps;
      const double cur = embedding_objective(emb, g);
      const double denom = std::max(1.0, std::abs(cur));
      if (std::abs(cur - prev) / denom < tol) {
        prev = cur;
        converged = true;
        break;
      }
      prev = cur;
    }
    if (prev > best.objective) {
      best.embedding = emb;
      best.objective = prev;
      best.converged = converged;
    }
    if (restart == kMaxRestarts || total_sweeps >= max_iter) break;
    // perturb the converged embedding and keep ascending; a genuine global
    // optimum returns to the same objective
    for (auto& x : emb.vectors) x += 0.05 * rng.normal();
    for (int i = 0; i < n; ++i) {
      double norm_sq = 0.0;
      for (int d = 0; d < k; ++d) norm_sq += emb.row(i)[d] * emb.row(i)[d];
      const double inv = 1.0 / std::sqrt(norm_sq);
      for (int d = 0; d < k; ++d) emb.row(i)[d] *= inv;
    }
  }
  best.sweeps = total_sweeps;
  return best;
}

void RatioDistribution::finalize() {
  mean = 0.0;
  max = 0.0;
  histogram.assign(100, 0);
  for (const auto& s : samples) {
    mean += s.ratio;
    max = std::max(max, s.ratio);
    const int bin = std::clamp(static_cast<int>(s.ratio * 100.0), 0, 99);
    ++histogram[bin];
  }
  if (!samples.empty()) mean /= static_cast<double>(samples.size());
}

RatioDistribution hyperplane_round(const UnitVectorEmbedding& emb, const WeightedGraph& g,
                                   int n_cuts, std::uint64_t seed, double optimum) {
  if (emb.n != g.num_vertices()) throw DataError("hyperplane_round: dimension mismatch");
  if (n_cuts < 1) throw DataError("hyperplane_round: n_cuts must be >= 1");
  Rng rng(seed);
  RatioDistribution dist;
  dist.samples.reserve(n_cuts);
  std::vector<double> normal(emb.k);
  CutAssignment z(emb.n);
  for (int c = 0; c < n_cuts; ++c) {
    for (double& x : normal) x = rng.normal();
    for (int i = 0; i < emb.n; ++i) {
      double dot = 0.0;
      for (int d = 0; d < emb.k; ++d) dot += emb.row(i)[d] * normal[d];
      z[i] = dot < 0.0 ? -1 : 1;  // zero lands on +1
    }
    const double value = cut_value(g, z);
    dist.samples.push_back({value, approximation_ratio(value, optimum)});
  }
  dist.finalize();
  return dist;
}

RatioDistribution hyperplane_round(const UnitVectorEmbedding& emb, const WeightedGraph& g,
                                   int n_cuts, std::uint64_t seed) {
  return hyperplane_round(emb, g, n_cuts, seed, brute_force_maxcut(g).value);
}

RatioDistribution gw_baseline(const WeightedGraph& g, int n_cuts, std::uint64_t seed) {
  const RelaxationResult relax = solve_relaxation(g, gw_default_rank(g.num_vertices()),
                                                  10000, 1e-9, Rng::mix(seed, 0x67770001));
  return hyperplane_round(relax.embedding, g, n_cuts, Rng::mix(seed, 0x67770002));
}

}  // namespace qmc
