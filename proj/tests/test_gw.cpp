#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "qmc/errors.hpp"
#include "qmc/gw.hpp"
#include "qmc/maxcut.hpp"
#include "qmc/rng.hpp"

using namespace qmc;

namespace {

WeightedGraph random_weighted(int n, double keep, Rng& rng) {
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (rng.uniform() < keep) edges.push_back({i, j, rng.uniform_pos()});
  if (edges.empty()) edges.push_back({0, 1, 1.0});
  WeightedGraph g(n, std::move(edges));
  return g.normalized();
}

}  // namespace

TEST_CASE("single edge relaxes to antipodal vectors") {
  WeightedGraph edge(2, {{0, 1, 1.0}});
  const RelaxationResult res = solve_relaxation(edge, gw_default_rank(2));
  CHECK(res.objective == doctest::Approx(1.0).epsilon(1e-9));
  double dot = 0.0;
  for (int d = 0; d < res.embedding.k; ++d)
    dot += res.embedding.row(0)[d] * res.embedding.row(1)[d];
  CHECK(dot == doctest::Approx(-1.0).epsilon(1e-8));
  CHECK(res.embedding.max_norm_defect() <= 1e-8);
}

TEST_CASE("triangle relaxes to the 120-degree configuration") {
  const WeightedGraph k3 = WeightedGraph::complete(3);
  const RelaxationResult res = solve_relaxation(k3, gw_default_rank(3));
  CHECK(res.objective == doctest::Approx(2.25).epsilon(1e-8));
}

TEST_CASE("relaxation upper-bounds the exact cut and keeps unit rows") {
  Rng rng(31);
  for (int trial = 0; trial < 15; ++trial) {
    const int n = 4 + static_cast<int>(rng.below(7));
    const WeightedGraph g = random_weighted(n, 0.6, rng);
    const RelaxationResult res = solve_relaxation(g, gw_default_rank(n), 10000, 1e-9, trial);
    CHECK(res.converged);
    CHECK(res.embedding.max_norm_defect() <= 1e-8);
    CHECK(res.objective >= brute_force_maxcut(g).value - 1e-7);
  }
}

TEST_CASE("ascent is monotone across sweep budgets") {
  Rng rng(37);
  const WeightedGraph g = random_weighted(9, 0.7, rng);
  double prev = -1.0;
  for (int sweeps = 1; sweeps <= 24; ++sweeps) {
    const RelaxationResult res = solve_relaxation(g, gw_default_rank(9), sweeps, 1e-9, 12345);
    CHECK(res.objective >= prev - 1e-12);
    prev = res.objective;
  }
}

TEST_CASE("rounding an antipodal edge embedding always cuts it") {
  WeightedGraph edge(2, {{0, 1, 1.0}});
  UnitVectorEmbedding emb;
  emb.n = 2;
  emb.k = 3;
  emb.vectors = {1, 0, 0, -1, 0, 0};
  const RatioDistribution dist = hyperplane_round(emb, edge, 500, 7);
  for (const auto& s : dist.samples) CHECK(s.value == doctest::Approx(1.0));
  CHECK(dist.mean == doctest::Approx(1.0));
}

TEST_CASE("K10 rounding meets the 0.878 guarantee") {
  const WeightedGraph k10 = WeightedGraph::complete(10);
  const RelaxationResult relax = solve_relaxation(k10, gw_default_rank(10));
  const int cuts = 10000;
  const RatioDistribution dist = hyperplane_round(relax.embedding, k10, cuts, 3);
  double var = 0.0;
  for (const auto& s : dist.samples) var += (s.ratio - dist.mean) * (s.ratio - dist.mean);
  var /= (cuts - 1);
  const double se = std::sqrt(var / cuts);
  CHECK(dist.mean >= 0.878 - 3 * se);
}

TEST_CASE("bipartite graphs reach ratio 1 within 10k cuts") {
  Rng rng(41);
  std::vector<Edge> edges;
  for (int i = 0; i < 4; ++i)
    for (int j = 4; j < 9; ++j)
      if (rng.uniform() < 0.8) edges.push_back({i, j, rng.uniform_pos()});
  const WeightedGraph g = WeightedGraph(9, edges).normalized();
  const RatioDistribution dist = gw_baseline(g, 10000, 5);
  CHECK(dist.max == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("gw_baseline is deterministic per seed and histogram is consistent") {
  Rng rng(43);
  const WeightedGraph g = random_weighted(8, 0.6, rng);
  const RatioDistribution a = gw_baseline(g, 800, 11);
  const RatioDistribution b = gw_baseline(g, 800, 11);
  REQUIRE(a.samples.size() == b.samples.size());
  for (std::size_t i = 0; i < a.samples.size(); ++i)
    CHECK(a.samples[i].value == b.samples[i].value);

  std::uint64_t total = 0;
  for (std::uint64_t c : a.histogram) total += c;
  CHECK(total == a.samples.size());
  CHECK(a.max >= a.mean);
  for (const auto& s : a.samples) {
    CHECK(s.ratio >= 0.0);
    CHECK(s.ratio <= 1.0);
  }
}

TEST_CASE("expected rounded value respects the guarantee against the SDP objective") {
  Rng rng(47);
  for (int trial = 0; trial < 5; ++trial) {
    const WeightedGraph g = random_weighted(10, 0.5, rng);
    const RelaxationResult relax = solve_relaxation(g, gw_default_rank(10), 10000, 1e-9, trial);
    const double optimum = brute_force_maxcut(g).value;
    const RatioDistribution dist = hyperplane_round(relax.embedding, g, 10000, trial, optimum);
    double mean_value = dist.mean * optimum;
    double var = 0.0;
    for (const auto& s : dist.samples) var += (s.value - mean_value) * (s.value - mean_value);
    var /= (dist.samples.size() - 1);
    const double se = std::sqrt(var / dist.samples.size());
    CHECK(mean_value >= 0.878 * relax.objective - 3 * se);
  }
}
