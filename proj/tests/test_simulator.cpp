#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "oracles.hpp"
#include "qmc/errors.hpp"
#include "qmc/rng.hpp"
#include "qmc/simulator.hpp"

using namespace qmc;

namespace {

WeightedGraph random_connectedish(int n, Rng& rng) {
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (rng.uniform() < 0.6) edges.push_back({i, j, rng.uniform_pos()});
  if (edges.empty()) edges.push_back({0, 1, 1.0});
  return WeightedGraph(n, std::move(edges));
}

QaoaParams random_params(int p, Rng& rng) {
  QaoaParams params;
  params.p = p;
  for (int i = 0; i < p; ++i) params.gamma.push_back(rng.uniform(0.0, 2.0 * std::numbers::pi));
  for (int i = 0; i < p; ++i) params.beta.push_back(rng.uniform(0.0, std::numbers::pi));
  return params;
}

}  // namespace

TEST_CASE("plus state") {
  const StateVector one = prepare_plus_state(1);
  CHECK(one.amplitudes()[0].real() == doctest::Approx(std::sqrt(0.5)));
  CHECK(one.amplitudes()[1].real() == doctest::Approx(std::sqrt(0.5)));

  const StateVector two = prepare_plus_state(2);
  for (const auto& a : two.amplitudes()) CHECK(a.real() == doctest::Approx(0.5));

  const StateVector ten = prepare_plus_state(10);
  CHECK(ten.norm_sq() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(prepare_plus_state(25), NumericError);
  CHECK_THROWS_AS(prepare_plus_state(0), DataError);
}

TEST_CASE("cut table matches direct evaluation") {
  Rng rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + static_cast<int>(rng.below(7));
    const WeightedGraph g = random_connectedish(n, rng);
    const CutTable t = CutTable::build(g);
    for (std::uint64_t k = 0; k < t.size(); ++k)
      CHECK(t[k] == doctest::Approx(cut_value_bits(g, k)).epsilon(1e-13));
  }
}

TEST_CASE("cost layer: identity at gamma=0 and probability-preserving") {
  WeightedGraph g = WeightedGraph::complete(3);
  StateVector st = prepare_plus_state(3);
  apply_cost_layer(st, g, 0.0);
  for (const auto& a : st.amplitudes()) CHECK(a.real() == doctest::Approx(std::pow(2, -1.5)));

  Rng rng(4);
  StateVector st2 = prepare_plus_state(3);
  apply_cost_layer(st2, g, rng.uniform(0.0, 6.0));
  for (std::uint64_t k = 0; k < st2.dim(); ++k)
    CHECK(std::norm(st2.amplitudes()[k]) == doctest::Approx(1.0 / 8.0).epsilon(1e-12));
}

TEST_CASE("single-edge cost layer phases only the cut states") {
  WeightedGraph g(2, {{0, 1, 1.0}});
  StateVector st = prepare_plus_state(2);
  apply_cost_layer(st, g, std::numbers::pi);
  // |01> and |10> pick up e^{-i pi} = -1
  CHECK(st.amplitudes()[0].real() == doctest::Approx(0.5));
  CHECK(st.amplitudes()[1].real() == doctest::Approx(-0.5));
  CHECK(st.amplitudes()[2].real() == doctest::Approx(-0.5));
  CHECK(st.amplitudes()[3].real() == doctest::Approx(0.5));
}

TEST_CASE("cost layer equals the dense matrix-exponential oracle") {
  Rng rng(5);
  const WeightedGraph g = WeightedGraph::complete(3);
  for (int trial = 0; trial < 10; ++trial) {
    const double gamma = rng.uniform(0.0, 6.283);
    StateVector st = prepare_plus_state(3);
    apply_mixer_layer(st, 0.3);  // non-trivial input state
    oracle::Vec ref = oracle::cost_unitary(g, gamma) * oracle::to_eigen(st);
    apply_cost_layer(st, g, gamma);
    CHECK(oracle::distance_up_to_phase(oracle::to_eigen(st), ref) <= 1e-10);
  }
}

TEST_CASE("mixer layer: identity, R_X(pi) action, and dense oracle") {
  StateVector st = prepare_plus_state(2);
  apply_mixer_layer(st, 0.0);
  for (const auto& a : st.amplitudes()) CHECK(a.real() == doctest::Approx(0.5));

  // beta = pi/2 on |0>: R_X(pi)|0> = -i|1> exactly
  StateVector basis(1, {{1.0, 0.0}, {0.0, 0.0}});
  apply_mixer_layer(basis, std::numbers::pi / 2.0);
  CHECK(std::abs(basis.amplitudes()[0]) <= 1e-15);
  CHECK(basis.amplitudes()[1].real() == doctest::Approx(0.0));
  CHECK(basis.amplitudes()[1].imag() == doctest::Approx(-1.0));

  Rng rng(6);
  for (int trial = 0; trial < 10; ++trial) {
    const double beta = rng.uniform(0.0, 3.14);
    StateVector s3 = prepare_plus_state(3);
    apply_cost_layer(s3, WeightedGraph::complete(3), 0.7);
    oracle::Vec ref = oracle::mixer_unitary(3, beta) * oracle::to_eigen(s3);
    apply_mixer_layer(s3, beta);
    CHECK((oracle::to_eigen(s3) - ref).norm() <= 1e-12);
  }
}

TEST_CASE("full circuit equals the dense oracle for n <= 6") {
  Rng rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2 + static_cast<int>(rng.below(5));
    const WeightedGraph g = random_connectedish(n, rng);
    const QaoaParams params = random_params(1 + static_cast<int>(rng.below(3)), rng);
    const StateVector st = run_qaoa_circuit(g, params);
    CHECK(std::abs(st.norm_sq() - 1.0) <= 1e-10);
    const oracle::Vec ref = oracle::run_circuit(g, params);
    CHECK(oracle::distance_up_to_phase(oracle::to_eigen(st), ref) <= 1e-10);
    const double e = exact_expectation(st, g);
    CHECK(std::abs(e - oracle::expectation(ref, oracle::cost_hamiltonian(g))) <= 1e-10);
  }
}

TEST_CASE("trivial circuit facts") {
  WeightedGraph edge(2, {{0, 1, 1.0}});
  // p=1, gamma=beta=0 keeps the plus state
  const StateVector st = run_qaoa_circuit(edge, QaoaParams::make({0.0}, {0.0}));
  for (const auto& a : st.amplitudes()) CHECK(a.real() == doctest::Approx(0.5));

  // single edge, p=1: E = (1 + sin(4 beta) sin(gamma)) / 2, so the optimum
  // 1.0 sits at (pi/2, pi/8)
  const StateVector opt =
      run_qaoa_circuit(edge, QaoaParams::make({std::numbers::pi / 2}, {std::numbers::pi / 8}));
  CHECK(exact_expectation(opt, edge) == doctest::Approx(1.0).epsilon(1e-12));
  const StateVector half =
      run_qaoa_circuit(edge, QaoaParams::make({std::numbers::pi / 2}, {std::numbers::pi / 4}));
  CHECK(exact_expectation(half, edge) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("plus-state expectation is half the total weight") {
  Rng rng(8);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 2 + static_cast<int>(rng.below(8));
    const WeightedGraph g = random_connectedish(n, rng);
    const StateVector st = prepare_plus_state(n);
    CHECK(exact_expectation(st, g) == doctest::Approx(g.total_weight() / 2).epsilon(1e-12));
  }
}

TEST_CASE("expectation matches a hand enumeration on a random state") {
  Rng rng(9);
  WeightedGraph path(4, {{0, 1, 1.0}, {1, 2, 1.0}, {2, 3, 1.0}});
  std::vector<std::complex<double>> amps(16);
  double norm = 0.0;
  for (auto& a : amps) {
    a = {rng.normal(), rng.normal()};
    norm += std::norm(a);
  }
  for (auto& a : amps) a /= std::sqrt(norm);
  const StateVector st(4, amps);
  double expect = 0.0;
  for (std::uint64_t k = 0; k < 16; ++k) expect += std::norm(amps[k]) * cut_value_bits(path, k);
  CHECK(exact_expectation(st, path) == doctest::Approx(expect).epsilon(1e-12));
  const CutTable t = CutTable::build(path);
  CHECK(exact_expectation(st, t) == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("norm is preserved through deep circuits") {
  Rng rng(10);
  const WeightedGraph g = random_connectedish(8, rng);
  const QaoaParams params = random_params(10, rng);
  const StateVector st = run_qaoa_circuit(g, params);
  CHECK(std::abs(st.norm_sq() - 1.0) <= 1e-10);
}

TEST_CASE("expectation is invariant under vertex relabeling") {
  Rng rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 5;
    const WeightedGraph g = random_connectedish(n, rng);
    const QaoaParams params = random_params(2, rng);
    std::vector<int> perm{0, 1, 2, 3, 4};
    for (int i = n - 1; i > 0; --i) std::swap(perm[i], perm[rng.below(i + 1)]);
    std::vector<Edge> relabeled;
    for (const auto& e : g.edges()) relabeled.push_back({perm[e.u], perm[e.v], e.w});
    const WeightedGraph h(n, relabeled);
    const double eg = exact_expectation(run_qaoa_circuit(g, params), g);
    const double eh = exact_expectation(run_qaoa_circuit(h, params), h);
    CHECK(eg == doctest::Approx(eh).epsilon(1e-10));
  }
}

TEST_CASE("sampling: basis state, binomial bounds, and mean consistency") {
  // basis state: every shot lands on it
  std::vector<std::complex<double>> amps(8, {0.0, 0.0});
  amps[5] = {1.0, 0.0};
  const StateVector basis(3, amps);
  const SampleDistribution d = sample(basis, 1000, 1);
  REQUIRE(d.counts.size() == 1);
  CHECK(d.counts.at(5) == 1000);

  // plus state n=2: each outcome within 4 sigma of N/4
  const StateVector plus = prepare_plus_state(2);
  const std::uint64_t shots = kCampaignShots;
  const SampleDistribution dp = sample(plus, shots, 7);
  const double expect = shots / 4.0;
  const double sigma = std::sqrt(shots * 0.25 * 0.75);
  std::uint64_t total = 0;
  for (const auto& [k, cnt] : dp.counts) {
    total += cnt;
    CHECK(std::abs(static_cast<double>(cnt) - expect) <= 4 * sigma);
  }
  CHECK(total == shots);

  // sampled mean within 4 standard errors of the exact expectation
  Rng rng(12);
  const WeightedGraph g = random_connectedish(6, rng);
  const QaoaParams params = random_params(2, rng);
  const StateVector st = run_qaoa_circuit(g, params);
  const CutTable t = CutTable::build(g);
  const double mean = exact_expectation(st, t);
  const double var = exact_variance(st, t);
  const SampleDistribution ds = sample(st, 1 << 16, 3);
  const SampleEstimate est = estimate_from_samples(ds, g);
  CHECK(std::abs(est.mean - mean) <= 4.0 * std::sqrt(var / (1 << 16)));

  // determinism
  const SampleDistribution d1 = sample(st, 4096, 55);
  const SampleDistribution d2 = sample(st, 4096, 55);
  CHECK(d1.counts == d2.counts);
}

TEST_CASE("estimate_from_samples arithmetic and tie-break") {
  WeightedGraph tri = WeightedGraph::complete(3);
  SampleDistribution d;
  d.n_shots = 4;
  d.counts[1] = 3;  // cut 2
  d.counts[0] = 1;  // cut 0
  const SampleEstimate est = estimate_from_samples(d, tri);
  CHECK(est.mean == doctest::Approx(1.5));
  CHECK(est.best_value == doctest::Approx(2.0));
  CHECK(est.best_cut == CutAssignment{-1, 1, 1});

  // tie: indices 1 and 2 both cut 2; smallest index wins
  SampleDistribution tie;
  tie.n_shots = 2;
  tie.counts[2] = 1;
  tie.counts[1] = 1;
  CHECK(estimate_from_samples(tie, tri).best_cut == CutAssignment{-1, 1, 1});
}

TEST_CASE("params canonicalization is explicit and exact") {
  const QaoaParams raw = QaoaParams::make({7.0, -1.0}, {4.0, -0.5});
  const QaoaParams canon = raw.canonicalized();
  CHECK(raw.gamma[0] == 7.0);  // untouched
  CHECK(canon.gamma[0] == doctest::Approx(7.0 - 2 * std::numbers::pi));
  CHECK(canon.gamma[1] == doctest::Approx(2 * std::numbers::pi - 1.0));
  CHECK(canon.beta[0] == doctest::Approx(4.0 - std::numbers::pi));
  CHECK(canon.beta[1] == doctest::Approx(std::numbers::pi - 0.5));
  for (double x : canon.gamma) CHECK((x >= 0 && x < 2 * std::numbers::pi));
  for (double x : canon.beta) CHECK((x >= 0 && x < std::numbers::pi));
}
