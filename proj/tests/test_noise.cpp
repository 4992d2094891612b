#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <Eigen/Eigenvalues>
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "oracles.hpp"
#include "qmc/errors.hpp"
#include "qmc/noise.hpp"
#include "qmc/rng.hpp"

using namespace qmc;

namespace {

oracle::Mat to_eigen(const DensityMatrix& rho) {
  const std::uint64_t d = rho.dim();
  oracle::Mat m(d, d);
  for (std::uint64_t r = 0; r < d; ++r)
    for (std::uint64_t c = 0; c < d; ++c) m(r, c) = rho.at(r, c);
  return m;
}

// Kraus-sum reference for the shared channel convention: with probability p
// a uniform Pauli (identity included) on the support.
oracle::Mat kraus_depolarize(const oracle::Mat& rho, const std::vector<int>& support, double p,
                             int n) {
  const int q = static_cast<int>(support.size());
  const int n_paulis = 1 << (2 * q);  // 4^q
  oracle::Mat out = (1.0 - p) * rho;
  for (int code = 0; code < n_paulis; ++code) {
    oracle::Mat op = oracle::identity(1 << n);
    int c = code;
    for (int s = 0; s < q; ++s, c >>= 2) {
      const int which = c & 3;
      if (which == 1) op = oracle::op_on_qubit(oracle::pauli_x(), support[s], n) * op;
      if (which == 2) op = oracle::op_on_qubit(oracle::pauli_y(), support[s], n) * op;
      if (which == 3) op = oracle::op_on_qubit(oracle::pauli_z(), support[s], n) * op;
    }
    out += (p / n_paulis) * op * rho * op.adjoint();
  }
  return out;
}

oracle::Mat rzz_matrix(int a, int b, double gamma_w, int n) {
  const oracle::Mat zz =
      oracle::op_on_qubit(oracle::pauli_z(), a, n) * oracle::op_on_qubit(oracle::pauli_z(), b, n);
  return (oracle::Cplx(0, 0.5 * gamma_w) * zz).exp();
}

// full gate-by-gate dense evolution with Kraus channels
oracle::Mat dense_noisy_circuit(const WeightedGraph& g, const QaoaParams& params,
                                const NoiseModel& noise) {
  const int n = g.num_vertices();
  const oracle::Vec plus = oracle::plus_state(n);
  oracle::Mat rho = plus * plus.adjoint();
  for (int j = 0; j < params.p; ++j) {
    for (const auto& e : g.edges()) {
      const oracle::Mat u = rzz_matrix(e.u, e.v, params.gamma[j] * e.w, n);
      rho = u * rho * u.adjoint();
      rho = kraus_depolarize(rho, {e.u, e.v}, noise.p2, n);
    }
    for (int q = 0; q < n; ++q) {
      oracle::Mat rx(2, 2);
      const double b = params.beta[j];
      rx << oracle::Cplx(std::cos(b), 0), oracle::Cplx(0, -std::sin(b)),
          oracle::Cplx(0, -std::sin(b)), oracle::Cplx(std::cos(b), 0);
      const oracle::Mat u = oracle::op_on_qubit(rx, q, n);
      rho = u * rho * u.adjoint();
      rho = kraus_depolarize(rho, {q}, noise.p1, n);
    }
  }
  return rho;
}

WeightedGraph ring(int n) {
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i)
    edges.push_back({std::min(i, (i + 1) % n), std::max(i, (i + 1) % n), 1.0});
  return WeightedGraph(n, edges);
}

}  // namespace

TEST_CASE("noise model validation") {
  const NoiseModel bad1{-0.1, 0.0};
  const NoiseModel bad2{0.0, 1.5};
  CHECK_THROWS_AS(bad1.validate(), DataError);
  CHECK_THROWS_AS(bad2.validate(), DataError);
  CHECK(NoiseModel::model_one().p1 == 1e-3);
  CHECK(NoiseModel::model_one().p2 == 1e-2);
  CHECK(NoiseModel::model_two().p1 == 1e-4);
  CHECK(NoiseModel::model_two().p2 == 1e-3);
}

TEST_CASE("zero noise reproduces the pure state") {
  Rng rng(1);
  const WeightedGraph g = ring(4);
  const QaoaParams params = QaoaParams::make({0.8, 1.7}, {0.4, 0.9});
  const DensityMatrix rho = run_noisy_qaoa_density(g, params, {0.0, 0.0});
  const StateVector st = run_qaoa_circuit(g, params);
  const oracle::Vec psi = oracle::to_eigen(st);
  const oracle::Mat expect = psi * psi.adjoint();
  CHECK((to_eigen(rho) - expect).norm() <= 1e-9);
  CHECK(noisy_expectation(rho, g) == doctest::Approx(exact_expectation(st, g)).epsilon(1e-9));
}

TEST_CASE("full depolarizing reaches the maximally mixed state") {
  const WeightedGraph g = ring(3);
  const QaoaParams params = QaoaParams::make({0.7}, {0.3});
  const DensityMatrix rho = run_noisy_qaoa_density(g, params, {1.0, 1.0});
  const std::uint64_t d = rho.dim();
  oracle::Mat mixed = oracle::identity(static_cast<int>(d)) / static_cast<double>(d);
  CHECK((to_eigen(rho) - mixed).norm() <= 1e-12);
  CHECK(noisy_expectation(rho, g) == doctest::Approx(g.total_weight() / 2).epsilon(1e-12));
}

TEST_CASE("density evolution matches the dense Kraus oracle") {
  const WeightedGraph cycle = ring(4);
  const QaoaParams params = QaoaParams::make({1.1}, {0.5});
  for (const NoiseModel& model : {NoiseModel::model_one(), NoiseModel{0.08, 0.15}}) {
    const DensityMatrix rho = run_noisy_qaoa_density(cycle, params, model);
    const oracle::Mat ref = dense_noisy_circuit(cycle, params, model);
    CHECK((to_eigen(rho) - ref).norm() <= 1e-8);
  }
}

TEST_CASE("density matrix invariants hold along the evolution") {
  Rng rng(2);
  const WeightedGraph g = ring(5);
  const QaoaParams params = QaoaParams::make({0.9, 0.4}, {0.2, 1.1});
  const DensityMatrix rho = run_noisy_qaoa_density(g, params, NoiseModel::model_one());
  CHECK(std::abs(rho.trace_real() - 1.0) <= 1e-9);
  CHECK(rho.hermiticity_defect() <= 1e-10);
  Eigen::SelfAdjointEigenSolver<oracle::Mat> es(to_eigen(rho));
  CHECK(es.eigenvalues().minCoeff() >= -1e-8);
}

TEST_CASE("noisy_expectation reads the diagonal") {
  const WeightedGraph g = ring(3);
  DensityMatrix basis(3);
  // |5><5| : vertices 0 and 2 on the -1 side
  basis.data()[0] = {0.0, 0.0};
  basis.at(5, 5) = {1.0, 0.0};
  CHECK(noisy_expectation(basis, g) == doctest::Approx(cut_value_bits(g, 5)));
}

TEST_CASE("channel is unital: maximally mixed is a fixed point") {
  DensityMatrix rho(3);
  const std::uint64_t d = rho.dim();
  for (auto& x : rho.data()) x = {0.0, 0.0};
  for (std::uint64_t k = 0; k < d; ++k) rho.at(k, k) = {1.0 / d, 0.0};
  rho.depolarize_one(1, 0.3);
  rho.depolarize_two(0, 2, 0.7);
  oracle::Mat mixed = oracle::identity(static_cast<int>(d)) / static_cast<double>(d);
  CHECK((to_eigen(rho) - mixed).norm() <= 1e-15);
}

TEST_CASE("zero-noise trajectories equal noiseless sampling for the same seed") {
  const WeightedGraph g = ring(5);
  const QaoaParams params = QaoaParams::make({1.3, 0.5}, {0.8, 0.2});
  const SampleDistribution direct = sample(run_qaoa_circuit(g, params), 5000, 42);
  const SampleDistribution traj = run_noisy_qaoa_trajectories(g, params, {0.0, 0.0}, 7, 5000, 42);
  CHECK(direct.counts == traj.counts);
}

TEST_CASE("trajectory estimator agrees with the density result within 3 sigma") {
  const WeightedGraph g = ring(6);
  const QaoaParams params = QaoaParams::make({1.0, 0.6}, {0.4, 0.9});
  const NoiseModel model{0.02, 0.05};  // strong noise so the effect dominates shot noise
  const DensityMatrix rho = run_noisy_qaoa_density(g, params, model);
  const double reference = noisy_expectation(rho, g);

  // per-trajectory means are iid; their spread gives the standard error
  const int n_traj = 160;
  std::vector<double> means;
  for (int t = 0; t < n_traj; ++t) {
    const SampleDistribution d =
        run_noisy_qaoa_trajectories(g, params, model, 1, 2048, Rng::mix(900, t));
    means.push_back(estimate_from_samples(d, g).mean);
  }
  double mean = 0.0;
  for (double x : means) mean += x;
  mean /= n_traj;
  double var = 0.0;
  for (double x : means) var += (x - mean) * (x - mean);
  var /= (n_traj - 1);
  const double se = std::sqrt(var / n_traj);
  CHECK(std::abs(mean - reference) <= 3.0 * se);
}

TEST_CASE("monotone degradation in the depolarizing strength") {
  const WeightedGraph g = ring(6);
  const QaoaParams params = QaoaParams::make({1.0}, {0.35});
  double prev = 1e300;
  for (double p : {0.0, 1e-4, 1e-3, 1e-2}) {
    const DensityMatrix rho = run_noisy_qaoa_density(g, params, {p, p});
    const double e = noisy_expectation(rho, g);
    CHECK(e <= prev + 1e-12);
    prev = e;
  }
}

TEST_CASE("density path cap") {
  const WeightedGraph g = WeightedGraph::complete(11);
  CHECK_THROWS_AS(run_noisy_qaoa_density(g, QaoaParams::make({0.1}, {0.1}), {0.0, 0.0}),
                  NumericError);
}
