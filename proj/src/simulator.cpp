#include "qmc/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "qmc/errors.hpp"
#include "qmc/rng.hpp"

namespace qmc {

QaoaParams QaoaParams::make(std::vector<double> gamma, std::vector<double> beta) {
  QaoaParams p;
  p.p = static_cast<int>(gamma.size());
  p.gamma = std::move(gamma);
  p.beta = std::move(beta);
  p.validate();
  return p;
}

void QaoaParams::validate() const {
  if (p < 1) throw DataError("QaoaParams: p must be >= 1");
  if (static_cast<int>(gamma.size()) != p || static_cast<int>(beta.size()) != p)
    throw DataError("QaoaParams: gamma/beta must both have length p");
  for (double x : gamma)
    if (!std::isfinite(x)) throw DataError("QaoaParams: non-finite gamma");
  for (double x : beta)
    if (!std::isfinite(x)) throw DataError("QaoaParams: non-finite beta");
}

namespace {
double wrap(double x, double period) {
  double r = std::fmod(x, period);
  if (r < 0) r += period;
  return r;
}
}  // namespace

QaoaParams QaoaParams::canonicalized() const {
  QaoaParams out = *this;
  for (double& x : out.gamma) x = wrap(x, 2.0 * std::numbers::pi);
  for (double& x : out.beta) x = wrap(x, std::numbers::pi);
  return out;
}

StateVector::StateVector(int n, std::vector<std::complex<double>> amplitudes)
    : n_(n), amp_(std::move(amplitudes)) {
  if (n < 0 || amp_.size() != (std::uint64_t{1} << n))
    throw DataError("StateVector: amplitude count must be 2^n");
}

double StateVector::norm_sq() const {
  double s = 0.0;
  for (const auto& a : amp_) s += std::norm(a);
  return s;
}

CutTable CutTable::build(const WeightedGraph& g) {
  const int n = g.num_vertices();
  if (n > kDefaultQubitCap + 2)
    throw NumericError("CutTable: n=" + std::to_string(n) + " too large to tabulate");
  const auto adj = build_adjacency(g);
  CutTable t;
  t.c_.assign(std::uint64_t{1} << n, 0.0);
  // c[k] extends c[k minus its highest bit]: setting bit b cuts the incident
  // edges whose other endpoint is 0 and un-cuts those already counted as cut
  // against b's former 0 side.
  for (int b = 0; b < n; ++b) {
    const std::uint64_t bb = std::uint64_t{1} << b;
    for (std::uint64_t rest = 0; rest < bb; ++rest) {
      double delta = 0.0;
      for (const auto& [j, w] : adj[b])
        delta += ((rest >> j) & 1ULL) == 0 ? w : -w;
      t.c_[bb | rest] = t.c_[rest] + delta;
    }
  }
  return t;
}

double CutTable::max_value() const {
  double m = 0.0;
  for (double v : c_) m = std::max(m, v);
  return m;
}

StateVector prepare_plus_state(int n, int qubit_cap) {
  if (n < 1) throw DataError("prepare_plus_state: n must be >= 1");
  if (n > qubit_cap)
    throw NumericError("prepare_plus_state: n=" + std::to_string(n) +
                       " exceeds the qubit cap of " + std::to_string(qubit_cap));
  const std::uint64_t dim = std::uint64_t{1} << n;
  const double a = std::pow(2.0, -0.5 * n);
  return StateVector(n, std::vector<std::complex<double>>(dim, {a, 0.0}));
}

void apply_cost_layer(StateVector& state, const WeightedGraph& g, double gamma) {
  if (state.num_qubits() != g.num_vertices())
    throw DataError("apply_cost_layer: state/graph dimension mismatch");
  auto& amp = state.amplitudes();
  // Per-edge phases; the product over edges is exactly e^{-i gamma C(Z_k)}.
  for (const auto& e : g.edges()) {
    const std::complex<double> phase{std::cos(gamma * e.w), -std::sin(gamma * e.w)};
    const std::uint64_t bu = std::uint64_t{1} << e.u;
    const std::uint64_t bv = std::uint64_t{1} << e.v;
    for (std::uint64_t k = 0; k < amp.size(); ++k)
      if (((k & bu) != 0) != ((k & bv) != 0)) amp[k] *= phase;
  }
}

void apply_cost_layer(StateVector& state, const CutTable& table, double gamma) {
  auto& amp = state.amplitudes();
  if (table.size() != amp.size())
    throw DataError("apply_cost_layer: cut table size mismatch");
  for (std::uint64_t k = 0; k < amp.size(); ++k) {
    const double t = gamma * table[k];
    amp[k] *= std::complex<double>{std::cos(t), -std::sin(t)};
  }
}

void apply_mixer_layer(StateVector& state, double beta) {
  const double c = std::cos(beta);
  const double s = std::sin(beta);
  auto& amp = state.amplitudes();
  const std::uint64_t dim = amp.size();
  for (int q = 0; q < state.num_qubits(); ++q) {
    const std::uint64_t bq = std::uint64_t{1} << q;
    for (std::uint64_t base = 0; base < dim; base += bq << 1) {
      for (std::uint64_t k = base; k < base + bq; ++k) {
        const std::complex<double> a0 = amp[k];
        const std::complex<double> a1 = amp[k | bq];
        amp[k] = {c * a0.real() + s * a1.imag(), c * a0.imag() - s * a1.real()};
        amp[k | bq] = {c * a1.real() + s * a0.imag(), c * a1.imag() - s * a0.real()};
      }
    }
  }
}

StateVector run_qaoa_circuit(const WeightedGraph& g, const QaoaParams& params,
                             const SimOptions& opts) {
  params.validate();
  StateVector state = prepare_plus_state(g.num_vertices(), opts.qubit_cap);
  const bool tabulate = (std::uint64_t{8} << g.num_vertices()) <= opts.cut_table_budget;
  if (tabulate) {
    const CutTable table = CutTable::build(g);
    for (int j = 0; j < params.p; ++j) {
      apply_cost_layer(state, table, params.gamma[j]);
      apply_mixer_layer(state, params.beta[j]);
    }
  } else {
    for (int j = 0; j < params.p; ++j) {
      apply_cost_layer(state, g, params.gamma[j]);
      apply_mixer_layer(state, params.beta[j]);
    }
  }
  return state;
}

double exact_expectation(const StateVector& state, const WeightedGraph& g) {
  if (state.num_qubits() != g.num_vertices())
    throw DataError("exact_expectation: state/graph dimension mismatch");
  const auto& amp = state.amplitudes();
  // E = sum_e w_e P(edge e is cut); one pass per edge keeps memory flat.
  double e_total = 0.0;
  for (const auto& e : g.edges()) {
    const std::uint64_t bu = std::uint64_t{1} << e.u;
    const std::uint64_t bv = std::uint64_t{1} << e.v;
    double pcut = 0.0;
    for (std::uint64_t k = 0; k < amp.size(); ++k)
      if (((k & bu) != 0) != ((k & bv) != 0)) pcut += std::norm(amp[k]);
    e_total += e.w * pcut;
  }
  return e_total;
}

double exact_expectation(const StateVector& state, const CutTable& table) {
  const auto& amp = state.amplitudes();
  if (table.size() != amp.size()) throw DataError("exact_expectation: table size mismatch");
  double e = 0.0;
  for (std::uint64_t k = 0; k < amp.size(); ++k) e += std::norm(amp[k]) * table[k];
  return e;
}

double exact_variance(const StateVector& state, const CutTable& table) {
  const auto& amp = state.amplitudes();
  if (table.size() != amp.size()) throw DataError("exact_variance: table size mismatch");
  double e = 0.0, e2 = 0.0;
  for (std::uint64_t k = 0; k < amp.size(); ++k) {
    const double p = std::norm(amp[k]);
    e += p * table[k];
    e2 += p * table[k] * table[k];
  }
  return e2 - e * e;
}

SampleDistribution sample(const StateVector& state, std::uint64_t n_shots, std::uint64_t seed) {
  if (n_shots < 1) throw DataError("sample: n_shots must be >= 1");
  const auto& amp = state.amplitudes();
  std::vector<double> cdf(amp.size());
  double acc = 0.0;
  for (std::uint64_t k = 0; k < amp.size(); ++k) {
    acc += std::norm(amp[k]);
    cdf[k] = acc;
  }
  const double total = acc;

  Rng rng(seed);
  SampleDistribution dist;
  dist.n_shots = n_shots;
  for (std::uint64_t s = 0; s < n_shots; ++s) {
    const double u = rng.uniform() * total;
    const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    const std::uint64_t k = it == cdf.end() ? amp.size() - 1 : static_cast<std::uint64_t>(it - cdf.begin());
    ++dist.counts[k];
  }
  return dist;
}

SampleEstimate estimate_from_samples(const SampleDistribution& dist, const WeightedGraph& g) {
  if (dist.counts.empty() || dist.n_shots == 0)
    throw DataError("estimate_from_samples: empty distribution");
  SampleEstimate est;
  double best = -1.0;
  std::uint64_t best_k = 0;
  for (const auto& [k, cnt] : dist.counts) {
    const double c = cut_value_bits(g, k);
    est.mean += static_cast<double>(cnt) * c;
    if (c > best) {  // map iterates ascending k, so ties keep the smallest k
      best = c;
      best_k = k;
    }
  }
  est.mean /= static_cast<double>(dist.n_shots);
  est.best_value = best;
  est.best_cut = assignment_from_bits(best_k, g.num_vertices());
  return est;
}

CircuitEvaluator::CircuitEvaluator(const WeightedGraph& g, const SimOptions& opts)
    : g_(g), opts_(opts) {
  if ((std::uint64_t{8} << g.num_vertices()) > opts.cut_table_budget)
    throw NumericError("CircuitEvaluator: cut table for n=" +
                       std::to_string(g.num_vertices()) + " exceeds the memory budget");
  table_ = CutTable::build(g_);
}

StateVector CircuitEvaluator::state(const QaoaParams& params) const {
  params.validate();
  StateVector st = prepare_plus_state(g_.num_vertices(), opts_.qubit_cap);
  for (int j = 0; j < params.p; ++j) {
    apply_cost_layer(st, table_, params.gamma[j]);
    apply_mixer_layer(st, params.beta[j]);
  }
  return st;
}

double CircuitEvaluator::expectation(const QaoaParams& params) const {
  return exact_expectation(state(params), table_);
}

double CircuitEvaluator::variance(const QaoaParams& params) const {
  return exact_variance(state(params), table_);
}

}  // namespace qmc
