#include "qmc/noise.hpp"

#include <cmath>
#include <string>

#include "qmc/errors.hpp"
#include "qmc/maxcut.hpp"
#include "qmc/rng.hpp"

namespace qmc {

void NoiseModel::validate() const {
  if (p1 < 0.0 || p1 > 1.0 || p2 < 0.0 || p2 > 1.0)
    throw DataError("NoiseModel: probabilities must be in [0,1]");
}

DensityMatrix::DensityMatrix(int n) : n_(n) {
  if (n < 1) throw DataError("DensityMatrix: n must be >= 1");
  rho_.assign(dim() * dim(), {0.0, 0.0});
  rho_[0] = {1.0, 0.0};
}

DensityMatrix DensityMatrix::from_state(const StateVector& state) {
  DensityMatrix rho(state.num_qubits());
  const auto& a = state.amplitudes();
  const std::uint64_t d = rho.dim();
  for (std::uint64_t r = 0; r < d; ++r)
    for (std::uint64_t c = 0; c < d; ++c) rho.rho_[r * d + c] = a[r] * std::conj(a[c]);
  return rho;
}

double DensityMatrix::trace_real() const {
  double t = 0.0;
  for (std::uint64_t k = 0; k < dim(); ++k) t += at(k, k).real();
  return t;
}

double DensityMatrix::hermiticity_defect() const {
  double worst = 0.0;
  for (std::uint64_t r = 0; r < dim(); ++r)
    for (std::uint64_t c = r; c < dim(); ++c)
      worst = std::max(worst, std::abs(at(r, c) - std::conj(at(c, r))));
  return worst;
}

void DensityMatrix::apply_one_qubit_gate(int q, const std::complex<double> u[2][2]) {
  const std::uint64_t d = dim();
  const std::uint64_t bq = std::uint64_t{1} << q;
  // rho -> U rho: combine row pairs.
  for (std::uint64_t r = 0; r < d; ++r) {
    if (r & bq) continue;
    for (std::uint64_t c = 0; c < d; ++c) {
      const auto x0 = rho_[r * d + c];
      const auto x1 = rho_[(r | bq) * d + c];
      rho_[r * d + c] = u[0][0] * x0 + u[0][1] * x1;
      rho_[(r | bq) * d + c] = u[1][0] * x0 + u[1][1] * x1;
    }
  }
  // rho -> rho U^dagger: combine column pairs.
  for (std::uint64_t r = 0; r < d; ++r) {
    for (std::uint64_t c = 0; c < d; ++c) {
      if (c & bq) continue;
      const auto y0 = rho_[r * d + c];
      const auto y1 = rho_[r * d + (c | bq)];
      rho_[r * d + c] = y0 * std::conj(u[0][0]) + y1 * std::conj(u[0][1]);
      rho_[r * d + (c | bq)] = y0 * std::conj(u[1][0]) + y1 * std::conj(u[1][1]);
    }
  }
}

void DensityMatrix::apply_two_qubit_diagonal(int a, int b, const std::complex<double> d4[4]) {
  const std::uint64_t d = dim();
  const std::uint64_t ba = std::uint64_t{1} << a;
  const std::uint64_t bb = std::uint64_t{1} << b;
  auto idx = [&](std::uint64_t k) {
    return (((k & ba) != 0) ? 1u : 0u) | (((k & bb) != 0) ? 2u : 0u);
  };
  for (std::uint64_t r = 0; r < d; ++r)
    for (std::uint64_t c = 0; c < d; ++c)
      rho_[r * d + c] *= d4[idx(r)] * std::conj(d4[idx(c)]);
}

void DensityMatrix::depolarize_one(int q, double p) {
  if (p == 0.0) return;
  const std::uint64_t d = dim();
  const std::uint64_t bq = std::uint64_t{1} << q;
  const double keep = 1.0 - p;
  for (std::uint64_t r = 0; r < d; ++r) {
    if (r & bq) continue;
    const std::uint64_t r1 = r | bq;
    for (std::uint64_t c = 0; c < d; ++c) {
      if (c & bq) continue;
      const std::uint64_t c1 = c | bq;
      const auto t = 0.5 * (rho_[r * d + c] + rho_[r1 * d + c1]);
      rho_[r * d + c] = keep * rho_[r * d + c] + p * t;
      rho_[r1 * d + c1] = keep * rho_[r1 * d + c1] + p * t;
      rho_[r * d + c1] *= keep;
      rho_[r1 * d + c] *= keep;
    }
  }
}

void DensityMatrix::depolarize_two(int a, int b, double p) {
  if (p == 0.0) return;
  const std::uint64_t d = dim();
  const std::uint64_t ba = std::uint64_t{1} << a;
  const std::uint64_t bb = std::uint64_t{1} << b;
  const std::uint64_t off[4] = {0, ba, bb, ba | bb};
  const double keep = 1.0 - p;
  for (std::uint64_t r = 0; r < d; ++r) {
    if (r & (ba | bb)) continue;
    for (std::uint64_t c = 0; c < d; ++c) {
      if (c & (ba | bb)) continue;
      std::complex<double> t{0.0, 0.0};
      for (int i = 0; i < 4; ++i) t += rho_[(r | off[i]) * d + (c | off[i])];
      t *= 0.25;
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
          auto& x = rho_[(r | off[i]) * d + (c | off[j])];
          x = i == j ? keep * x + p * t : keep * x;
        }
    }
  }
}

namespace {

// R_ZZ(-gamma w) diagonal in the (bit_a, bit_b) subspace: phase
// exp(i gamma w z_a z_b / 2) with z = +1 for bit 0.
void rzz_diag(double gamma_w, std::complex<double> d4[4]) {
  const std::complex<double> plus{std::cos(0.5 * gamma_w), std::sin(0.5 * gamma_w)};
  const std::complex<double> minus = std::conj(plus);
  d4[0] = plus;
  d4[1] = minus;
  d4[2] = minus;
  d4[3] = plus;
}

// R_X(2 beta) = [[cos b, -i sin b], [-i sin b, cos b]]
void rx_gate(double beta, std::complex<double> u[2][2]) {
  u[0][0] = {std::cos(beta), 0.0};
  u[0][1] = {0.0, -std::sin(beta)};
  u[1][0] = {0.0, -std::sin(beta)};
  u[1][1] = {std::cos(beta), 0.0};
}

}  // namespace

DensityMatrix run_noisy_qaoa_density(const WeightedGraph& g, const QaoaParams& params,
                                     const NoiseModel& noise, int density_cap) {
  params.validate();
  noise.validate();
  const int n = g.num_vertices();
  if (n > density_cap)
    throw NumericError("run_noisy_qaoa_density: n=" + std::to_string(n) +
                       " exceeds the density-matrix cap of " + std::to_string(density_cap) +
                       "; use the trajectory path for larger graphs");
  DensityMatrix rho = DensityMatrix::from_state(prepare_plus_state(n));
  std::complex<double> d4[4];
  std::complex<double> u[2][2];
  for (int j = 0; j < params.p; ++j) {
    for (const auto& e : g.edges()) {
      rzz_diag(params.gamma[j] * e.w, d4);
      rho.apply_two_qubit_diagonal(e.u, e.v, d4);
      rho.depolarize_two(e.u, e.v, noise.p2);
    }
    rx_gate(params.beta[j], u);
    for (int q = 0; q < n; ++q) {
      rho.apply_one_qubit_gate(q, u);
      rho.depolarize_one(q, noise.p1);
    }
  }
  return rho;
}

namespace {

void apply_pauli(StateVector& st, int q, int which) {
  auto& a = st.amplitudes();
  const std::uint64_t bq = std::uint64_t{1} << q;
  const std::uint64_t dim = a.size();
  switch (which) {
    case 1:  // X
      for (std::uint64_t k = 0; k < dim; ++k)
        if (!(k & bq)) std::swap(a[k], a[k | bq]);
      break;
    case 2:  // Y
      for (std::uint64_t k = 0; k < dim; ++k)
        if (!(k & bq)) {
          const auto a0 = a[k];
          const auto a1 = a[k | bq];
          a[k] = {a1.imag(), -a1.real()};        // -i a1
          a[k | bq] = {-a0.imag(), a0.real()};   // +i a0
        }
      break;
    case 3:  // Z
      for (std::uint64_t k = 0; k < dim; ++k)
        if (k & bq) a[k] = -a[k];
      break;
    default:
      break;
  }
}

}  // namespace

SampleDistribution run_noisy_qaoa_trajectories(const WeightedGraph& g, const QaoaParams& params,
                                               const NoiseModel& noise, int n_traj,
                                               std::uint64_t n_shots, std::uint64_t seed,
                                               const SimOptions& opts) {
  params.validate();
  noise.validate();
  if (n_traj < 1) throw DataError("run_noisy_qaoa_trajectories: n_traj must be >= 1");
  if (n_shots < static_cast<std::uint64_t>(n_traj))
    throw DataError("run_noisy_qaoa_trajectories: n_shots must be >= n_traj");
  const int n = g.num_vertices();

  // Shot sampling consumes one shared stream in trajectory order, so the
  // zero-noise case reproduces plain sample() exactly.
  Rng shot_rng(seed);
  SampleDistribution pooled;
  pooled.n_shots = n_shots;

  std::vector<double> cdf;
  for (int t = 0; t < n_traj; ++t) {
    Rng pauli_rng = Rng::derived(seed, 0x706175u + static_cast<std::uint64_t>(t));
    StateVector st = prepare_plus_state(n, opts.qubit_cap);
    for (int j = 0; j < params.p; ++j) {
      for (const auto& e : g.edges()) {
        // R_ZZ as per-edge diagonal phase (global phase drops out of |amp|^2)
        const double gw = params.gamma[j] * e.w;
        const std::complex<double> phase{std::cos(gw), -std::sin(gw)};
        auto& a = st.amplitudes();
        const std::uint64_t bu = std::uint64_t{1} << e.u;
        const std::uint64_t bv = std::uint64_t{1} << e.v;
        for (std::uint64_t k = 0; k < a.size(); ++k)
          if (((k & bu) != 0) != ((k & bv) != 0)) a[k] *= phase;
        if (noise.p2 > 0.0 && pauli_rng.uniform() < noise.p2) {
          const std::uint64_t pick = pauli_rng.below(16);  // I..ZZ, 0 = identity
          apply_pauli(st, e.u, static_cast<int>(pick & 3));
          apply_pauli(st, e.v, static_cast<int>((pick >> 2) & 3));
        }
      }
      apply_mixer_layer(st, params.beta[j]);
      // the mixer is one R_X per qubit; channel after each
      if (noise.p1 > 0.0) {
        for (int q = 0; q < n; ++q)
          if (pauli_rng.uniform() < noise.p1)
            apply_pauli(st, q, static_cast<int>(pauli_rng.below(4)));
      }
    }

    // this trajectory's share of the shot budget
    const std::uint64_t lo = n_shots * static_cast<std::uint64_t>(t) / n_traj;
    const std::uint64_t hi = n_shots * static_cast<std::uint64_t>(t + 1) / n_traj;
    const auto& a = st.amplitudes();
    cdf.resize(a.size());
    double acc = 0.0;
    for (std::uint64_t k = 0; k < a.size(); ++k) {
      acc += std::norm(a[k]);
      cdf[k] = acc;
    }
    for (std::uint64_t s = lo; s < hi; ++s) {
      const double u = shot_rng.uniform() * acc;
      const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
      const std::uint64_t k =
          it == cdf.end() ? a.size() - 1 : static_cast<std::uint64_t>(it - cdf.begin());
      ++pooled.counts[k];
    }
  }
  return pooled;
}

double noisy_expectation(const DensityMatrix& rho, const WeightedGraph& g) {
  if (rho.num_qubits() != g.num_vertices())
    throw DataError("noisy_expectation: dimension mismatch");
  double e = 0.0;
  for (std::uint64_t k = 0; k < rho.dim(); ++k)
    e += rho.at(k, k).real() * cut_value_bits(g, k);
  return e;
}

}  // namespace qmc
