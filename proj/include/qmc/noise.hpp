#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "qmc/graph.hpp"
#include "qmc/simulator.hpp"

namespace qmc {

inline constexpr int kDefaultDensityCap = 10;

// Depolarizing probabilities after single- and two-qubit gates.
struct NoiseModel {
  double p1 = 0.0;
  double p2 = 0.0;

  static NoiseModel model_one() { return {1e-3, 1e-2}; }
  static NoiseModel model_two() { return {1e-4, 1e-3}; }
  void validate() const;
};

class DensityMatrix {
 public:
  DensityMatrix() = default;
  explicit DensityMatrix(int n);  // |0...0><0...0|
  static DensityMatrix from_state(const StateVector& state);

  int num_qubits() const { return n_; }
  std::uint64_t dim() const { return std::uint64_t{1} << n_; }
  std::complex<double>& at(std::uint64_t r, std::uint64_t c) { return rho_[r * dim() + c]; }
  const std::complex<double>& at(std::uint64_t r, std::uint64_t c) const {
    return rho_[r * dim() + c];
  }
  const std::vector<std::complex<double>>& data() const { return rho_; }
  std::vector<std::complex<double>>& data() { return rho_; }

  double trace_real() const;
  double hermiticity_defect() const;  // max |rho - rho^dagger| entry

  void apply_one_qubit_gate(int q, const std::complex<double> u[2][2]);
  // Diagonal two-qubit unitary with per-(bit_a, bit_b) phases d00..d11.
  void apply_two_qubit_diagonal(int a, int b, const std::complex<double> d[4]);
  // D(rho) = (1-p) rho + p I/2 (x) Tr_q rho
  void depolarize_one(int q, double p);
  // D(rho) = (1-p) rho + p I/4 (x) Tr_ab rho
  void depolarize_two(int a, int b, double p);

 private:
  int n_ = 0;
  std::vector<std::complex<double>> rho_;
};

// Gate-by-gate density evolution: per layer one R_ZZ(-gamma w) per edge, each
// followed by the two-qubit channel, then one R_X(2 beta) per qubit, each
// followed by the single-qubit channel. State preparation is noiseless.
DensityMatrix run_noisy_qaoa_density(const WeightedGraph& g, const QaoaParams& params,
                                     const NoiseModel& noise, int density_cap = kDefaultDensityCap);

// Monte Carlo unraveling of the same channel on pure states: after each gate,
// with probability p a uniformly random Pauli on the gate's support is
// inserted (the identity draw is a no-op, so a non-identity Pauli lands with
// probability p (4^q - 1)/4^q, matching the density channel exactly).
// Samples are pooled across trajectories; total draws = n_shots.
SampleDistribution run_noisy_qaoa_trajectories(const WeightedGraph& g, const QaoaParams& params,
                                               const NoiseModel& noise, int n_traj,
                                               std::uint64_t n_shots, std::uint64_t seed,
                                               const SimOptions& opts = {});

// Tr(rho H_C): only the diagonal is read.
double noisy_expectation(const DensityMatrix& rho, const WeightedGraph& g);

}  // namespace qmc
