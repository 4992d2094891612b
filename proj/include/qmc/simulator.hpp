#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <vector>

#include "qmc/graph.hpp"
#include "qmc/maxcut.hpp"

namespace qmc {

inline constexpr int kDefaultQubitCap = 24;
inline constexpr std::size_t kDefaultCutTableBudget = std::size_t{1} << 28;  // bytes
inline constexpr std::uint64_t kCampaignShots = std::uint64_t{1} << 19;
inline constexpr std::uint64_t kQuickShots = 2048;

// Layer angles for a depth-p circuit. gamma/beta are free reals; canonical
// reduction into [0,2pi) x [0,pi) is available on request and never applied
// silently (the unitaries are not periodic for general normalized weights).
struct QaoaParams {
  int p = 0;
  std::vector<double> gamma;
  std::vector<double> beta;

  static QaoaParams make(std::vector<double> gamma, std::vector<double> beta);
  QaoaParams canonicalized() const;
  void validate() const;
};

// Pure state on n qubits. Basis index k: bit b is vertex b, bit value 0 is
// z=+1 and 1 is z=-1.
class StateVector {
 public:
  StateVector() = default;
  StateVector(int n, std::vector<std::complex<double>> amplitudes);

  int num_qubits() const { return n_; }
  std::uint64_t dim() const { return std::uint64_t{1} << n_; }
  const std::vector<std::complex<double>>& amplitudes() const { return amp_; }
  std::vector<std::complex<double>>& amplitudes() { return amp_; }

  double norm_sq() const;

 private:
  int n_ = 0;
  std::vector<std::complex<double>> amp_;
};

// Per-basis cut values for one graph, reused across every parameter
// evaluation on that graph. Built when 8 * 2^n bytes fits the budget.
class CutTable {
 public:
  static CutTable build(const WeightedGraph& g);
  double operator[](std::uint64_t k) const { return c_[k]; }
  std::uint64_t size() const { return c_.size(); }
  double max_value() const;

 private:
  std::vector<double> c_;
};

struct SimOptions {
  int qubit_cap = kDefaultQubitCap;
  std::size_t cut_table_budget = kDefaultCutTableBudget;
};

StateVector prepare_plus_state(int n, int qubit_cap = kDefaultQubitCap);

// e^{-i gamma H_C} in the diagonal-of-H_C convention: amplitude k picks up
// the phase e^{-i gamma C(Z_k)}. Equals the R_ZZ(-gamma w) gate product up to
// a global phase.
void apply_cost_layer(StateVector& state, const WeightedGraph& g, double gamma);
void apply_cost_layer(StateVector& state, const CutTable& table, double gamma);

// R_X(2 beta) on every qubit.
void apply_mixer_layer(StateVector& state, double beta);

StateVector run_qaoa_circuit(const WeightedGraph& g, const QaoaParams& params,
                             const SimOptions& opts = {});

double exact_expectation(const StateVector& state, const WeightedGraph& g);
double exact_expectation(const StateVector& state, const CutTable& table);
// Variance of the cut observable in the given state.
double exact_variance(const StateVector& state, const CutTable& table);

struct SampleDistribution {
  std::map<std::uint64_t, std::uint64_t> counts;
  std::uint64_t n_shots = 0;
};

// n_shots inverse-CDF draws from |alpha_k|^2; deterministic per seed.
SampleDistribution sample(const StateVector& state, std::uint64_t n_shots, std::uint64_t seed);

struct SampleEstimate {
  double mean = 0.0;
  CutAssignment best_cut;
  double best_value = 0.0;
};

// Mean over observed outcomes and the best observed cut (ties toward the
// smallest basis index).
SampleEstimate estimate_from_samples(const SampleDistribution& dist, const WeightedGraph& g);

// One graph, many parameter evaluations: owns the cut table and exposes the
// handful of evaluation entry points the optimizers and table builders use.
// Thread-compatible: concurrent calls on a const evaluator are safe.
class CircuitEvaluator {
 public:
  explicit CircuitEvaluator(const WeightedGraph& g, const SimOptions& opts = {});

  const WeightedGraph& graph() const { return g_; }
  const CutTable& table() const { return table_; }

  StateVector state(const QaoaParams& params) const;
  double expectation(const QaoaParams& params) const;
  double variance(const QaoaParams& params) const;

 private:
  WeightedGraph g_;
  SimOptions opts_;
  CutTable table_;
};

}  // namespace qmc
