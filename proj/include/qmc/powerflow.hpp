#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "qmc/graph.hpp"

namespace qmc {

enum class BusKind { Slack, PV, PQ };

// Per-unit quantities throughout; the case file declares the MVA base.
// P/Q are net injections (generation minus load). Vm/Va are the voltage
// setpoint where the bus kind fixes them, otherwise flat-start hints.
struct Bus {
  int id = 0;
  BusKind kind = BusKind::PQ;
  double P = 0.0;
  double Q = 0.0;
  double Vm = 1.0;
  double Va = 0.0;
};

// Series impedance r + jx, total line-charging susceptance b_sh split half
// per end.
struct Branch {
  int from = 0;
  int to = 0;
  double r = 0.0;
  double x = 0.0;
  double b_sh = 0.0;
};

struct PowerFlowCase {
  double base_mva = 100.0;
  std::vector<Bus> buses;
  std::vector<Branch> branches;

  void validate() const;  // exactly one slack, connected, ids 0..n-1
  int bus_index(int id) const;
};

Eigen::MatrixXcd build_admittance(const PowerFlowCase& pf_case);

struct PowerFlowSolution {
  std::vector<std::complex<double>> V;
  std::vector<double> mismatches;      // final residual vector
  std::vector<double> residual_trace;  // worst mismatch per iteration
  int iterations = 0;
  bool converged = false;
};

// Newton-Raphson in polar form: P mismatches on PV+PQ buses, Q mismatches on
// PQ buses, standard 4-block Jacobian, flat start.
PowerFlowSolution solve_power_flow(const PowerFlowCase& pf_case, double tol = 1e-8,
                                   int max_iter = 20);

// Edge weight per branch = max sending-end apparent power over both ends;
// ~zero-flow branches dropped; weights normalized.
WeightedGraph line_weights(const PowerFlowCase& pf_case, const PowerFlowSolution& sol,
                           double drop_below = 1e-9);

// Sum of injections minus losses; ~0 at a converged solution.
double power_balance_residual(const PowerFlowCase& pf_case, const PowerFlowSolution& sol);

}  // namespace qmc
