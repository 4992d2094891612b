#pragma once

// Dense reference implementations used only by tests. Everything here builds
// full 2^n x 2^n operators from Kronecker products and Pade matrix
// exponentials, independently of the simulator's kernel path.

#include <Eigen/Dense>
#include <complex>
#include <unsupported/Eigen/MatrixFunctions>
#include <vector>

#include "qmc/graph.hpp"
#include "qmc/maxcut.hpp"
#include "qmc/simulator.hpp"

namespace oracle {

using Cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

inline Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

inline Mat identity(int dim) { return Mat::Identity(dim, dim); }

// Operator acting as `u` on qubit q (bit q of the basis index) and identity
// elsewhere. Low bits are the rightmost kron factor.
inline Mat op_on_qubit(const Mat& u, int q, int n) {
  Mat out = kron(identity(1 << (n - 1 - q)), kron(u, identity(1 << q)));
  return out;
}

inline Mat pauli_z() {
  Mat z(2, 2);
  z << 1, 0, 0, -1;
  return z;
}

inline Mat pauli_x() {
  Mat x(2, 2);
  x << 0, 1, 1, 0;
  return x;
}

inline Mat pauli_y() {
  Mat y(2, 2);
  y << Cplx(0, 0), Cplx(0, -1), Cplx(0, 1), Cplx(0, 0);
  return y;
}

// H_C = sum_e w (I - Z_i Z_j) / 2 assembled from Pauli products.
inline Mat cost_hamiltonian(const qmc::WeightedGraph& g) {
  const int n = g.num_vertices();
  const int dim = 1 << n;
  Mat h = Mat::Zero(dim, dim);
  for (const auto& e : g.edges()) {
    const Mat zz = op_on_qubit(pauli_z(), e.u, n) * op_on_qubit(pauli_z(), e.v, n);
    h += e.w * 0.5 * (identity(dim) - zz);
  }
  return h;
}

inline Mat mixer_hamiltonian(int n) {
  const int dim = 1 << n;
  Mat h = Mat::Zero(dim, dim);
  for (int q = 0; q < n; ++q) h += op_on_qubit(pauli_x(), q, n);
  return h;
}

// e^{-i gamma H_C} via the Pade matrix exponential.
inline Mat cost_unitary(const qmc::WeightedGraph& g, double gamma) {
  const Mat h = cost_hamiltonian(g);
  return (Cplx(0, -gamma) * h).exp();
}

// Kron-built product of R_X(2 beta) on each qubit.
inline Mat mixer_unitary(int n, double beta) {
  Mat rx(2, 2);
  rx << Cplx(std::cos(beta), 0), Cplx(0, -std::sin(beta)), Cplx(0, -std::sin(beta)),
      Cplx(std::cos(beta), 0);
  Mat u = identity(1 << n);
  for (int q = 0; q < n; ++q) u = op_on_qubit(rx, q, n) * u;
  return u;
}

inline Vec plus_state(int n) {
  const int dim = 1 << n;
  return Vec::Constant(dim, Cplx(std::pow(2.0, -0.5 * n), 0));
}

inline Vec run_circuit(const qmc::WeightedGraph& g, const qmc::QaoaParams& params) {
  Vec psi = plus_state(g.num_vertices());
  for (int j = 0; j < params.p; ++j) {
    psi = cost_unitary(g, params.gamma[j]) * psi;
    psi = mixer_unitary(g.num_vertices(), params.beta[j]) * psi;
  }
  return psi;
}

inline Vec to_eigen(const qmc::StateVector& st) {
  Vec v(st.amplitudes().size());
  for (std::size_t k = 0; k < st.amplitudes().size(); ++k) v[k] = st.amplitudes()[k];
  return v;
}

// || a - e^{i phi} b || with the phase chosen to align the states.
inline double distance_up_to_phase(const Vec& a, const Vec& b) {
  const Cplx overlap = b.dot(a);  // conj(b) . a
  const double mag = std::abs(overlap);
  const Cplx phase = mag > 1e-300 ? overlap / mag : Cplx(1, 0);
  return (a - phase * b).norm();
}

inline double expectation(const Vec& psi, const Mat& h) {
  return std::real(psi.dot(h * psi));
}

// Naive exhaustive Max-Cut, no symmetry tricks.
inline qmc::MaxCutSolution naive_maxcut(const qmc::WeightedGraph& g) {
  const int n = g.num_vertices();
  qmc::MaxCutSolution best;
  best.value = -1.0;
  for (std::uint64_t k = 0; k < (std::uint64_t{1} << n); ++k) {
    double c = 0.0;
    for (const auto& e : g.edges())
      if ((((k >> e.u) ^ (k >> e.v)) & 1ULL) != 0) c += e.w;
    if (c > best.value) {
      best.value = c;
      best.assignment = qmc::assignment_from_bits(k, n);
    }
  }
  return best;
}

}  // namespace oracle
