#pragma once

#include <cstdint>
#include <vector>

#include "qmc/graph.hpp"

namespace qmc {

// Vertex assignment over {-1,+1}; z[i] = +1 puts vertex i in S.
using CutAssignment = std::vector<int>;

struct MaxCutSolution {
  CutAssignment assignment;
  double value = 0.0;
};

// C(Z) = sum over edges of w (1 - z_i z_j) / 2.
double cut_value(const WeightedGraph& g, const CutAssignment& z);

// Cut of a basis index: bit i of `bits` is 0 for z_i = +1, 1 for z_i = -1.
double cut_value_bits(const WeightedGraph& g, std::uint64_t bits);

CutAssignment assignment_from_bits(std::uint64_t bits, int n);
std::uint64_t bits_from_assignment(const CutAssignment& z);

// Exact optimum by Gray-code enumeration over assignments with z_0 = +1
// (the Z <-> -Z symmetry halves the space). Ties break toward the
// lexicographically smallest assignment with z_0 = +1, i.e. the smallest
// basis index. Rejects n > max_n.
MaxCutSolution brute_force_maxcut(const WeightedGraph& g, int max_n = 30);

// achieved / optimum, no clamping. Rejects a zero optimum.
double approximation_ratio(double achieved, double optimum);
double approximation_ratio(const WeightedGraph& g, double achieved);

}  // namespace qmc
