#include "qmc/maxcut.hpp"

#include <bit>
#include <string>

#include "qmc/errors.hpp"

namespace qmc {

double cut_value(const WeightedGraph& g, const CutAssignment& z) {
  if (static_cast<int>(z.size()) != g.num_vertices())
    throw DataError("cut_value: assignment length " + std::to_string(z.size()) +
                    " does not match n=" + std::to_string(g.num_vertices()));
  for (int zi : z)
    if (zi != 1 && zi != -1) throw DataError("cut_value: entries must be +1 or -1");
  double c = 0.0;
  for (const auto& e : g.edges()) c += e.w * (1 - z[e.u] * z[e.v]) * 0.5;
  return c;
}

double cut_value_bits(const WeightedGraph& g, std::uint64_t bits) {
  double c = 0.0;
  for (const auto& e : g.edges())
    c += (((bits >> e.u) ^ (bits >> e.v)) & 1ULL) ? e.w : 0.0;
  return c;
}

CutAssignment assignment_from_bits(std::uint64_t bits, int n) {
  CutAssignment z(n);
  for (int i = 0; i < n; ++i) z[i] = ((bits >> i) & 1ULL) ? -1 : 1;
  return z;
}

std::uint64_t bits_from_assignment(const CutAssignment& z) {
  std::uint64_t bits = 0;
  for (std::size_t i = 0; i < z.size(); ++i)
    if (z[i] == -1) bits |= 1ULL << i;
  return bits;
}

namespace {

// Lexicographic order on assignments (+1 sorts before -1), i.e. bitwise from
// vertex 0 upward.
bool lex_smaller(std::uint64_t a, std::uint64_t b, int n) {
  for (int i = 0; i < n; ++i) {
    const std::uint64_t ba = (a >> i) & 1ULL;
    const std::uint64_t bb = (b >> i) & 1ULL;
    if (ba != bb) return ba == 0;
  }
  return false;
}

}  // namespace

MaxCutSolution brute_force_maxcut(const WeightedGraph& g, int max_n) {
  const int n = g.num_vertices();
  if (n > max_n)
    throw NumericError("brute_force_maxcut: n=" + std::to_string(n) +
                       " exceeds the enumeration budget of " + std::to_string(max_n));
  if (n == 0) return {CutAssignment{}, 0.0};

  const auto adj = build_adjacency(g);

  // Fix z_0 = +1 (bit 0 = 0) and walk the remaining bits in Gray order,
  // updating the cut in O(deg) per flip.
  std::uint64_t bits = 0;
  double cur = 0.0;
  double best = 0.0;
  std::uint64_t best_bits = 0;
  const std::uint64_t steps = n > 1 ? (1ULL << (n - 1)) : 1ULL;
  for (std::uint64_t i = 1; i < steps; ++i) {
    const int b = std::countr_zero(i) + 1;  // flipped vertex, skipping vertex 0
    const bool was_set = (bits >> b) & 1ULL;
    for (const auto& [j, w] : adj[b]) {
      const bool same = (((bits >> j) & 1ULL) == was_set);
      cur += same ? w : -w;
    }
    bits ^= 1ULL << b;
    if (cur > best || (cur == best && lex_smaller(bits, best_bits, n))) {
      best = cur;
      best_bits = bits;
    }
  }
  return {assignment_from_bits(best_bits, n), best};
}

double approximation_ratio(double achieved, double optimum) {
  if (!(optimum > 0.0))
    throw DataError("approximation_ratio: optimum must be positive");
  return achieved / optimum;
}

double approximation_ratio(const WeightedGraph& g, double achieved) {
  return approximation_ratio(achieved, brute_force_maxcut(g).value);
}

}  // namespace qmc
