#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "qmc/graph.hpp"
#include "qmc/simulator.hpp"

namespace qmc {

struct OptimizeResult {
  QaoaParams params;
  double value = 0.0;   // objective at params (exact expectation in exact mode)
  double ratio = 0.0;   // value / brute-force optimum where known
  long evaluations = 0;
  int starts_used = 0;
  bool converged = false;
};

struct AscentOptions {
  double fd_step = 1e-4;     // central-difference step (radians)
  double value_tol = 1e-8;   // |delta value| convergence threshold
  double max_step = 1.5;     // trust cap on the step norm (radians)
  int max_iterations = 120;
};

struct MultistartOptions {
  // 0 = automatic p*(n+m) schedule, capped.
  int n_starts = 0;
  int max_starts = 200;
  std::uint64_t seed = 1;
  int jobs = 1;
  AscentOptions ascent;
};

// Uniform starts in [0,2pi]^p x [0,pi]^p, damped-Newton local ascent with
// finite differences on the exact expectation, best local optimum returned.
OptimizeResult multistart_optimize(const WeightedGraph& g, int p,
                                   const MultistartOptions& opts = {});

using VecObjective = std::function<double(const std::vector<double>&)>;

// Damped Newton ascent (finite-difference gradient/Hessian, Levenberg
// damping, gradient fallback) from a single start. Exposed for reuse and for
// cross-optimizer tests.
struct AscentResult {
  std::vector<double> x;
  double value = 0.0;
  long evaluations = 0;
  bool converged = false;
};
AscentResult newton_ascent(const VecObjective& f, std::vector<double> x0,
                           const AscentOptions& opts = {});

struct CobylaOptions {
  double rho_init = 0.5;
  double rho_end = 1e-3;
  int budget = 400;
};

// Derivative-free maximizer for noisy objectives: linear trust-region model
// over a simplex of dim+1 points, best-seen point returned. converged=false
// when the budget runs out before the trust radius reaches rho_end.
OptimizeResult cobyla_optimize(const VecObjective& objective, const QaoaParams& init,
                               const CobylaOptions& opts = {});

struct FourierOptions {
  std::uint64_t seed = 1;
  int jobs = 1;
  AscentOptions ascent;
  MultistartOptions depth_one;  // used to seed the p=1 rung
};

// Warm-started frequency-coefficient ladder: at each depth the previous
// optimal coefficients, zero-padded by one frequency, seed a local ascent.
// Returns one result per p = 1..p_target.
std::vector<OptimizeResult> fourier_optimize(const WeightedGraph& g, int p_target,
                                             const FourierOptions& opts = {});

// gamma_i = sum_k u_k sin((k-1/2)(i-1/2)pi/p), beta_i = analogous cosine sum.
QaoaParams expand_fourier_coefficients(const std::vector<double>& u,
                                       const std::vector<double>& v, int p);

}  // namespace qmc
