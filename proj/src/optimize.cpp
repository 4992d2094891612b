#include "qmc/optimize.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>

#include "qmc/errors.hpp"
#include "qmc/maxcut.hpp"
#include "qmc/parallel.hpp"
#include "qmc/rng.hpp"

namespace qmc {

namespace {

struct CountedObjective {
  const VecObjective& f;
  long evals = 0;
  double operator()(const std::vector<double>& x) {
    ++evals;
    return f(x);
  }
};

Eigen::VectorXd fd_gradient(CountedObjective& f, const std::vector<double>& x, double h) {
  const int d = static_cast<int>(x.size());
  Eigen::VectorXd g(d);
  std::vector<double> xp = x;
  for (int i = 0; i < d; ++i) {
    xp[i] = x[i] + h;
    const double fp = f(xp);
    xp[i] = x[i] - h;
    const double fm = f(xp);
    xp[i] = x[i];
    g[i] = (fp - fm) / (2.0 * h);
  }
  return g;
}

Eigen::MatrixXd fd_hessian(CountedObjective& f, const std::vector<double>& x, double fx,
                           double h) {
  const int d = static_cast<int>(x.size());
  Eigen::MatrixXd H(d, d);
  std::vector<double> xp = x;
  for (int i = 0; i < d; ++i) {
    xp[i] = x[i] + h;
    const double fp = f(xp);
    xp[i] = x[i] - h;
    const double fm = f(xp);
    xp[i] = x[i];
    H(i, i) = (fp - 2.0 * fx + fm) / (h * h);
  }
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) {
      xp[i] = x[i] + h;
      xp[j] = x[j] + h;
      const double fpp = f(xp);
      xp[j] = x[j] - h;
      const double fpm = f(xp);
      xp[i] = x[i] - h;
      const double fmm = f(xp);
      xp[j] = x[j] + h;
      const double fmp = f(xp);
      xp[i] = x[i];
      xp[j] = x[j];
      H(i, j) = H(j, i) = (fpp - fpm - fmp + fmm) / (4.0 * h * h);
    }
  }
  return H;
}

}  // namespace

AscentResult newton_ascent(const VecObjective& objective, std::vector<double> x,
                           const AscentOptions& opts) {
  CountedObjective f{objective};
  const int d = static_cast<int>(x.size());
  double fx = f(x);
  double lambda = 1e-3;
  bool converged = false;
  int small_gain_streak = 0;

  for (int iter = 0; iter < opts.max_iterations; ++iter) {
    const Eigen::VectorXd g = fd_gradient(f, x, opts.fd_step);
    if (g.norm() < 1e-10) {
      converged = true;
      break;
    }
    const Eigen::MatrixXd H = fd_hessian(f, x, fx, opts.fd_step);

    bool accepted = false;
    double f_new = fx;
    std::vector<double> x_new = x;
    for (int tries = 0; tries < 24 && !accepted; ++tries) {
      // (lambda I - H) d = g: Newton as lambda -> 0 in concave regions,
      // damped gradient as lambda grows.
      Eigen::MatrixXd A = -H;
      A.diagonal().array() += lambda;
      Eigen::VectorXd step = A.ldlt().solve(g);
      if (!step.allFinite() || step.dot(g) <= 0.0) step = g / lambda;  // gradient fallback
      const double norm = step.norm();
      if (norm > opts.max_step) step *= opts.max_step / norm;  // stay local
      for (int i = 0; i < d; ++i) x_new[i] = x[i] + step[i];
      f_new = f(x_new);
      if (std::isfinite(f_new) && f_new > fx) {
        accepted = true;
        lambda = std::max(lambda * 0.4, 1e-10);
      } else {
        lambda = std::min(lambda * 4.0, 1e12);
      }
    }
    if (!accepted) {
      converged = true;  // no ascent direction at fd resolution
      break;
    }
    const double gain = f_new - fx;
    x = x_new;
    fx = f_new;
    // a single tiny step can be an artifact of inflated damping; require two
    if (gain < opts.value_tol) {
      if (++small_gain_streak >= 2) {
        converged = true;
        break;
      }
    } else {
      small_gain_streak = 0;
    }
  }
  return {std::move(x), fx, f.evals, converged};
}

OptimizeResult multistart_optimize(const WeightedGraph& g, int p, const MultistartOptions& opts) {
  if (p < 1) throw DataError("multistart_optimize: p must be >= 1");
  const CircuitEvaluator eval(g);
  const double optimum = brute_force_maxcut(g).value;

  const int schedule = p * (g.num_vertices() + g.num_edges());
  const int n_starts =
      opts.n_starts > 0 ? opts.n_starts : std::clamp(schedule, 1, opts.max_starts);

  const VecObjective objective = [&](const std::vector<double>& x) {
    QaoaParams params;
    params.p = p;
    params.gamma.assign(x.begin(), x.begin() + p);
    params.beta.assign(x.begin() + p, x.end());
    return eval.expectation(params);
  };

  std::vector<AscentResult> results(n_starts);
  parallel_for(n_starts, opts.jobs, [&](std::size_t s) {
    Rng rng = Rng::derived(opts.seed, s);
    std::vector<double> x0(2 * p);
    for (int i = 0; i < p; ++i) x0[i] = rng.uniform(0.0, 2.0 * std::numbers::pi);
    for (int i = 0; i < p; ++i) x0[p + i] = rng.uniform(0.0, std::numbers::pi);
    results[s] = newton_ascent(objective, std::move(x0), opts.ascent);
  });

  int best = 0;
  long total_evals = 0;
  for (int s = 0; s < n_starts; ++s) {
    total_evals += results[s].evaluations;
    if (results[s].value > results[best].value) best = s;
  }

  OptimizeResult out;
  out.params.p = p;
  out.params.gamma.assign(results[best].x.begin(), results[best].x.begin() + p);
  out.params.beta.assign(results[best].x.begin() + p, results[best].x.end());
  out.value = results[best].value;
  out.ratio = out.value / optimum;
  out.evaluations = total_evals;
  out.starts_used = n_starts;
  out.converged = results[best].converged;
  return out;
}

OptimizeResult cobyla_optimize(const VecObjective& objective, const QaoaParams& init,
                               const CobylaOptions& opts) {
  init.validate();
  const int d = 2 * init.p;
  if (opts.budget < d + 2)
    throw DataError("cobyla_optimize: budget must be at least 2p+2");

  CountedObjective f{objective};
  std::vector<double> x0(init.gamma);
  x0.insert(x0.end(), init.beta.begin(), init.beta.end());

  // simplex of d+1 points around the incumbent
  std::vector<std::vector<double>> pts(d + 1, x0);
  std::vector<double> vals(d + 1);
  double rho = opts.rho_init;
  vals[0] = f(x0);
  for (int i = 0; i < d; ++i) {
    pts[i + 1][i] += rho;
    vals[i + 1] = f(pts[i + 1]);
  }

  int best = static_cast<int>(std::max_element(vals.begin(), vals.end()) - vals.begin());
  std::vector<double> best_x = pts[best];
  double best_val = vals[best];

  auto respan = [&](double radius) {
    pts.assign(d + 1, best_x);
    vals.assign(d + 1, best_val);
    for (int i = 0; i < d && f.evals < opts.budget; ++i) {
      pts[i + 1][i] += radius;
      vals[i + 1] = f(pts[i + 1]);
      if (vals[i + 1] > best_val) {
        best_val = vals[i + 1];
        best_x = pts[i + 1];
      }
    }
  };

  bool converged = false;
  while (f.evals < opts.budget) {
    // linear model through the simplex: g solves (p_i - p_0) . g = f_i - f_0
    Eigen::MatrixXd A(d, d);
    Eigen::VectorXd b(d);
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j < d; ++j) A(i, j) = pts[i + 1][j] - pts[0][j];
      b[i] = vals[i + 1] - vals[0];
    }
    Eigen::VectorXd grad = A.fullPivLu().solve(b);
    if (!grad.allFinite() || grad.norm() == 0.0) {
      respan(rho);
      continue;
    }

    std::vector<double> cand = best_x;
    for (int i = 0; i < d; ++i) cand[i] += rho * grad[i] / grad.norm();
    const double fc = f(cand);

    if (fc > best_val) {
      best_val = fc;
      best_x = cand;
      // replace the worst simplex point to keep the model moving
      int worst = static_cast<int>(std::min_element(vals.begin(), vals.end()) - vals.begin());
      pts[worst] = cand;
      vals[worst] = fc;
    } else {
      rho *= 0.5;
      if (rho < opts.rho_end) {
        converged = true;
        break;
      }
      respan(rho);
    }
  }

  OptimizeResult out;
  out.params.p = init.p;
  out.params.gamma.assign(best_x.begin(), best_x.begin() + init.p);
  out.params.beta.assign(best_x.begin() + init.p, best_x.end());
  out.value = best_val;
  out.ratio = std::numeric_limits<double>::quiet_NaN();  // callers that know the optimum fill this
  out.evaluations = f.evals;
  out.starts_used = 1;
  out.converged = converged;
  return out;
}

// Inverse of expand_fourier_coefficients at q=p: the sine/cosine families are
// orthogonal (DST-IV / DCT-IV), so u_k = (2/p) sum_i gamma_i sin(...) and
// likewise for v with cosines.
std::pair<std::vector<double>, std::vector<double>> invert_fourier_angles(
    const std::vector<double>& gamma, const std::vector<double>& beta) {
  const int p = static_cast<int>(gamma.size());
  std::vector<double> u(p, 0.0), v(p, 0.0);
  const double pi_over_p = std::numbers::pi / p;
  for (int k = 1; k <= p; ++k) {
    for (int i = 1; i <= p; ++i) {
      const double arg = (k - 0.5) * (i - 0.5) * pi_over_p;
      u[k - 1] += gamma[i - 1] * std::sin(arg);
      v[k - 1] += beta[i - 1] * std::cos(arg);
    }
    u[k - 1] *= 2.0 / p;
    v[k - 1] *= 2.0 / p;
  }
  return {std::move(u), std::move(v)};
}

QaoaParams expand_fourier_coefficients(const std::vector<double>& u, const std::vector<double>& v,
                                       int p) {
  if (u.size() != v.size()) throw DataError("fourier coefficients must have equal lengths");
  if (static_cast<int>(u.size()) > p) throw DataError("fourier: q must be <= p");
  QaoaParams params;
  params.p = p;
  params.gamma.assign(p, 0.0);
  params.beta.assign(p, 0.0);
  const double pi_over_p = std::numbers::pi / p;
  for (int i = 1; i <= p; ++i) {
    double gi = 0.0, bi = 0.0;
    for (std::size_t k = 1; k <= u.size(); ++k) {
      const double arg = (k - 0.5) * (i - 0.5) * pi_over_p;
      gi += u[k - 1] * std::sin(arg);
      bi += v[k - 1] * std::cos(arg);
    }
    params.gamma[i - 1] = gi;
    params.beta[i - 1] = bi;
  }
  return params;
}

namespace {

// Exact landscape symmetries: beta -> beta +- pi is a per-qubit global phase
// and (gamma, beta) -> (-gamma, -beta) conjugates the state. Both leave the
// expectation unchanged, so the chain can seed from the small-angle branch
// (large coefficients expand into wild angles at higher depth).
std::pair<double, double> small_angle_branch(double gamma, double beta) {
  double b = std::fmod(beta, std::numbers::pi);
  if (b > std::numbers::pi / 2) b -= std::numbers::pi;
  if (b <= -std::numbers::pi / 2) b += std::numbers::pi;
  double g = gamma;
  if (b < 0) {
    b = -b;
    g = -g;
  }
  return {g, b};
}

}  // namespace

std::vector<OptimizeResult> fourier_optimize(const WeightedGraph& g, int p_target,
                                             const FourierOptions& opts) {
  if (p_target < 1) throw DataError("fourier_optimize: p_target must be >= 1");
  const CircuitEvaluator eval(g);
  const double optimum = brute_force_maxcut(g).value;

  std::vector<OptimizeResult> ladder;
  ladder.reserve(p_target);

  MultistartOptions ms = opts.depth_one;
  ms.seed = opts.seed;
  ms.jobs = opts.jobs;
  OptimizeResult base = multistart_optimize(g, 1, ms);
  const auto [g1, b1] = small_angle_branch(base.params.gamma[0], base.params.beta[0]);
  base.params.gamma[0] = g1;
  base.params.beta[0] = b1;
  // single-frequency coefficients are a bijective reparametrization at p=1
  const double s = std::sin(std::numbers::pi / 4.0);
  const double c = std::cos(std::numbers::pi / 4.0);
  std::vector<double> u{g1 / s};
  std::vector<double> v{b1 / c};
  ladder.push_back(base);

  QaoaParams prev_params = base.params;
  for (int p = 2; p <= p_target; ++p) {
    u.push_back(0.0);
    v.push_back(0.0);
    const VecObjective coeff_objective = [&, p](const std::vector<double>& x) {
      const std::vector<double> uu(x.begin(), x.begin() + p);
      const std::vector<double> vv(x.begin() + p, x.end());
      return eval.expectation(expand_fourier_coefficients(uu, vv, p));
    };
    // two warm starts: the zero-padded previous coefficients, and the
    // previous angles extended by an identity layer (whose objective equals
    // the previous rung exactly, so the ladder cannot regress)
    std::vector<double> x_pad(u);
    x_pad.insert(x_pad.end(), v.begin(), v.end());
    std::vector<double> gamma_ext = prev_params.gamma;
    std::vector<double> beta_ext = prev_params.beta;
    gamma_ext.push_back(0.0);
    beta_ext.push_back(0.0);
    const auto [u_ext, v_ext] = invert_fourier_angles(gamma_ext, beta_ext);
    std::vector<double> x_ext(u_ext);
    x_ext.insert(x_ext.end(), v_ext.begin(), v_ext.end());

    AscentResult res = newton_ascent(coeff_objective, std::move(x_pad), opts.ascent);
    const AscentResult res_ext = newton_ascent(coeff_objective, std::move(x_ext), opts.ascent);
    res.evaluations += res_ext.evaluations;
    if (res_ext.value > res.value) {
      res.x = res_ext.x;
      res.value = res_ext.value;
      res.converged = res_ext.converged;
    }
    u.assign(res.x.begin(), res.x.begin() + p);
    v.assign(res.x.begin() + p, res.x.end());

    OptimizeResult out;
    out.params = expand_fourier_coefficients(u, v, p);
    out.value = res.value;
    out.ratio = res.value / optimum;
    out.evaluations = res.evaluations;
    out.starts_used = 2;
    out.converged = res.converged;
    ladder.push_back(out);
    prev_params = out.params;
  }
  return ladder;
}

}  // namespace qmc
