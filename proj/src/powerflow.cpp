#include "qmc/powerflow.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <queue>
#include <sstream>
#include <string>

#include "qmc/errors.hpp"

namespace qmc {

int PowerFlowCase::bus_index(int id) const {
  for (std::size_t i = 0; i < buses.size(); ++i)
    if (buses[i].id == id) return static_cast<int>(i);
  throw DataError("power flow case: unknown bus id " + std::to_string(id));
}

void PowerFlowCase::validate() const {
  if (buses.empty()) throw DataError("power flow case: no buses");
  int slack_count = 0;
  std::map<int, int> seen;
  for (std::size_t i = 0; i < buses.size(); ++i) {
    if (!seen.emplace(buses[i].id, i).second)
      throw DataError("power flow case: duplicate bus id " + std::to_string(buses[i].id));
    if (buses[i].kind == BusKind::Slack) ++slack_count;
  }
  if (slack_count != 1)
    throw DataError("power flow case: exactly one slack bus required, found " +
                    std::to_string(slack_count));
  for (const auto& br : branches) {
    bus_index(br.from);
    bus_index(br.to);
    if (br.r == 0.0 && br.x == 0.0)
      throw DataError("power flow case: branch " + std::to_string(br.from) + "-" +
                      std::to_string(br.to) + " has zero impedance");
  }
  // connectivity
  const int n = static_cast<int>(buses.size());
  std::vector<std::vector<int>> adj(n);
  for (const auto& br : branches) {
    const int a = bus_index(br.from);
    const int b = bus_index(br.to);
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  std::vector<char> vis(n, 0);
  std::queue<int> q;
  q.push(0);
  vis[0] = 1;
  int reached = 1;
  while (!q.empty()) {
    const int v = q.front();
    q.pop();
    for (int w : adj[v])
      if (!vis[w]) {
        vis[w] = 1;
        ++reached;
        q.push(w);
      }
  }
  if (reached != n) throw DataError("power flow case: network is disconnected");
}

Eigen::MatrixXcd build_admittance(const PowerFlowCase& pf_case) {
  pf_case.validate();
  const int n = static_cast<int>(pf_case.buses.size());
  Eigen::MatrixXcd Y = Eigen::MatrixXcd::Zero(n, n);
  for (const auto& br : pf_case.branches) {
    const int a = pf_case.bus_index(br.from);
    const int b = pf_case.bus_index(br.to);
    const std::complex<double> y = 1.0 / std::complex<double>(br.r, br.x);
    const std::complex<double> sh(0.0, br.b_sh * 0.5);
    Y(a, a) += y + sh;
    Y(b, b) += y + sh;
    Y(a, b) -= y;
    Y(b, a) -= y;
  }
  return Y;
}

namespace {

struct Injections {
  Eigen::VectorXd P, Q;
};

Injections compute_injections(const Eigen::MatrixXd& G, const Eigen::MatrixXd& B,
                              const Eigen::VectorXd& Vm, const Eigen::VectorXd& Va) {
  const int n = static_cast<int>(Vm.size());
  Injections inj{Eigen::VectorXd::Zero(n), Eigen::VectorXd::Zero(n)};
  for (int i = 0; i < n; ++i) {
    double p = 0.0, q = 0.0;
    for (int k = 0; k < n; ++k) {
      const double th = Va[i] - Va[k];
      const double ct = std::cos(th), st = std::sin(th);
      p += Vm[k] * (G(i, k) * ct + B(i, k) * st);
      q += Vm[k] * (G(i, k) * st - B(i, k) * ct);
    }
    inj.P[i] = Vm[i] * p;
    inj.Q[i] = Vm[i] * q;
  }
  return inj;
}

}  // namespace

PowerFlowSolution solve_power_flow(const PowerFlowCase& pf_case, double tol, int max_iter) {
  pf_case.validate();
  const int n = static_cast<int>(pf_case.buses.size());
  const Eigen::MatrixXcd Y = build_admittance(pf_case);
  const Eigen::MatrixXd G = Y.real();
  const Eigen::MatrixXd B = Y.imag();

  // unknown ordering: angles on non-slack buses, magnitudes on PQ buses
  std::vector<int> ang_idx, mag_idx;
  Eigen::VectorXd Vm(n), Va(n), Pspec(n), Qspec(n);
  for (int i = 0; i < n; ++i) {
    const Bus& bus = pf_case.buses[i];
    Pspec[i] = bus.P;
    Qspec[i] = bus.Q;
    switch (bus.kind) {
      case BusKind::Slack:
        Vm[i] = bus.Vm;
        Va[i] = bus.Va;
        break;
      case BusKind::PV:
        Vm[i] = bus.Vm;
        Va[i] = 0.0;
        ang_idx.push_back(i);
        break;
      case BusKind::PQ:
        Vm[i] = 1.0;
        Va[i] = 0.0;
        ang_idx.push_back(i);
        mag_idx.push_back(i);
        break;
    }
  }
  const int na = static_cast<int>(ang_idx.size());
  const int nm = static_cast<int>(mag_idx.size());

  PowerFlowSolution sol;
  std::ostringstream trace;
  for (int iter = 0; iter <= max_iter; ++iter) {
    const Injections inj = compute_injections(G, B, Vm, Va);
    Eigen::VectorXd mis(na + nm);
    for (int a = 0; a < na; ++a) mis[a] = Pspec[ang_idx[a]] - inj.P[ang_idx[a]];
    for (int m = 0; m < nm; ++m) mis[na + m] = Qspec[mag_idx[m]] - inj.Q[mag_idx[m]];
    const double worst = na + nm == 0 ? 0.0 : mis.cwiseAbs().maxCoeff();
    trace << (iter ? " " : "") << worst;
    sol.residual_trace.push_back(worst);

    if (worst <= tol) {
      sol.converged = true;
      sol.iterations = iter;
      sol.mismatches.assign(mis.data(), mis.data() + mis.size());
      sol.V.resize(n);
      for (int i = 0; i < n; ++i) sol.V[i] = std::polar(Vm[i], Va[i]);
      return sol;
    }
    if (iter == max_iter) break;

    // standard polar-form Jacobian blocks dP/dth, dP/dV, dQ/dth, dQ/dV
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(na + nm, na + nm);
    for (int r = 0; r < na; ++r) {
      const int i = ang_idx[r];
      for (int c = 0; c < na; ++c) {
        const int k = ang_idx[c];
        if (i == k) {
          J(r, c) = -inj.Q[i] - B(i, i) * Vm[i] * Vm[i];
        } else {
          const double th = Va[i] - Va[k];
          J(r, c) = Vm[i] * Vm[k] * (G(i, k) * std::sin(th) - B(i, k) * std::cos(th));
        }
      }
      for (int c = 0; c < nm; ++c) {
        const int k = mag_idx[c];
        if (i == k) {
          J(r, na + c) = inj.P[i] / Vm[i] + G(i, i) * Vm[i];
        } else {
          const double th = Va[i] - Va[k];
          J(r, na + c) = Vm[i] * (G(i, k) * std::cos(th) + B(i, k) * std::sin(th));
        }
      }
    }
    for (int r = 0; r < nm; ++r) {
      const int i = mag_idx[r];
      for (int c = 0; c < na; ++c) {
        const int k = ang_idx[c];
        if (i == k) {
          J(na + r, c) = inj.P[i] - G(i, i) * Vm[i] * Vm[i];
        } else {
          const double th = Va[i] - Va[k];
          J(na + r, c) = -Vm[i] * Vm[k] * (G(i, k) * std::cos(th) + B(i, k) * std::sin(th));
        }
      }
      for (int c = 0; c < nm; ++c) {
        const int k = mag_idx[c];
        if (i == k) {
          J(na + r, na + c) = inj.Q[i] / Vm[i] - B(i, i) * Vm[i];
        } else {
          const double th = Va[i] - Va[k];
          J(na + r, na + c) = Vm[i] * (G(i, k) * std::sin(th) - B(i, k) * std::cos(th));
        }
      }
    }

    Eigen::FullPivLU<Eigen::MatrixXd> lu(J);
    if (!lu.isInvertible())
      throw NumericError("solve_power_flow: singular Jacobian at iteration " +
                         std::to_string(iter) + " (check bus kinds and islanding)");
    const Eigen::VectorXd dx = lu.solve(mis);
    if (!dx.allFinite())
      throw NumericError("solve_power_flow: non-finite Newton step at iteration " +
                         std::to_string(iter));
    for (int a = 0; a < na; ++a) Va[ang_idx[a]] += dx[a];
    for (int m = 0; m < nm; ++m) Vm[mag_idx[m]] += dx[na + m];
  }
  throw NumericError("solve_power_flow: no convergence after " + std::to_string(max_iter) +
                     " iterations; max-mismatch trace: " + trace.str());
}

WeightedGraph line_weights(const PowerFlowCase& pf_case, const PowerFlowSolution& sol,
                           double drop_below) {
  if (!sol.converged) throw DataError("line_weights: power flow solution is not converged");
  const int n = static_cast<int>(pf_case.buses.size());
  if (static_cast<int>(sol.V.size()) != n) throw DataError("line_weights: solution size mismatch");

  // parallel branches between the same bus pair aggregate their apparent
  // powers into the single graph edge
  std::map<std::pair<int, int>, double> weight;
  for (const auto& br : pf_case.branches) {
    const int a = pf_case.bus_index(br.from);
    const int b = pf_case.bus_index(br.to);
    const std::complex<double> y = 1.0 / std::complex<double>(br.r, br.x);
    const std::complex<double> sh(0.0, br.b_sh * 0.5);
    const std::complex<double> Va = sol.V[a], Vb = sol.V[b];
    const std::complex<double> S_ab = Va * std::conj((Va - Vb) * y + Va * sh);
    const std::complex<double> S_ba = Vb * std::conj((Vb - Va) * y + Vb * sh);
    const double w = std::max(std::abs(S_ab), std::abs(S_ba));
    if (w < drop_below) continue;
    weight[{std::min(a, b), std::max(a, b)}] += w;
  }
  std::vector<Edge> edges;
  edges.reserve(weight.size());
  for (const auto& [key, w] : weight) edges.push_back({key.first, key.second, w});
  WeightedGraph g(n, std::move(edges));
  if (g.num_edges() == 0) throw DataError("line_weights: all branch flows are ~zero");
  return g.normalized();
}

double power_balance_residual(const PowerFlowCase& pf_case, const PowerFlowSolution& sol) {
  const Eigen::MatrixXcd Y = build_admittance(pf_case);
  const int n = static_cast<int>(pf_case.buses.size());
  // injections from the solved voltages (includes the slack pickup)
  double injected = 0.0;
  for (int i = 0; i < n; ++i) {
    std::complex<double> acc{0.0, 0.0};
    for (int k = 0; k < n; ++k) acc += Y(i, k) * sol.V[k];
    injected += (sol.V[i] * std::conj(acc)).real();
  }
  double losses = 0.0;
  for (const auto& br : pf_case.branches) {
    const int a = pf_case.bus_index(br.from);
    const int b = pf_case.bus_index(br.to);
    const std::complex<double> y = 1.0 / std::complex<double>(br.r, br.x);
    const std::complex<double> sh(0.0, br.b_sh * 0.5);
    const std::complex<double> S_ab = sol.V[a] * std::conj((sol.V[a] - sol.V[b]) * y + sol.V[a] * sh);
    const std::complex<double> S_ba = sol.V[b] * std::conj((sol.V[b] - sol.V[a]) * y + sol.V[b] * sh);
    losses += (S_ab + S_ba).real();
  }
  return std::abs(injected - losses);
}

}  // namespace qmc
