#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "qmc/campaigns.hpp"
#include "qmc/errors.hpp"
#include "qmc/graph.hpp"
#include "qmc/gw.hpp"
#include "qmc/io.hpp"
#include "qmc/maxcut.hpp"
#include "qmc/noise.hpp"
#include "qmc/optimize.hpp"
#include "qmc/powerflow.hpp"
#include "qmc/simulator.hpp"
#include "qmc/transfer.hpp"

namespace py = pybind11;
using namespace qmc;

namespace {

WeightedGraph graph_from_edges(int n, const std::vector<std::tuple<int, int, double>>& edges) {
  std::vector<Edge> es;
  es.reserve(edges.size());
  for (const auto& [u, v, w] : edges) es.push_back({u, v, w});
  return WeightedGraph(n, std::move(es));
}

std::vector<std::tuple<int, int, double>> edges_to_tuples(const WeightedGraph& g) {
  std::vector<std::tuple<int, int, double>> out;
  out.reserve(g.edges().size());
  for (const auto& e : g.edges()) out.emplace_back(e.u, e.v, e.w);
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "QAOA Max-Cut toolkit: simulator, parameter transfer, GW baseline, power flow";

  py::register_exception<DataError>(m, "DataError", PyExc_ValueError);
  py::register_exception<NumericError>(m, "NumericError", PyExc_RuntimeError);

  py::class_<WeightedGraph>(m, "WeightedGraph")
      .def(py::init(&graph_from_edges), py::arg("n"), py::arg("edges"))
      .def_property_readonly("n", &WeightedGraph::num_vertices)
      .def_property_readonly("m", &WeightedGraph::num_edges)
      .def_property_readonly("edges", &edges_to_tuples)
      .def("total_weight", &WeightedGraph::total_weight)
      .def("normalized", &WeightedGraph::normalized)
      .def("is_normalized", &WeightedGraph::is_normalized, py::arg("tol") = 1e-12)
      .def("normalized_density", &WeightedGraph::normalized_density)
      .def_static("complete", &WeightedGraph::complete, py::arg("n"))
      .def("__repr__", [](const WeightedGraph& g) {
        return "WeightedGraph(n=" + std::to_string(g.num_vertices()) +
               ", m=" + std::to_string(g.num_edges()) + ")";
      });

  m.def(
      "random_graph",
      [](int n, double zero_probability, bool weighted, std::uint64_t seed) {
        return random_graph({n, zero_probability, weighted, seed});
      },
      py::arg("n"), py::arg("zero_probability"), py::arg("weighted"), py::arg("seed"));
  m.def("is_planar", &is_planar, py::arg("graph"));
  m.def("generate_test_suite", &generate_test_suite, py::arg("count"), py::arg("n"),
        py::arg("weighted"), py::arg("seed"));

  m.def("cut_value", &cut_value, py::arg("graph"), py::arg("assignment"));
  m.def("cut_value_bits", &cut_value_bits, py::arg("graph"), py::arg("bits"));
  m.def(
      "brute_force_maxcut",
      [](const WeightedGraph& g, int max_n) {
        const MaxCutSolution sol = brute_force_maxcut(g, max_n);
        return py::make_tuple(sol.value, sol.assignment);
      },
      py::arg("graph"), py::arg("max_n") = 30);
  m.def("approximation_ratio",
        py::overload_cast<double, double>(&approximation_ratio), py::arg("achieved"),
        py::arg("optimum"));

  py::class_<QaoaParams>(m, "QaoaParams")
      .def(py::init(&QaoaParams::make), py::arg("gamma"), py::arg("beta"))
      .def_readonly("p", &QaoaParams::p)
      .def_readonly("gamma", &QaoaParams::gamma)
      .def_readonly("beta", &QaoaParams::beta)
      .def("canonicalized", &QaoaParams::canonicalized);

  m.def(
      "run_qaoa",
      [](const WeightedGraph& g, const QaoaParams& params) {
        return run_qaoa_circuit(g, params).amplitudes();
      },
      py::arg("graph"), py::arg("params"), "Final state amplitudes (bit b of the index = vertex b)");
  m.def(
      "exact_expectation",
      [](const WeightedGraph& g, const QaoaParams& params) {
        return exact_expectation(run_qaoa_circuit(g, params), g);
      },
      py::arg("graph"), py::arg("params"));
  m.def(
      "sample_qaoa",
      [](const WeightedGraph& g, const QaoaParams& params, std::uint64_t shots,
         std::uint64_t seed) {
        const SampleDistribution d = sample(run_qaoa_circuit(g, params), shots, seed);
        const SampleEstimate est = estimate_from_samples(d, g);
        py::dict counts;
        for (const auto& [k, c] : d.counts) counts[py::int_(k)] = c;
        return py::make_tuple(est.mean, est.best_value, est.best_cut, counts);
      },
      py::arg("graph"), py::arg("params"), py::arg("shots"), py::arg("seed"),
      "Returns (mean, best_value, best_cut, counts)");

  py::class_<NoiseModel>(m, "NoiseModel")
      .def(py::init([](double p1, double p2) { return NoiseModel{p1, p2}; }), py::arg("p1"),
           py::arg("p2"))
      .def_readonly("p1", &NoiseModel::p1)
      .def_readonly("p2", &NoiseModel::p2)
      .def_static("model_one", &NoiseModel::model_one)
      .def_static("model_two", &NoiseModel::model_two);

  m.def(
      "noisy_expectation_density",
      [](const WeightedGraph& g, const QaoaParams& params, const NoiseModel& noise, int cap) {
        return noisy_expectation(run_noisy_qaoa_density(g, params, noise, cap), g);
      },
      py::arg("graph"), py::arg("params"), py::arg("noise"),
      py::arg("density_cap") = kDefaultDensityCap);
  m.def(
      "noisy_mean_trajectories",
      [](const WeightedGraph& g, const QaoaParams& params, const NoiseModel& noise, int n_traj,
         std::uint64_t shots, std::uint64_t seed) {
        const SampleDistribution d =
            run_noisy_qaoa_trajectories(g, params, noise, n_traj, shots, seed);
        return estimate_from_samples(d, g).mean;
      },
      py::arg("graph"), py::arg("params"), py::arg("noise"), py::arg("n_traj"), py::arg("shots"),
      py::arg("seed"));

  py::class_<OptimizeResult>(m, "OptimizeResult")
      .def_readonly("params", &OptimizeResult::params)
      .def_readonly("value", &OptimizeResult::value)
      .def_readonly("ratio", &OptimizeResult::ratio)
      .def_readonly("evaluations", &OptimizeResult::evaluations)
      .def_readonly("starts_used", &OptimizeResult::starts_used)
      .def_readonly("converged", &OptimizeResult::converged);

  m.def(
      "multistart_optimize",
      [](const WeightedGraph& g, int p, int n_starts, std::uint64_t seed, int jobs) {
        MultistartOptions opts;
        opts.n_starts = n_starts;
        opts.seed = seed;
        opts.jobs = jobs;
        return multistart_optimize(g, p, opts);
      },
      py::arg("graph"), py::arg("p"), py::arg("n_starts") = 0, py::arg("seed") = 1,
      py::arg("jobs") = 1);
  m.def(
      "fourier_optimize",
      [](const WeightedGraph& g, int p_target, std::uint64_t seed, int jobs) {
        FourierOptions opts;
        opts.seed = seed;
        opts.jobs = jobs;
        return fourier_optimize(g, p_target, opts);
      },
      py::arg("graph"), py::arg("p_target"), py::arg("seed") = 1, py::arg("jobs") = 1);

  py::class_<RatioDistribution>(m, "RatioDistribution")
      .def_readonly("mean", &RatioDistribution::mean)
      .def_readonly("max", &RatioDistribution::max)
      .def_property_readonly("ratios", [](const RatioDistribution& d) {
        std::vector<double> out;
        out.reserve(d.samples.size());
        for (const auto& s : d.samples) out.push_back(s.ratio);
        return out;
      });

  m.def(
      "gw_baseline",
      [](const WeightedGraph& g, int cuts, std::uint64_t seed) {
        return gw_baseline(g, cuts, seed);
      },
      py::arg("graph"), py::arg("cuts") = 10000, py::arg("seed") = 1);
  m.def(
      "gw_relaxation_objective",
      [](const WeightedGraph& g, std::uint64_t seed) {
        return solve_relaxation(g, gw_default_rank(g.num_vertices()), 10000, 1e-9, seed).objective;
      },
      py::arg("graph"), py::arg("seed") = 1);

  py::class_<PowerFlowCase>(m, "PowerFlowCase");
  m.def("read_power_flow_case", &read_power_flow_case, py::arg("path"));
  m.def(
      "solve_power_flow",
      [](const PowerFlowCase& pf_case, double tol, int max_iter) {
        const PowerFlowSolution sol = solve_power_flow(pf_case, tol, max_iter);
        return py::make_tuple(sol.V, sol.iterations, power_balance_residual(pf_case, sol));
      },
      py::arg("case"), py::arg("tol") = 1e-8, py::arg("max_iter") = 20,
      "Returns (bus_voltages, iterations, power_balance_residual)");
  m.def(
      "power_flow_weights",
      [](const PowerFlowCase& pf_case) {
        return line_weights(pf_case, solve_power_flow(pf_case));
      },
      py::arg("case"));

  py::class_<ParamRecord>(m, "ParamRecord")
      .def_readonly("n", &ParamRecord::n)
      .def_readonly("density", &ParamRecord::density)
      .def_readonly("p", &ParamRecord::p)
      .def_readonly("gamma", &ParamRecord::gamma)
      .def_readonly("beta", &ParamRecord::beta)
      .def_readonly("seed_ratio", &ParamRecord::seed_ratio)
      .def_readonly("graph_ref", &ParamRecord::graph_ref);

  py::class_<TransferDatabase>(m, "TransferDatabase")
      .def_readonly("records", &TransferDatabase::records);
  m.def("read_database", &read_database, py::arg("path"));

  m.def(
      "select_params",
      [](const std::filesystem::path& db_path, int n_s, int n_t, int p, double target_density,
         double slack, int top_k) {
        const TransferDatabase db = read_database(db_path);
        const MappingTable* table = db.find_table(n_s, n_t, p);
        if (!table) throw DataError("no mapping table for the requested sizes and p");
        const TransferSelection sel = select_params(*table, db, target_density, {slack, top_k});
        py::list records;
        for (std::size_t i = 0; i < sel.records.size(); ++i)
          records.append(py::make_tuple(sel.records[i].graph_ref, sel.records[i].density,
                                        sel.scores[i]));
        return py::make_tuple(sel.density_left, sel.density_right, records);
      },
      py::arg("db_path"), py::arg("n_s"), py::arg("n_t"), py::arg("p"),
      py::arg("target_density"), py::arg("slack") = 0.01, py::arg("top_k") = 3);

  m.attr("CAMPAIGN_SHOTS") = kCampaignShots;
  m.attr("QUICK_SHOTS") = kQuickShots;
}
