#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "qmc/graph.hpp"
#include "qmc/gw.hpp"
#include "qmc/powerflow.hpp"
#include "qmc/simulator.hpp"
#include "qmc/transfer.hpp"

namespace qmc {

inline constexpr int kSchemaVersion = 1;

// Graph JSON: {"schema_version": 1, "n": <int>, "edges": [[i, j, w], ...]}
WeightedGraph read_graph(const std::filesystem::path& path);
void write_graph(const std::filesystem::path& path, const WeightedGraph& g);

// Params JSON: {"schema_version": 1, "p": <int>, "gamma": [...], "beta": [...]}
QaoaParams read_params(const std::filesystem::path& path);
void write_params(const std::filesystem::path& path, const QaoaParams& params);

// Database JSON: {schema_version, records: [...], tables: [...], graphs: {...},
// journal: [...]}
TransferDatabase read_database(const std::filesystem::path& path);
void write_database(const std::filesystem::path& path, const TransferDatabase& db);

// Case JSON: {schema_version, base_mva, buses: [{id, kind, P, Q, Vm, Va}],
// branches: [{from, to, r, x, b_sh}]}
PowerFlowCase read_power_flow_case(const std::filesystem::path& path);
void write_power_flow_case(const std::filesystem::path& path, const PowerFlowCase& pf_case);

// Scenario overrides: {schema_version, set: [{id, P?, Q?, Vm?}]}
PowerFlowCase apply_scenario(const PowerFlowCase& base, const std::filesystem::path& overrides);

enum class ResultMethod { Transfer, TransferRefine, Random, Gw, Noisy };
std::string to_string(ResultMethod m);

struct ResultRow {
  std::string graph_ref;
  double density = 0.0;
  int p = 0;
  ResultMethod method = ResultMethod::Transfer;
  double mean_ratio = 0.0;
  double best_ratio = 0.0;
  std::uint64_t shots = 0;
  std::uint64_t seed = 0;
  double wall_time = 0.0;
};

void write_results_csv(const std::filesystem::path& path, const std::vector<ResultRow>& rows);

// value,probability rows (probabilities sum to 1)
void write_histogram_csv(const std::filesystem::path& path, const SampleDistribution& dist,
                         const WeightedGraph& g);
// bin_low,bin_high,probability rows over [0,1]
void write_histogram_csv(const std::filesystem::path& path, const RatioDistribution& dist);

// temp-file-then-rename
void atomic_write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace qmc
