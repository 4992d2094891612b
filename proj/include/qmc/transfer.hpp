#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qmc/graph.hpp"
#include "qmc/optimize.hpp"
#include "qmc/simulator.hpp"

namespace qmc {

// One optimized seed entry: (n, D, gamma, beta) plus its own score.
struct ParamRecord {
  int n = 0;
  double density = 0.0;
  int p = 0;
  std::vector<double> gamma;
  std::vector<double> beta;
  double seed_ratio = 0.0;
  std::string graph_ref;
};

// N x M matrix of mean approximation ratios: rows are seed records sorted by
// density ascending, columns are target graphs sorted by density ascending.
// Raw expectations are kept alongside for re-derivation.
struct MappingTable {
  int p = 0;
  int n_s = 0;
  int n_t = 0;
  std::vector<std::string> row_refs;      // (graph_ref, p) identifies the record
  std::vector<double> row_densities;
  std::vector<std::string> col_refs;
  std::vector<double> col_densities;
  std::vector<double> col_optima;
  std::vector<std::vector<double>> entries;      // ratios, entries[row][col]
  std::vector<std::vector<double>> entries_raw;  // expectations
};

struct JournalEntry {
  std::string timestamp;
  std::string action;
  std::string detail;
};

struct TransferDatabase {
  std::vector<ParamRecord> records;
  std::vector<MappingTable> tables;
  std::map<std::string, WeightedGraph> graphs;  // provenance for re-derivation
  std::vector<JournalEntry> journal;

  const ParamRecord* find_record(const std::string& graph_ref, int p) const;
  const MappingTable* find_table(int n_s, int n_t, int p) const;
};

struct DatabaseBuildOptions {
  std::vector<int> p_list{1, 2, 3};
  int fourier_threshold = 3;  // multistart for p <= threshold, fourier ladder above
  std::uint64_t seed = 1;
  int jobs = 1;
  MultistartOptions multistart;
  FourierOptions fourier;
  // warn when consecutive seed densities gap by more than this
  double density_gap_warning = 0.25;
};

struct DatabaseBuildReport {
  std::vector<std::string> warnings;
  std::vector<std::string> failures;  // omitted records
};

// One record per (seed graph, p). Seeds are normalized weighted graphs keyed
// by caller-chosen refs.
std::vector<ParamRecord> build_database(
    const std::vector<std::pair<std::string, WeightedGraph>>& seeds,
    const DatabaseBuildOptions& opts, DatabaseBuildReport* report = nullptr);

// entry (i,j) = expectation of target j under seed i's parameters, divided by
// target j's brute-force optimum.
MappingTable build_mapping_table(const TransferDatabase& db, int n_s, int p,
                                 const std::vector<std::pair<std::string, WeightedGraph>>& targets,
                                 int jobs = 1);

struct SelectionPolicy {
  double slack = 0.01;  // accept entries >= column max - slack
  int top_k = 3;
};

struct TransferSelection {
  double density_left = 0.0;
  double density_right = 0.0;
  std::vector<ParamRecord> records;  // best-scoring first
  std::vector<double> scores;
};

// Nearest-density column(s) (ties keep both neighbors), entries above the
// column-max-minus-slack threshold, up to top_k records best-first.
TransferSelection select_params(const MappingTable& table, const TransferDatabase& db,
                                double target_density, const SelectionPolicy& policy = {});

// Append-only expansion. The claimed seed_ratio is re-derived (1e-6) before
// the record is accepted; duplicates of (graph_ref, p) are replaced only by a
// strictly better score.
void expand_database(TransferDatabase& db, const ParamRecord& record, const WeightedGraph& graph,
                     double validation_tol = 1e-6);

// New table entry from applying an existing record to an existing column.
void expand_table(TransferDatabase& db, MappingTable& table, const std::string& row_ref,
                  const std::string& col_ref, double score, double validation_tol = 1e-6);

// Re-derives every stored seed ratio and table entry; returns mismatches.
std::vector<std::string> validate_database(const TransferDatabase& db, double tol = 1e-6);

}  // namespace qmc
