#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "qmc/io.hpp"
#include "qmc/noise.hpp"
#include "qmc/transfer.hpp"

namespace qmc {

// Desk-scale experiment drivers shared by the CLI and the acceptance suite.
// Every stochastic step derives its stream from the campaign seed, so a rerun
// with the same configuration is bit-identical.

struct RandomVsTransferConfig {
  int seed_n = 8;
  int n_seeds = 7;
  int target_n = 12;
  int n_targets = 60;
  std::vector<int> p_list{1, 2, 3};
  int random_draws = 10;
  bool weighted = true;
  std::uint64_t shots = kQuickShots;  // used for the best-cut column only
  std::uint64_t seed = 1;
  int jobs = 1;
};

struct PerPAggregate {
  int p = 0;
  double transfer_mean = 0.0;
  double random_mean = 0.0;
  double low_density_margin = 0.0;  // transfer - random restricted to D < 0.3
  int low_density_targets = 0;
};

struct RandomVsTransferOutcome {
  TransferDatabase db;  // seeds, tables, and target graphs (provenance)
  std::vector<std::pair<std::string, WeightedGraph>> targets;
  std::vector<ResultRow> rows;
  std::vector<PerPAggregate> per_p;
  // exact transferred / mean-of-random ratios keyed by (target_ref, p)
  std::map<std::pair<std::string, int>, double> transfer_ratio;
  std::map<std::pair<std::string, int>, double> random_mean_ratio;
};

RandomVsTransferOutcome run_random_vs_transfer(const RandomVsTransferConfig& config);

struct GwCompareConfig {
  int seed_n = 8;
  int n_seeds = 7;
  int target_n = 12;
  int n_targets = 100;
  std::vector<int> p_list{1, 2, 3, 10};
  int gw_cuts = 10000;
  bool weighted = true;
  std::uint64_t seed = 1;
  int jobs = 1;
};

struct TablePattern {
  int p = 0;
  int sparsest_best_row = 0;  // argmax row index for the lowest-density column
  int densest_best_row = 0;
  double sparsest_best_row_density = 0.0;
  double densest_best_row_density = 0.0;
  double median_row_density = 0.0;
};

struct GwCompareOutcome {
  TransferDatabase db;
  std::vector<std::pair<std::string, WeightedGraph>> targets;
  std::vector<ResultRow> rows;
  std::map<int, int> qaoa_beats_gw;  // p -> count of targets with QAOA mean > GW mean
  std::vector<TablePattern> patterns;
};

GwCompareOutcome run_gw_compare(const GwCompareConfig& config);

struct NoiseCampaignConfig {
  int n = 8;
  int p = 3;
  int seed_n = 8;
  int n_seeds = 7;
  int n_targets = 12;
  std::vector<NoiseModel> models{NoiseModel::model_one(), NoiseModel::model_two()};
  bool weighted = true;
  std::uint64_t seed = 1;
  int jobs = 1;
};

struct NoiseCampaignOutcome {
  std::vector<ResultRow> rows;
  double noiseless_mean = 0.0;
  std::vector<double> model_means;  // same order as config.models
};

NoiseCampaignOutcome run_noise_campaign(const NoiseCampaignConfig& config);

struct WarmStartConfig {
  std::vector<int> p_list{1, 2, 3};
  int budget = 60;
  std::uint64_t shots = kQuickShots;
  std::uint64_t seed = 1;
  int jobs = 1;
};

struct WarmStartOutcome {
  // mean over (target, p) of exact-ratio improvement from refining...
  double mean_improvement_best = 0.0;   // ...the transferred (column-best) start
  double mean_improvement_worst = 0.0;  // ...the column-worst start
  std::vector<ResultRow> rows;
};

// COBYLA refinement on the sampled objective, starting from the transferred
// parameters and from each table column's worst row.
WarmStartOutcome run_warm_start_study(const TransferDatabase& db,
                                      const std::vector<std::pair<std::string, WeightedGraph>>& targets,
                                      const WarmStartConfig& config);

// Stochastic objective for refinement: mean sampled cut at `shots` shots with
// a fresh derived sample seed per call.
VecObjective sampled_qaoa_objective(const WeightedGraph& g, int p, std::uint64_t shots,
                                    std::uint64_t seed);

}  // namespace qmc
