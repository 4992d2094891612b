#include "qmc/campaigns.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <memory>
#include <numbers>

#include "qmc/errors.hpp"
#include "qmc/gw.hpp"
#include "qmc/maxcut.hpp"
#include "qmc/parallel.hpp"
#include "qmc/rng.hpp"

namespace qmc {

namespace {

std::vector<std::pair<std::string, WeightedGraph>> labeled_suite(const std::string& prefix, int count,
                                                                 int n, bool weighted,
                                                                 std::uint64_t seed) {
  std::vector<WeightedGraph> graphs = generate_test_suite(count, n, weighted, seed);
  std::vector<std::pair<std::string, WeightedGraph>> out;
  out.reserve(graphs.size());
  for (std::size_t i = 0; i < graphs.size(); ++i)
    out.emplace_back(prefix + std::to_string(i), std::move(graphs[i]));
  return out;
}

TransferDatabase assemble_database(const std::vector<std::pair<std::string, WeightedGraph>>& seeds,
                                   const std::vector<int>& p_list, std::uint64_t seed, int jobs) {
  DatabaseBuildOptions opts;
  opts.p_list = p_list;
  opts.seed = seed;
  opts.jobs = jobs;
  TransferDatabase db;
  db.records = build_database(seeds, opts);
  for (const auto& [ref, g] : seeds) db.graphs.emplace(ref, g);
  return db;
}

double wall_seconds(const std::chrono::steady_clock::time_point& t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

VecObjective sampled_qaoa_objective(const WeightedGraph& g, int p, std::uint64_t shots,
                                    std::uint64_t seed) {
  auto eval = std::make_shared<CircuitEvaluator>(g);
  auto counter = std::make_shared<std::uint64_t>(0);
  return [eval, counter, p, shots, seed](const std::vector<double>& x) {
    QaoaParams params;
    params.p = p;
    params.gamma.assign(x.begin(), x.begin() + p);
    params.beta.assign(x.begin() + p, x.end());
    const StateVector st = eval->state(params);
    const SampleDistribution dist = sample(st, shots, Rng::mix(seed, (*counter)++));
    return estimate_from_samples(dist, eval->graph()).mean;
  };
}

RandomVsTransferOutcome run_random_vs_transfer(const RandomVsTransferConfig& config) {
  RandomVsTransferOutcome out;
  const auto seeds = labeled_suite("seed-", config.n_seeds, config.seed_n, config.weighted,
                                   Rng::mix(config.seed, 0x5eed));
  out.targets = labeled_suite("target-", config.n_targets, config.target_n, config.weighted,
                              Rng::mix(config.seed, 0x7a67));

  out.db = assemble_database(seeds, config.p_list, Rng::mix(config.seed, 0xdb), config.jobs);
  for (const auto& [ref, g] : out.targets) out.db.graphs.emplace(ref, g);
  for (int p : config.p_list)
    out.db.tables.push_back(build_mapping_table(out.db, config.seed_n, p, out.targets, config.jobs));

  struct Cell {
    double transfer_ratio = 0.0;
    double random_mean = 0.0;
    double transfer_best = 0.0;
    double random_best = 0.0;
    double wall = 0.0;
  };
  std::vector<Cell> cells(out.targets.size() * config.p_list.size());

  parallel_for(out.targets.size(), config.jobs, [&](std::size_t ti) {
    const auto& [ref, g] = out.targets[ti];
    const auto t0 = std::chrono::steady_clock::now();
    const CircuitEvaluator eval(g);
    const double optimum = brute_force_maxcut(g).value;
    const double density = g.normalized_density();
    for (std::size_t pi = 0; pi < config.p_list.size(); ++pi) {
      const int p = config.p_list[pi];
      const MappingTable* table = out.db.find_table(config.seed_n, g.num_vertices(), p);
      const TransferSelection sel = select_params(*table, out.db, density);
      QaoaParams tp;
      tp.p = p;
      tp.gamma = sel.records.front().gamma;
      tp.beta = sel.records.front().beta;

      Cell& cell = cells[ti * config.p_list.size() + pi];
      cell.transfer_ratio = eval.expectation(tp) / optimum;
      {
        const SampleDistribution d =
            sample(eval.state(tp), config.shots, Rng::mix(config.seed, 0xbe57 + ti * 31 + pi));
        cell.transfer_best = estimate_from_samples(d, g).best_value / optimum;
      }

      Rng draw_rng = Rng::derived(config.seed, 0xd0 + ti * 101 + pi);
      double racc = 0.0, rbest = 0.0;
      for (int d = 0; d < config.random_draws; ++d) {
        QaoaParams rp;
        rp.p = p;
        for (int i = 0; i < p; ++i) rp.gamma.push_back(draw_rng.uniform(0.0, 2.0 * std::numbers::pi));
        for (int i = 0; i < p; ++i) rp.beta.push_back(draw_rng.uniform(0.0, std::numbers::pi));
        const double r = eval.expectation(rp) / optimum;
        racc += r;
        rbest = std::max(rbest, r);
      }
      cell.random_mean = racc / config.random_draws;
      cell.random_best = rbest;
      cell.wall = wall_seconds(t0);
    }
  });

  for (std::size_t pi = 0; pi < config.p_list.size(); ++pi) {
    PerPAggregate agg;
    agg.p = config.p_list[pi];
    double margin_low = 0.0;
    for (std::size_t ti = 0; ti < out.targets.size(); ++ti) {
      const auto& [ref, g] = out.targets[ti];
      const Cell& cell = cells[ti * config.p_list.size() + pi];
      const double density = g.normalized_density();
      agg.transfer_mean += cell.transfer_ratio;
      agg.random_mean += cell.random_mean;
      if (density < 0.3) {
        margin_low += cell.transfer_ratio - cell.random_mean;
        ++agg.low_density_targets;
      }
      out.transfer_ratio[{ref, agg.p}] = cell.transfer_ratio;
      out.random_mean_ratio[{ref, agg.p}] = cell.random_mean;

      ResultRow tr{ref,  density,          agg.p, ResultMethod::Transfer, cell.transfer_ratio,
                   cell.transfer_best, config.shots, config.seed, cell.wall};
      ResultRow rr{ref,  density,          agg.p, ResultMethod::Random, cell.random_mean,
                   cell.random_best, 0,            config.seed, cell.wall};
      out.rows.push_back(tr);
      out.rows.push_back(rr);
    }
    agg.transfer_mean /= static_cast<double>(out.targets.size());
    agg.random_mean /= static_cast<double>(out.targets.size());
    if (agg.low_density_targets > 0) margin_low /= agg.low_density_targets;
    agg.low_density_margin = margin_low;
    out.per_p.push_back(agg);
  }
  return out;
}

GwCompareOutcome run_gw_compare(const GwCompareConfig& config) {
  GwCompareOutcome out;
  const auto seeds = labeled_suite("seed-", config.n_seeds, config.seed_n, config.weighted,
                                   Rng::mix(config.seed, 0x5eed));
  out.targets = labeled_suite("target-", config.n_targets, config.target_n, config.weighted,
                              Rng::mix(config.seed, 0x7a67));

  out.db = assemble_database(seeds, config.p_list, Rng::mix(config.seed, 0xdb), config.jobs);
  for (const auto& [ref, g] : out.targets) out.db.graphs.emplace(ref, g);
  for (int p : config.p_list)
    out.db.tables.push_back(build_mapping_table(out.db, config.seed_n, p, out.targets, config.jobs));

  struct Cell {
    std::vector<double> qaoa_ratio;  // per p
    double gw_mean = 0.0;
    double gw_best = 0.0;
    double density = 0.0;
    double wall = 0.0;
  };
  std::vector<Cell> cells(out.targets.size());

  parallel_for(out.targets.size(), config.jobs, [&](std::size_t ti) {
    const auto& [ref, g] = out.targets[ti];
    const auto t0 = std::chrono::steady_clock::now();
    Cell& cell = cells[ti];
    cell.density = g.normalized_density();
    const CircuitEvaluator eval(g);
    const double optimum = brute_force_maxcut(g).value;
    for (int p : config.p_list) {
      const MappingTable* table = out.db.find_table(config.seed_n, g.num_vertices(), p);
      const TransferSelection sel = select_params(*table, out.db, cell.density);
      QaoaParams tp;
      tp.p = p;
      tp.gamma = sel.records.front().gamma;
      tp.beta = sel.records.front().beta;
      cell.qaoa_ratio.push_back(eval.expectation(tp) / optimum);
    }
    const RatioDistribution gw = gw_baseline(g, config.gw_cuts, Rng::mix(config.seed, 0x6577 + ti));
    cell.gw_mean = gw.mean;
    cell.gw_best = gw.max;
    cell.wall = wall_seconds(t0);
  });

  for (std::size_t ti = 0; ti < out.targets.size(); ++ti) {
    const auto& [ref, g] = out.targets[ti];
    const Cell& cell = cells[ti];
    for (std::size_t pi = 0; pi < config.p_list.size(); ++pi) {
      const int p = config.p_list[pi];
      if (cell.qaoa_ratio[pi] > cell.gw_mean) ++out.qaoa_beats_gw[p];
      out.rows.push_back({ref, cell.density, p, ResultMethod::Transfer, cell.qaoa_ratio[pi],
                          cell.qaoa_ratio[pi], 0, config.seed, cell.wall});
    }
    out.rows.push_back({ref, cell.density, 0, ResultMethod::Gw, cell.gw_mean, cell.gw_best,
                        static_cast<std::uint64_t>(config.gw_cuts), config.seed, cell.wall});
  }

  for (const auto& table : out.db.tables) {
    TablePattern pat;
    pat.p = table.p;
    const std::size_t cols = table.col_refs.size();
    auto argmax_row = [&](std::size_t col) {
      std::size_t best = 0;
      for (std::size_t r = 1; r < table.row_refs.size(); ++r)
        if (table.entries[r][col] > table.entries[best][col]) best = r;
      return best;
    };
    const std::size_t lo = argmax_row(0);
    const std::size_t hi = argmax_row(cols - 1);
    pat.sparsest_best_row = static_cast<int>(lo);
    pat.densest_best_row = static_cast<int>(hi);
    pat.sparsest_best_row_density = table.row_densities[lo];
    pat.densest_best_row_density = table.row_densities[hi];
    std::vector<double> rd = table.row_densities;
    std::nth_element(rd.begin(), rd.begin() + rd.size() / 2, rd.end());
    pat.median_row_density = rd[rd.size() / 2];
    out.patterns.push_back(pat);
  }
  return out;
}

NoiseCampaignOutcome run_noise_campaign(const NoiseCampaignConfig& config) {
  NoiseCampaignOutcome out;
  const auto seeds = labeled_suite("seed-", config.n_seeds, config.seed_n, config.weighted,
                                   Rng::mix(config.seed, 0x5eed));
  auto targets = labeled_suite("target-", config.n_targets, config.n, config.weighted,
                               Rng::mix(config.seed, 0x7a67));

  TransferDatabase db =
      assemble_database(seeds, {config.p}, Rng::mix(config.seed, 0xdb), config.jobs);
  for (const auto& [ref, g] : targets) db.graphs.emplace(ref, g);
  const MappingTable table = build_mapping_table(db, config.seed_n, config.p, targets, config.jobs);

  struct Cell {
    double noiseless = 0.0;
    std::vector<double> noisy;
    double density = 0.0;
    double wall = 0.0;
  };
  std::vector<Cell> cells(targets.size());

  parallel_for(targets.size(), config.jobs, [&](std::size_t ti) {
    const auto& [ref, g] = targets[ti];
    const auto t0 = std::chrono::steady_clock::now();
    Cell& cell = cells[ti];
    cell.density = g.normalized_density();
    const double optimum = brute_force_maxcut(g).value;
    const TransferSelection sel = select_params(table, db, cell.density);
    QaoaParams tp;
    tp.p = config.p;
    tp.gamma = sel.records.front().gamma;
    tp.beta = sel.records.front().beta;

    cell.noiseless = exact_expectation(run_qaoa_circuit(g, tp), g) / optimum;
    for (const NoiseModel& model : config.models) {
      const DensityMatrix rho = run_noisy_qaoa_density(g, tp, model);
      cell.noisy.push_back(noisy_expectation(rho, g) / optimum);
    }
    cell.wall = wall_seconds(t0);
  });

  out.model_means.assign(config.models.size(), 0.0);
  for (std::size_t ti = 0; ti < targets.size(); ++ti) {
    const auto& [ref, g] = targets[ti];
    const Cell& cell = cells[ti];
    out.noiseless_mean += cell.noiseless;
    out.rows.push_back({ref, cell.density, config.p, ResultMethod::Transfer, cell.noiseless,
                        cell.noiseless, 0, config.seed, cell.wall});
    for (std::size_t mi = 0; mi < config.models.size(); ++mi) {
      out.model_means[mi] += cell.noisy[mi];
      out.rows.push_back({ref, cell.density, config.p, ResultMethod::Noisy, cell.noisy[mi],
                          cell.noisy[mi], 0, config.seed, cell.wall});
    }
  }
  out.noiseless_mean /= static_cast<double>(targets.size());
  for (double& m : out.model_means) m /= static_cast<double>(targets.size());
  return out;
}

WarmStartOutcome run_warm_start_study(
    const TransferDatabase& db, const std::vector<std::pair<std::string, WeightedGraph>>& targets,
    const WarmStartConfig& config) {
  WarmStartOutcome out;
  struct Cell {
    double improve_best = 0.0;
    double improve_worst = 0.0;
    double refined_best_ratio = 0.0;
    double density = 0.0;
    int p = 0;
    double wall = 0.0;
  };
  std::vector<Cell> cells(targets.size() * config.p_list.size());

  parallel_for(targets.size(), config.jobs, [&](std::size_t ti) {
    const auto& [ref, g] = targets[ti];
    const CircuitEvaluator eval(g);
    const double optimum = brute_force_maxcut(g).value;
    const double density = g.normalized_density();
    for (std::size_t pi = 0; pi < config.p_list.size(); ++pi) {
      const auto t0 = std::chrono::steady_clock::now();
      const int p = config.p_list[pi];
      const MappingTable* tbl = nullptr;
      for (const auto& t : db.tables)
        if (t.p == p && t.n_t == g.num_vertices()) tbl = &t;
      if (!tbl) throw DataError("run_warm_start_study: no table for p=" + std::to_string(p));

      // column for this exact target (tables built on these targets)
      std::size_t col = 0;
      bool found = false;
      for (std::size_t j = 0; j < tbl->col_refs.size(); ++j)
        if (tbl->col_refs[j] == ref) {
          col = j;
          found = true;
        }
      if (!found) throw DataError("run_warm_start_study: target '" + ref + "' not a table column");

      std::size_t best_row = 0, worst_row = 0;
      for (std::size_t r = 1; r < tbl->row_refs.size(); ++r) {
        if (tbl->entries[r][col] > tbl->entries[best_row][col]) best_row = r;
        if (tbl->entries[r][col] < tbl->entries[worst_row][col]) worst_row = r;
      }

      auto refine = [&](std::size_t row, std::uint64_t salt) {
        const ParamRecord* rec = db.find_record(tbl->row_refs[row], p);
        QaoaParams start;
        start.p = p;
        start.gamma = rec->gamma;
        start.beta = rec->beta;
        const double before = eval.expectation(start) / optimum;
        CobylaOptions copts;
        copts.budget = config.budget;
        const VecObjective obj =
            sampled_qaoa_objective(g, p, config.shots, Rng::mix(config.seed, salt + ti * 131 + pi));
        const OptimizeResult res = cobyla_optimize(obj, start, copts);
        const double after = eval.expectation(res.params) / optimum;
        return std::make_pair(before, after);
      };

      const auto [best_before, best_after] = refine(best_row, 0xb0);
      const auto [worst_before, worst_after] = refine(worst_row, 0x30);

      Cell& cell = cells[ti * config.p_list.size() + pi];
      cell.improve_best = best_after - best_before;
      cell.improve_worst = worst_after - worst_before;
      cell.refined_best_ratio = best_after;
      cell.density = density;
      cell.p = p;
      cell.wall = wall_seconds(t0);
    }
  });

  for (std::size_t ti = 0; ti < targets.size(); ++ti) {
    for (std::size_t pi = 0; pi < config.p_list.size(); ++pi) {
      const Cell& cell = cells[ti * config.p_list.size() + pi];
      out.mean_improvement_best += cell.improve_best;
      out.mean_improvement_worst += cell.improve_worst;
      out.rows.push_back({targets[ti].first, cell.density, cell.p, ResultMethod::TransferRefine,
                          cell.refined_best_ratio, cell.refined_best_ratio, config.shots,
                          config.seed, cell.wall});
    }
  }
  const double total = static_cast<double>(cells.size());
  out.mean_improvement_best /= total;
  out.mean_improvement_worst /= total;
  return out;
}

}  // namespace qmc
