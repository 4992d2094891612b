#include "qmc/transfer.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <limits>

#include "qmc/errors.hpp"
#include "qmc/maxcut.hpp"
#include "qmc/parallel.hpp"
#include "qmc/rng.hpp"

namespace qmc {

namespace {

std::string now_iso8601() {
  const auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char buf[32];
  std::tm tm_utc{};
  gmtime_r(&t, &tm_utc);
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
  return buf;
}

QaoaParams record_params(const ParamRecord& r) {
  QaoaParams p;
  p.p = r.p;
  p.gamma = r.gamma;
  p.beta = r.beta;
  p.validate();
  return p;
}

}  // namespace

const ParamRecord* TransferDatabase::find_record(const std::string& graph_ref, int p) const {
  for (const auto& r : records)
    if (r.graph_ref == graph_ref && r.p == p) return &r;
  return nullptr;
}

const MappingTable* TransferDatabase::find_table(int n_s, int n_t, int p) const {
  for (const auto& t : tables)
    if (t.n_s == n_s && t.n_t == n_t && t.p == p) return &t;
  return nullptr;
}

std::vector<ParamRecord> build_database(
    const std::vector<std::pair<std::string, WeightedGraph>>& seeds,
    const DatabaseBuildOptions& opts, DatabaseBuildReport* report) {
  if (seeds.empty()) throw DataError("build_database: no seed graphs");
  DatabaseBuildReport local;
  DatabaseBuildReport& rep = report ? *report : local;

  std::vector<double> densities;
  for (const auto& [ref, g] : seeds) {
    if (!g.is_normalized())
      throw DataError("build_database: seed graph '" + ref + "' is not normalized");
    densities.push_back(g.normalized_density());
  }
  std::sort(densities.begin(), densities.end());
  for (std::size_t i = 1; i < densities.size(); ++i)
    if (densities[i] - densities[i - 1] > opts.density_gap_warning)
      rep.warnings.push_back("seed density gap " + std::to_string(densities[i - 1]) + " -> " +
                             std::to_string(densities[i]) + " exceeds " +
                             std::to_string(opts.density_gap_warning));

  int p_max_fourier = 0;
  for (int p : opts.p_list)
    if (p > opts.fourier_threshold) p_max_fourier = std::max(p_max_fourier, p);

  std::vector<std::vector<ParamRecord>> per_seed(seeds.size());
  parallel_for(seeds.size(), opts.jobs, [&](std::size_t si) {
    const auto& [ref, g] = seeds[si];
    const double optimum = brute_force_maxcut(g).value;
    const double density = g.normalized_density();
    std::vector<ParamRecord>& out = per_seed[si];

    std::vector<OptimizeResult> ladder;
    if (p_max_fourier > 0) {
      FourierOptions fo = opts.fourier;
      fo.seed = Rng::mix(opts.seed, 0xf0 + si);
      ladder = fourier_optimize(g, p_max_fourier, fo);
    }
    for (int p : opts.p_list) {
      OptimizeResult res;
      if (p <= opts.fourier_threshold) {
        MultistartOptions ms = opts.multistart;
        ms.seed = Rng::mix(opts.seed, 0x1000 * p + si);
        res = multistart_optimize(g, p, ms);
      } else {
        res = ladder[p - 1];
      }
      ParamRecord rec;
      rec.n = g.num_vertices();
      rec.density = density;
      rec.p = p;
      rec.gamma = res.params.gamma;
      rec.beta = res.params.beta;
      rec.seed_ratio = res.value / optimum;
      rec.graph_ref = ref;
      out.push_back(std::move(rec));
    }
  });

  std::vector<ParamRecord> records;
  for (auto& chunk : per_seed)
    for (auto& r : chunk) records.push_back(std::move(r));
  return records;
}

MappingTable build_mapping_table(const TransferDatabase& db, int n_s, int p,
                                 const std::vector<std::pair<std::string, WeightedGraph>>& targets,
                                 int jobs) {
  std::vector<const ParamRecord*> rows;
  for (const auto& r : db.records)
    if (r.n == n_s && r.p == p) rows.push_back(&r);
  if (rows.empty())
    throw DataError("build_mapping_table: no records with n_s=" + std::to_string(n_s) +
                    ", p=" + std::to_string(p));
  if (targets.empty()) throw DataError("build_mapping_table: no target graphs");
  const int n_t = targets.front().second.num_vertices();
  for (const auto& [ref, g] : targets)
    if (g.num_vertices() != n_t)
      throw DataError("build_mapping_table: target '" + ref + "' does not have n_t=" +
                      std::to_string(n_t));

  std::stable_sort(rows.begin(), rows.end(),
                   [](const ParamRecord* a, const ParamRecord* b) { return a->density < b->density; });

  std::vector<std::size_t> col_order(targets.size());
  for (std::size_t i = 0; i < targets.size(); ++i) col_order[i] = i;
  std::stable_sort(col_order.begin(), col_order.end(), [&](std::size_t a, std::size_t b) {
    return targets[a].second.normalized_density() < targets[b].second.normalized_density();
  });

  MappingTable table;
  table.p = p;
  table.n_s = n_s;
  table.n_t = n_t;
  for (const auto* r : rows) {
    table.row_refs.push_back(r->graph_ref);
    table.row_densities.push_back(r->density);
  }
  const std::size_t n_rows = rows.size();
  const std::size_t n_cols = targets.size();
  table.entries.assign(n_rows, std::vector<double>(n_cols, 0.0));
  table.entries_raw.assign(n_rows, std::vector<double>(n_cols, 0.0));
  table.col_refs.resize(n_cols);
  table.col_densities.resize(n_cols);
  table.col_optima.resize(n_cols);

  parallel_for(n_cols, jobs, [&](std::size_t cj) {
    const auto& [ref, g] = targets[col_order[cj]];
    const CircuitEvaluator eval(g);
    const double optimum = brute_force_maxcut(g).value;
    table.col_refs[cj] = ref;
    table.col_densities[cj] = g.normalized_density();
    table.col_optima[cj] = optimum;
    for (std::size_t ri = 0; ri < n_rows; ++ri) {
      const double e = eval.expectation(record_params(*rows[ri]));
      table.entries_raw[ri][cj] = e;
      table.entries[ri][cj] = e / optimum;
    }
  });
  return table;
}

TransferSelection select_params(const MappingTable& table, const TransferDatabase& db,
                                double target_density, const SelectionPolicy& policy) {
  if (table.entries.empty() || table.col_refs.empty())
    throw DataError("select_params: empty mapping table");
  if (policy.top_k < 1) throw DataError("select_params: top_k must be >= 1");

  // nearest column(s); exact ties keep both neighbors
  double best_gap = std::numeric_limits<double>::infinity();
  for (double d : table.col_densities)
    best_gap = std::min(best_gap, std::abs(d - target_density));
  std::vector<std::size_t> cols;
  for (std::size_t j = 0; j < table.col_densities.size(); ++j)
    if (std::abs(table.col_densities[j] - target_density) <= best_gap + 1e-15) cols.push_back(j);

  // candidate rows above each chosen column's threshold, keeping the best
  // score per row
  std::map<std::size_t, double> row_scores;
  for (std::size_t j : cols) {
    double col_max = -1.0;
    for (std::size_t i = 0; i < table.entries.size(); ++i)
      col_max = std::max(col_max, table.entries[i][j]);
    for (std::size_t i = 0; i < table.entries.size(); ++i) {
      const double s = table.entries[i][j];
      if (s >= col_max - policy.slack) {
        auto [it, inserted] = row_scores.emplace(i, s);
        if (!inserted) it->second = std::max(it->second, s);
      }
    }
  }

  std::vector<std::pair<std::size_t, double>> ranked(row_scores.begin(), row_scores.end());
  std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    return a.second != b.second ? a.second > b.second : a.first < b.first;
  });
  if (static_cast<int>(ranked.size()) > policy.top_k) ranked.resize(policy.top_k);

  TransferSelection sel;
  sel.density_left = std::numeric_limits<double>::infinity();
  sel.density_right = -std::numeric_limits<double>::infinity();
  for (const auto& [i, s] : ranked) {
    const ParamRecord* rec = db.find_record(table.row_refs[i], table.p);
    if (!rec)
      throw DataError("select_params: record '" + table.row_refs[i] + "' (p=" +
                      std::to_string(table.p) + ") missing from the database");
    sel.records.push_back(*rec);
    sel.scores.push_back(s);
    sel.density_left = std::min(sel.density_left, rec->density);
    sel.density_right = std::max(sel.density_right, rec->density);
  }
  return sel;
}

namespace {

double rederive_seed_ratio(const TransferDatabase& db, const ParamRecord& rec,
                           const WeightedGraph* graph_override = nullptr) {
  const WeightedGraph* g = graph_override;
  if (!g) {
    auto it = db.graphs.find(rec.graph_ref);
    if (it == db.graphs.end())
      throw DataError("database: graph '" + rec.graph_ref + "' not stored");
    g = &it->second;
  }
  const CircuitEvaluator eval(*g);
  const double optimum = brute_force_maxcut(*g).value;
  return eval.expectation(record_params(rec)) / optimum;
}

}  // namespace

void expand_database(TransferDatabase& db, const ParamRecord& record, const WeightedGraph& graph,
                     double validation_tol) {
  const double actual = rederive_seed_ratio(db, record, &graph);
  if (std::abs(actual - record.seed_ratio) > validation_tol)
    throw DataError("expand_database: claimed ratio " + std::to_string(record.seed_ratio) +
                    " does not re-derive (got " + std::to_string(actual) + ")");

  for (auto& existing : db.records) {
    if (existing.graph_ref == record.graph_ref && existing.p == record.p) {
      if (record.seed_ratio > existing.seed_ratio) {
        existing = record;
        db.graphs.insert_or_assign(record.graph_ref, graph);
        db.journal.push_back({now_iso8601(), "replace-record",
                              record.graph_ref + " p=" + std::to_string(record.p)});
      }
      // identical or worse: keep the stored copy
      return;
    }
  }
  db.records.push_back(record);
  db.graphs.insert_or_assign(record.graph_ref, graph);
  db.journal.push_back(
      {now_iso8601(), "add-record", record.graph_ref + " p=" + std::to_string(record.p)});
}

void expand_table(TransferDatabase& db, MappingTable& table, const std::string& row_ref,
                  const std::string& col_ref, double score, double validation_tol) {
  const auto row_it = std::find(table.row_refs.begin(), table.row_refs.end(), row_ref);
  const auto col_it = std::find(table.col_refs.begin(), table.col_refs.end(), col_ref);
  if (row_it == table.row_refs.end() || col_it == table.col_refs.end())
    throw DataError("expand_table: unknown row or column ref");
  const std::size_t ri = row_it - table.row_refs.begin();
  const std::size_t cj = col_it - table.col_refs.begin();

  const ParamRecord* rec = db.find_record(row_ref, table.p);
  auto git = db.graphs.find(col_ref);
  if (!rec || git == db.graphs.end())
    throw DataError("expand_table: record or column graph missing from the database");
  const CircuitEvaluator eval(git->second);
  const double e = eval.expectation(record_params(*rec));
  const double actual = e / table.col_optima[cj];
  if (std::abs(actual - score) > validation_tol)
    throw DataError("expand_table: claimed score " + std::to_string(score) +
                    " does not re-derive (got " + std::to_string(actual) + ")");
  table.entries[ri][cj] = actual;
  table.entries_raw[ri][cj] = e;
  db.journal.push_back({now_iso8601(), "add-entry", row_ref + " x " + col_ref});
}

std::vector<std::string> validate_database(const TransferDatabase& db, double tol) {
  std::vector<std::string> mismatches;
  for (const auto& rec : db.records) {
    const double actual = rederive_seed_ratio(db, rec);
    if (std::abs(actual - rec.seed_ratio) > tol)
      mismatches.push_back("record " + rec.graph_ref + " p=" + std::to_string(rec.p) +
                           ": stored " + std::to_string(rec.seed_ratio) + " re-derived " +
                           std::to_string(actual));
  }
  for (const auto& table : db.tables) {
    for (std::size_t cj = 0; cj < table.col_refs.size(); ++cj) {
      auto git = db.graphs.find(table.col_refs[cj]);
      if (git == db.graphs.end()) {
        mismatches.push_back("table graph '" + table.col_refs[cj] + "' not stored");
        continue;
      }
      const CircuitEvaluator eval(git->second);
      for (std::size_t ri = 0; ri < table.row_refs.size(); ++ri) {
        const ParamRecord* rec = db.find_record(table.row_refs[ri], table.p);
        if (!rec) {
          mismatches.push_back("table row '" + table.row_refs[ri] + "' has no record");
          continue;
        }
        const double e = eval.expectation(record_params(*rec));
        if (std::abs(e / table.col_optima[cj] - table.entries[ri][cj]) > tol)
          mismatches.push_back("table entry (" + table.row_refs[ri] + ", " + table.col_refs[cj] +
                               ") does not re-derive");
      }
    }
  }
  return mismatches;
}

}  // namespace qmc
