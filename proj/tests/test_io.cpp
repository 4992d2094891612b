#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "qmc/errors.hpp"
#include "qmc/io.hpp"
#include "qmc/rng.hpp"

using namespace qmc;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("qmc-io-test-" + std::to_string(Rng(0).bits()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

WeightedGraph random_payload(Rng& rng) {
  const int n = 2 + static_cast<int>(rng.below(12));
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (rng.uniform() < 0.5) edges.push_back({i, j, rng.uniform_pos()});
  if (edges.empty()) edges.push_back({0, 1, rng.uniform_pos()});
  return WeightedGraph(n, edges);
}

}  // namespace

TEST_CASE("graph round trip is bitwise exact (500 random payloads)") {
  TempDir tmp;
  Rng rng(61);
  for (int trial = 0; trial < 500; ++trial) {
    const WeightedGraph g = random_payload(rng);
    const fs::path p = tmp.path / "g.json";
    write_graph(p, g);
    const WeightedGraph back = read_graph(p);
    REQUIRE(back.num_vertices() == g.num_vertices());
    REQUIRE(back.num_edges() == g.num_edges());
    for (int e = 0; e < g.num_edges(); ++e) {
      CHECK(back.edges()[e].u == g.edges()[e].u);
      CHECK(back.edges()[e].v == g.edges()[e].v);
      CHECK(back.edges()[e].w == g.edges()[e].w);  // bitwise
    }
  }
}

TEST_CASE("params round trip") {
  TempDir tmp;
  const QaoaParams p = QaoaParams::make({1.0, 0.123456789012345678}, {0.5, 2.71828182845904523});
  write_params(tmp.path / "p.json", p);
  const QaoaParams back = read_params(tmp.path / "p.json");
  CHECK(back.p == 2);
  CHECK(back.gamma == p.gamma);
  CHECK(back.beta == p.beta);
}

TEST_CASE("database round trip preserves records, tables, graphs, journal") {
  TempDir tmp;
  Rng rng(67);
  TransferDatabase db;
  for (int i = 0; i < 27; ++i) {
    ParamRecord r;
    r.n = 8;
    r.density = rng.uniform();
    r.p = 1 + (i % 3);
    for (int k = 0; k < r.p; ++k) {
      r.gamma.push_back(rng.uniform(0, 6.28));
      r.beta.push_back(rng.uniform(0, 3.14));
    }
    r.seed_ratio = rng.uniform(0.5, 1.0);
    r.graph_ref = "g" + std::to_string(i % 9);
    db.records.push_back(r);
  }
  for (int i = 0; i < 9; ++i) db.graphs.emplace("g" + std::to_string(i), random_payload(rng));
  MappingTable t;
  t.p = 2;
  t.n_s = 8;
  t.n_t = 12;
  t.row_refs = {"g0", "g1"};
  t.row_densities = {0.2, 0.6};
  t.col_refs = {"t0", "t1", "t2"};
  t.col_densities = {0.1, 0.4, 0.9};
  t.col_optima = {3.0, 4.0, 5.0};
  t.entries = {{rng.uniform(), rng.uniform(), rng.uniform()},
               {rng.uniform(), rng.uniform(), rng.uniform()}};
  t.entries_raw = t.entries;
  db.tables.push_back(t);
  db.journal.push_back({"2026-08-10T00:00:00Z", "add-record", "g0 p=1"});

  write_database(tmp.path / "db.json", db);
  const TransferDatabase back = read_database(tmp.path / "db.json");
  REQUIRE(back.records.size() == db.records.size());
  for (std::size_t i = 0; i < db.records.size(); ++i) {
    CHECK(back.records[i].gamma == db.records[i].gamma);
    CHECK(back.records[i].seed_ratio == db.records[i].seed_ratio);
    CHECK(back.records[i].graph_ref == db.records[i].graph_ref);
  }
  REQUIRE(back.tables.size() == 1);
  CHECK(back.tables[0].entries == db.tables[0].entries);
  CHECK(back.tables[0].col_optima == db.tables[0].col_optima);
  CHECK(back.graphs.size() == 9);
  CHECK(back.journal.size() == 1);
  CHECK(back.journal[0].action == "add-record");
}

TEST_CASE("malformed JSON errors carry the byte offset") {
  TempDir tmp;
  const fs::path p = tmp.path / "bad.json";
  std::ofstream(p) << "{\"n\": 3, \"edges\": [[0, 1,]]}";
  try {
    read_graph(p);
    FAIL("expected DataError");
  } catch (const DataError& e) {
    CHECK(std::string(e.what()).find("byte") != std::string::npos);
  }
}

TEST_CASE("schema version is required and checked") {
  TempDir tmp;
  const fs::path missing = tmp.path / "missing.json";
  std::ofstream(missing) << R"({"n": 2, "edges": [[0, 1, 1.0]]})";
  CHECK_THROWS_WITH_AS(read_graph(missing),
                       doctest::Contains("missing schema_version"), DataError);

  const fs::path wrong = tmp.path / "wrong.json";
  std::ofstream(wrong) << R"({"schema_version": 9, "n": 2, "edges": [[0, 1, 1.0]]})";
  try {
    read_graph(wrong);
    FAIL("expected DataError");
  } catch (const DataError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("expected schema_version 1") != std::string::npos);
    CHECK(msg.find("found 9") != std::string::npos);
  }
}

TEST_CASE("results CSV has the fixed column order") {
  TempDir tmp;
  std::vector<ResultRow> rows{{"g0", 0.25, 2, ResultMethod::Transfer, 0.91, 0.99, 2048, 7, 0.5},
                              {"g0", 0.25, 2, ResultMethod::Gw, 0.93, 1.0, 10000, 7, 0.1}};
  write_results_csv(tmp.path / "r.csv", rows);
  std::ifstream in(tmp.path / "r.csv");
  std::string header, line1, line2;
  std::getline(in, header);
  std::getline(in, line1);
  std::getline(in, line2);
  CHECK(header == "graph_ref,density,p,method,mean_ratio,best_ratio,shots,seed,wall_time");
  CHECK(line1.find("g0,0.25,2,transfer,0.91") == 0);
  CHECK(line2.find("gw") != std::string::npos);
}

TEST_CASE("histogram CSV probabilities sum to 1") {
  TempDir tmp;
  WeightedGraph g = WeightedGraph::complete(3);
  SampleDistribution d;
  d.n_shots = 8;
  d.counts[0] = 2;
  d.counts[1] = 2;
  d.counts[3] = 3;
  d.counts[7] = 1;
  write_histogram_csv(tmp.path / "h.csv", d, g);
  std::ifstream in(tmp.path / "h.csv");
  std::string line;
  std::getline(in, line);  // header
  double total = 0.0;
  int rows = 0;
  while (std::getline(in, line)) {
    const auto comma = line.find(',');
    total += std::stod(line.substr(comma + 1));
    ++rows;
  }
  CHECK(rows == 4);
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("atomic write replaces files without partial states") {
  TempDir tmp;
  const fs::path p = tmp.path / "x.json";
  atomic_write_text(p, "first");
  atomic_write_text(p, "second");
  std::ifstream in(p);
  std::string content;
  std::getline(in, content);
  CHECK(content == "second");
  CHECK_FALSE(fs::exists(tmp.path / "x.json.tmp"));
}
