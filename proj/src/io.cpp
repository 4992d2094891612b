#include "qmc/io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "qmc/errors.hpp"

namespace qmc {

using nlohmann::json;

namespace {

json parse_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path.string() + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw DataError("malformed JSON in '" + path.string() + "' at byte " +
                    std::to_string(e.byte) + ": " + e.what());
  }
}

void check_schema(const json& j, const std::filesystem::path& path) {
  if (!j.is_object() || !j.contains("schema_version"))
    throw DataError("'" + path.string() + "': missing schema_version field");
  const int v = j.at("schema_version").get<int>();
  if (v != kSchemaVersion)
    throw DataError("'" + path.string() + "': expected schema_version " +
                    std::to_string(kSchemaVersion) + ", found " + std::to_string(v));
}

void dump_atomic(const std::filesystem::path& path, const json& j) {
  atomic_write_text(path, j.dump(2) + "\n");
}

json graph_to_json(const WeightedGraph& g) {
  json edges = json::array();
  for (const auto& e : g.edges()) edges.push_back({e.u, e.v, e.w});
  return json{{"schema_version", kSchemaVersion}, {"n", g.num_vertices()}, {"edges", edges}};
}

WeightedGraph graph_from_json(const json& j, const std::string& where) {
  try {
    const int n = j.at("n").get<int>();
    std::vector<Edge> edges;
    for (const auto& e : j.at("edges")) {
      if (!e.is_array() || e.size() != 3)
        throw DataError(where + ": each edge must be [i, j, w]");
      edges.push_back({e[0].get<int>(), e[1].get<int>(), e[2].get<double>()});
    }
    return WeightedGraph(n, std::move(edges));
  } catch (const json::exception& e) {
    throw DataError(where + ": " + e.what());
  }
}

}  // namespace

void atomic_write_text(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw DataError("cannot write '" + tmp.string() + "'");
    out << text;
    if (!out.good()) throw DataError("short write to '" + tmp.string() + "'");
  }
  std::filesystem::rename(tmp, path);
}

WeightedGraph read_graph(const std::filesystem::path& path) {
  const json j = parse_file(path);
  check_schema(j, path);
  return graph_from_json(j, path.string());
}

void write_graph(const std::filesystem::path& path, const WeightedGraph& g) {
  dump_atomic(path, graph_to_json(g));
}

QaoaParams read_params(const std::filesystem::path& path) {
  const json j = parse_file(path);
  check_schema(j, path);
  try {
    QaoaParams p;
    p.p = j.at("p").get<int>();
    p.gamma = j.at("gamma").get<std::vector<double>>();
    p.beta = j.at("beta").get<std::vector<double>>();
    p.validate();
    return p;
  } catch (const json::exception& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

void write_params(const std::filesystem::path& path, const QaoaParams& params) {
  dump_atomic(path, json{{"schema_version", kSchemaVersion},
                         {"p", params.p},
                         {"gamma", params.gamma},
                         {"beta", params.beta}});
}

namespace {

json record_to_json(const ParamRecord& r) {
  return json{{"n", r.n},         {"density", r.density},       {"p", r.p},
              {"gamma", r.gamma}, {"beta", r.beta},             {"seed_ratio", r.seed_ratio},
              {"graph_ref", r.graph_ref}};
}

ParamRecord record_from_json(const json& j) {
  ParamRecord r;
  r.n = j.at("n").get<int>();
  r.density = j.at("density").get<double>();
  r.p = j.at("p").get<int>();
  r.gamma = j.at("gamma").get<std::vector<double>>();
  r.beta = j.at("beta").get<std::vector<double>>();
  r.seed_ratio = j.at("seed_ratio").get<double>();
  r.graph_ref = j.at("graph_ref").get<std::string>();
  return r;
}

json table_to_json(const MappingTable& t) {
  return json{{"p", t.p},
              {"n_s", t.n_s},
              {"n_t", t.n_t},
              {"row_refs", t.row_refs},
              {"row_densities", t.row_densities},
              {"col_refs", t.col_refs},
              {"col_densities", t.col_densities},
              {"col_optima", t.col_optima},
              {"entries", t.entries},
              {"entries_raw", t.entries_raw}};
}

MappingTable table_from_json(const json& j) {
  MappingTable t;
  t.p = j.at("p").get<int>();
  t.n_s = j.at("n_s").get<int>();
  t.n_t = j.at("n_t").get<int>();
  t.row_refs = j.at("row_refs").get<std::vector<std::string>>();
  t.row_densities = j.at("row_densities").get<std::vector<double>>();
  t.col_refs = j.at("col_refs").get<std::vector<std::string>>();
  t.col_densities = j.at("col_densities").get<std::vector<double>>();
  t.col_optima = j.at("col_optima").get<std::vector<double>>();
  t.entries = j.at("entries").get<std::vector<std::vector<double>>>();
  t.entries_raw = j.at("entries_raw").get<std::vector<std::vector<double>>>();
  return t;
}

}  // namespace

TransferDatabase read_database(const std::filesystem::path& path) {
  const json j = parse_file(path);
  check_schema(j, path);
  try {
    TransferDatabase db;
    for (const auto& r : j.at("records")) db.records.push_back(record_from_json(r));
    for (const auto& t : j.at("tables")) db.tables.push_back(table_from_json(t));
    if (j.contains("graphs"))
      for (const auto& [ref, gj] : j.at("graphs").items())
        db.graphs.emplace(ref, graph_from_json(gj, path.string() + ":graphs." + ref));
    if (j.contains("journal"))
      for (const auto& e : j.at("journal"))
        db.journal.push_back({e.at("timestamp").get<std::string>(),
                              e.at("action").get<std::string>(),
                              e.at("detail").get<std::string>()});
    return db;
  } catch (const json::exception& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

void write_database(const std::filesystem::path& path, const TransferDatabase& db) {
  json records = json::array();
  for (const auto& r : db.records) records.push_back(record_to_json(r));
  json tables = json::array();
  for (const auto& t : db.tables) tables.push_back(table_to_json(t));
  json graphs = json::object();
  for (const auto& [ref, g] : db.graphs) graphs[ref] = graph_to_json(g);
  json journal = json::array();
  for (const auto& e : db.journal)
    journal.push_back(
        {{"timestamp", e.timestamp}, {"action", e.action}, {"detail", e.detail}});
  dump_atomic(path, json{{"schema_version", kSchemaVersion},
                         {"records", records},
                         {"tables", tables},
                         {"graphs", graphs},
                         {"journal", journal}});
}

PowerFlowCase read_power_flow_case(const std::filesystem::path& path) {
  const json j = parse_file(path);
  check_schema(j, path);
  try {
    PowerFlowCase c;
    c.base_mva = j.at("base_mva").get<double>();
    for (const auto& b : j.at("buses")) {
      Bus bus;
      bus.id = b.at("id").get<int>();
      const std::string kind = b.at("kind").get<std::string>();
      if (kind == "slack")
        bus.kind = BusKind::Slack;
      else if (kind == "pv")
        bus.kind = BusKind::PV;
      else if (kind == "pq")
        bus.kind = BusKind::PQ;
      else
        throw DataError(path.string() + ": unknown bus kind '" + kind + "'");
      bus.P = b.value("P", 0.0);
      bus.Q = b.value("Q", 0.0);
      bus.Vm = b.value("Vm", 1.0);
      bus.Va = b.value("Va", 0.0);
      c.buses.push_back(bus);
    }
    for (const auto& br : j.at("branches")) {
      Branch branch;
      branch.from = br.at("from").get<int>();
      branch.to = br.at("to").get<int>();
      branch.r = br.at("r").get<double>();
      branch.x = br.at("x").get<double>();
      branch.b_sh = br.value("b_sh", 0.0);
      c.branches.push_back(branch);
    }
    c.validate();
    return c;
  } catch (const json::exception& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

void write_power_flow_case(const std::filesystem::path& path, const PowerFlowCase& pf_case) {
  json buses = json::array();
  for (const auto& b : pf_case.buses) {
    const char* kind = b.kind == BusKind::Slack ? "slack" : b.kind == BusKind::PV ? "pv" : "pq";
    buses.push_back({{"id", b.id},
                     {"kind", kind},
                     {"P", b.P},
                     {"Q", b.Q},
                     {"Vm", b.Vm},
                     {"Va", b.Va}});
  }
  json branches = json::array();
  for (const auto& br : pf_case.branches)
    branches.push_back(
        {{"from", br.from}, {"to", br.to}, {"r", br.r}, {"x", br.x}, {"b_sh", br.b_sh}});
  dump_atomic(path, json{{"schema_version", kSchemaVersion},
                         {"base_mva", pf_case.base_mva},
                         {"buses", buses},
                         {"branches", branches}});
}

PowerFlowCase apply_scenario(const PowerFlowCase& base, const std::filesystem::path& overrides) {
  const json j = parse_file(overrides);
  check_schema(j, overrides);
  PowerFlowCase out = base;
  try {
    for (const auto& s : j.at("set")) {
      const int id = s.at("id").get<int>();
      Bus& bus = out.buses[out.bus_index(id)];
      if (s.contains("P")) bus.P = s.at("P").get<double>();
      if (s.contains("Q")) bus.Q = s.at("Q").get<double>();
      if (s.contains("Vm")) bus.Vm = s.at("Vm").get<double>();
    }
  } catch (const json::exception& e) {
    throw DataError(overrides.string() + ": " + e.what());
  }
  return out;
}

std::string to_string(ResultMethod m) {
  switch (m) {
    case ResultMethod::Transfer:
      return "transfer";
    case ResultMethod::TransferRefine:
      return "transfer+refine";
    case ResultMethod::Random:
      return "random";
    case ResultMethod::Gw:
      return "gw";
    case ResultMethod::Noisy:
      return "noisy";
  }
  return "?";
}

namespace {

std::string fmt_double(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

}  // namespace

void write_results_csv(const std::filesystem::path& path, const std::vector<ResultRow>& rows) {
  std::ostringstream os;
  os << "graph_ref,density,p,method,mean_ratio,best_ratio,shots,seed,wall_time\n";
  for (const auto& r : rows) {
    os << r.graph_ref << ',' << fmt_double(r.density) << ',' << r.p << ',' << to_string(r.method)
       << ',' << fmt_double(r.mean_ratio) << ',' << fmt_double(r.best_ratio) << ',' << r.shots
       << ',' << r.seed << ',' << fmt_double(r.wall_time) << '\n';
  }
  atomic_write_text(path, os.str());
}

void write_histogram_csv(const std::filesystem::path& path, const SampleDistribution& dist,
                         const WeightedGraph& g) {
  std::ostringstream os;
  os << "value,probability\n";
  for (const auto& [k, cnt] : dist.counts)
    os << fmt_double(cut_value_bits(g, k)) << ','
       << fmt_double(static_cast<double>(cnt) / static_cast<double>(dist.n_shots)) << '\n';
  atomic_write_text(path, os.str());
}

void write_histogram_csv(const std::filesystem::path& path, const RatioDistribution& dist) {
  std::ostringstream os;
  os << "bin_low,bin_high,probability\n";
  const double total = static_cast<double>(dist.samples.size());
  for (std::size_t b = 0; b < dist.histogram.size(); ++b) {
    if (dist.histogram[b] == 0) continue;
    os << fmt_double(0.01 * b) << ',' << fmt_double(0.01 * (b + 1)) << ','
       << fmt_double(static_cast<double>(dist.histogram[b]) / total) << '\n';
  }
  atomic_write_text(path, os.str());
}

}  // namespace qmc
