#include "netelastic/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>
#include <thread>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <fmt/format.h>

#include "netelastic/errors.hpp"
#include "netelastic/metrics.hpp"
#include "routing.hpp"

namespace netelastic {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string trim_copy(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

std::uint64_t to_u64(const std::string& key, const std::string& value) {
  std::size_t used = 0;
  try {
    if (!value.empty() && value[0] != '-') {
      const unsigned long long x = std::stoull(value, &used, 10);
      if (used == value.size()) return x;
    }
  } catch (const std::exception&) {
  }
  throw ParseError(fmt::format("'{}': expected a nonnegative integer, got '{}'", key, value));
}

double to_double(const std::string& key, const std::string& value) {
  std::size_t used = 0;
  try {
    const double x = std::stod(value, &used);
    if (used == value.size() && std::isfinite(x)) return x;
  } catch (const std::exception&) {
  }
  throw ParseError(fmt::format("'{}': expected a number, got '{}'", key, value));
}

bool to_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "yes" || value == "1") return true;
  if (value == "false" || value == "no" || value == "0") return false;
  throw ParseError(fmt::format("'{}': expected true or false, got '{}'", key, value));
}

bool valid_name(const std::string& name) {
  if (name.empty()) return false;
  return std::all_of(name.begin(), name.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
  });
}

std::vector<AttackKind> to_attacks(const std::string& value) {
  std::vector<AttackKind> out;
  std::stringstream in(value);
  std::string item;
  while (std::getline(in, item, ',')) {
    item = trim_copy(item);
    if (item.empty()) continue;
    const AttackKind k = parse_attack_kind(item);
    if (std::find(out.begin(), out.end(), k) != out.end()) {
      throw ParameterError(fmt::format("attack '{}' listed twice", item));
    }
    out.push_back(k);
  }
  if (out.empty()) throw ParameterError("attacks list is empty");
  return out;
}

using Section = boost::property_tree::ptree;

void parse_experiment_section(const Section& sec, ExperimentConfig& cfg) {
  for (const auto& [key, node] : sec) {
    const std::string value = trim_copy(node.data());
    if (key == "output_dir") {
      cfg.output_dir = value;
    } else if (key == "global_seed") {
      cfg.global_seed = to_u64(key, value);
    } else if (key == "model") {
      cfg.model.kind = parse_routing_model(value);
    } else if (key == "tie_break") {
      if (value == "sequential") {
        cfg.model.tie_break.kind = TieBreakKind::sequential;
      } else if (value == "random") {
        cfg.model.tie_break.kind = TieBreakKind::random;
      } else {
        throw ParameterError(fmt::format("unknown tie_break '{}'", value));
      }
    } else if (key == "tie_seed") {
      cfg.model.tie_break.seed = to_u64(key, value);
      cfg.tie_seed_given = true;
    } else if (key == "stop_fraction") {
      cfg.stop_fraction = to_double(key, value);
    } else if (key == "attacks") {
      cfg.attacks = to_attacks(value);
    } else if (key == "recompute") {
      cfg.recompute = to_bool(key, value);
    } else if (key == "batch") {
      cfg.batch = to_u64(key, value);
    } else if (key == "workers") {
      cfg.workers = to_u64(key, value);
    } else if (key == "alpha_tol") {
      cfg.tradeoff.alpha_tol = to_double(key, value);
    } else if (key == "beta_tol") {
      cfg.tradeoff.beta_tol = to_double(key, value);
    } else if (key == "delta_tol") {
      cfg.tradeoff.delta_tol = to_double(key, value);
    } else if (key == "gamma_tol") {
      cfg.tradeoff.gamma_tol = to_double(key, value);
    } else {
      throw ParseError(fmt::format("[experiment]: unknown key '{}'", key));
    }
  }
}

TopologyConfig parse_topology_section(const std::string& name, const Section& sec,
                                      const ExperimentConfig& cfg,
                                      const std::filesystem::path& base_dir) {
  TopologyConfig topo;
  topo.name = name;
  std::optional<std::string> family;
  std::optional<std::string> edge_list;
  GeneratorSpec spec;
  InjectedScores injected;
  std::optional<std::uint64_t> seed;
  std::set<std::string> seen_injected;

  for (const auto& [key, node] : sec) {
    const std::string value = trim_copy(node.data());
    const std::string where = fmt::format("[topology {}] {}", name, key);
    if (key == "family") {
      family = value;
    } else if (key == "edge_list") {
      edge_list = value;
    } else if (key == "n") {
      spec.n = to_u64(where, value);
    } else if (key == "p") {
      spec.p = to_double(where, value);
    } else if (key == "k") {
      spec.k = to_u64(where, value);
    } else if (key == "m") {
      spec.m = to_u64(where, value);
    } else if (key == "rows") {
      spec.rows = to_u64(where, value);
    } else if (key == "cols") {
      spec.cols = to_u64(where, value);
    } else if (key == "diagonals") {
      spec.diagonals = to_bool(where, value);
    } else if (key == "seed") {
      seed = to_u64(where, value);
    } else if (key == "batch") {
      topo.batch = to_u64(where, value);
    } else if (key == "nodes") {
      injected.nodes = to_u64(where, value);
      seen_injected.insert(key);
    } else if (key == "links") {
      injected.links = to_u64(where, value);
      seen_injected.insert(key);
    } else if (key == "elas_r") {
      injected.elas_r = to_double(where, value);
      seen_injected.insert(key);
    } else if (key == "elas_d") {
      injected.elas_d = to_double(where, value);
      seen_injected.insert(key);
    } else if (key == "elas_b") {
      injected.elas_b = to_double(where, value);
      seen_injected.insert(key);
    } else if (key == "heterogeneity") {
      injected.heterogeneity = to_double(where, value);
    } else if (key == "asp") {
      injected.asp = to_double(where, value);
    } else if (key == "diameter") {
      injected.diameter = to_u64(where, value);
    } else {
      throw ParseError(fmt::format("[topology {}]: unknown key '{}'", name, key));
    }
  }

  if (family && edge_list) {
    throw ParameterError(
        fmt::format("[topology {}]: give either family or edge_list, not both", name));
  }
  if (edge_list) {
    std::filesystem::path p = *edge_list;
    if (p.is_relative() && !base_dir.empty()) p = base_dir / p;
    topo.source = EdgeListSource{p};
  } else if (family && *family == "injected") {
    for (const char* required : {"nodes", "links", "elas_r", "elas_d", "elas_b"}) {
      if (!seen_injected.count(required)) {
        throw ParameterError(
            fmt::format("[topology {}]: injected scores need '{}'", name, required));
      }
    }
    topo.source = injected;
  } else if (family) {
    spec.family = parse_generator_family(*family);
    if (spec.family == GeneratorFamily::near_regular && spec.n == 0) {
      spec.n = spec.rows * spec.cols;
    }
    spec.seed = seed.value_or(topology_seed(cfg.global_seed, name));
    spec.validate();
    topo.source = spec;
  } else {
    throw ParameterError(
        fmt::format("[topology {}]: needs a family or an edge_list", name));
  }
  return topo;
}

template <typename Fn>
void parallel_for(std::size_t count, std::size_t workers, Fn&& fn) {
  workers = std::max<std::size_t>(1, std::min(workers, count));
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

struct TopologyState {
  std::optional<Graph> graph;
  std::size_t nodes = 0;
  std::size_t links = 0;
  bool have_counts = false;
  double density = kNaN;
  double diameter = kNaN;
  double asp = kNaN;
  double heterogeneity = kNaN;
  std::uint64_t seed = 0;
  std::string error;
};

struct CellState {
  double elasticity = kNaN;
  std::string curve_csv;
  std::string error;
};

std::string describe(const std::exception& e) {
  if (const auto* err = dynamic_cast<const Error*>(&e)) {
    return fmt::format("{} error: {}", to_string(err->kind()), err->what());
  }
  return fmt::format("error: {}", e.what());
}

void write_file(const std::filesystem::path& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError(fmt::format("cannot write '{}'", path.string()));
  out << body;
  if (!out) throw IoError(fmt::format("failed writing '{}'", path.string()));
}

// Stable descending order with NaN last.
std::vector<std::size_t> descending_order(const std::vector<double>& values) {
  std::vector<std::size_t> idx(values.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    const bool na = std::isnan(values[a]), nb = std::isnan(values[b]);
    if (na != nb) return nb;
    if (na) return false;
    return values[a] > values[b];
  });
  return idx;
}

}  // namespace

void ExperimentConfig::validate() const {
  if (topologies.empty()) throw ParameterError("experiment declares no topologies");
  std::set<std::string> names;
  for (const auto& t : topologies) {
    if (!valid_name(t.name)) {
      throw ParameterError(fmt::format("invalid topology name '{}'", t.name));
    }
    if (!names.insert(t.name).second) {
      throw ParameterError(fmt::format("duplicate topology name '{}'", t.name));
    }
    if (t.batch && *t.batch < 1) throw ParameterError("batch must be at least 1");
  }
  if (attacks.empty()) throw ParameterError("no attacks configured");
  if (batch < 1) throw ParameterError("batch must be at least 1");
  if (!(stop_fraction > 0.0 && stop_fraction <= 1.0)) {
    throw ParameterError(fmt::format("stop_fraction {} outside (0, 1]", stop_fraction));
  }
  if (workers < 1) throw ParameterError("workers must be at least 1");
  tradeoff.validate();
}

std::uint64_t topology_seed(std::uint64_t global_seed, std::string_view name) {
  std::uint64_t h = 0xcbf29ce484222325ull;  // FNV-1a
  for (unsigned char c : name) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return detail::mix_seed(global_seed, h);
}

ExperimentConfig parse_experiment_config(std::string_view text,
                                         const std::filesystem::path& base_dir) {
  Section root;
  try {
    std::istringstream in{std::string(text)};
    boost::property_tree::ini_parser::read_ini(in, root);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw ParseError(fmt::format("config line {}: {}", e.line(), e.message()));
  }

  ExperimentConfig cfg;
  {
    std::istringstream lines{std::string(text)};
    std::string line;
    for (std::size_t no = 1; std::getline(lines, line); ++no) {
      const std::string t = trim_copy(line);
      if (t.empty() || t[0] == ';' || t[0] == '#') continue;
      if (t[0] == '[') break;
      throw ParseError(fmt::format("config line {}: key outside of a section", no));
    }
  }
  for (const auto& [name, sec] : root) {
    if (name == "experiment") parse_experiment_section(sec, cfg);
  }
  if (!cfg.output_dir.empty() && cfg.output_dir.is_relative() && !base_dir.empty()) {
    cfg.output_dir = base_dir / cfg.output_dir;
  }

  for (const auto& [name, sec] : root) {
    if (name == "experiment") continue;
    constexpr std::string_view prefix = "topology ";
    if (name.rfind(prefix, 0) != 0) {
      throw ParseError(fmt::format("unknown section '[{}]'", name));
    }
    const std::string topo_name = trim_copy(std::string_view(name).substr(prefix.size()));
    if (!valid_name(topo_name)) {
      throw ParameterError(fmt::format("invalid topology name '{}'", topo_name));
    }
    cfg.topologies.push_back(parse_topology_section(topo_name, sec, cfg, base_dir));
  }
  cfg.validate();
  return cfg;
}

ExperimentConfig load_experiment_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(fmt::format("cannot open config '{}'", path.string()));
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_experiment_config(buffer.str(), path.parent_path());
}

double pearson(const std::vector<double>& x, const std::vector<double>& y) {
  std::vector<std::pair<double, double>> pts;
  for (std::size_t i = 0; i < std::min(x.size(), y.size()); ++i) {
    if (std::isfinite(x[i]) && std::isfinite(y[i])) pts.emplace_back(x[i], y[i]);
  }
  if (pts.size() < 2) return kNaN;
  double mx = 0.0, my = 0.0;
  for (const auto& [a, b] : pts) {
    mx += a;
    my += b;
  }
  mx /= static_cast<double>(pts.size());
  my /= static_cast<double>(pts.size());
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (const auto& [a, b] : pts) {
    sxy += (a - mx) * (b - my);
    sxx += (a - mx) * (a - mx);
    syy += (b - my) * (b - my);
  }
  if (sxx <= 0.0 || syy <= 0.0) return kNaN;
  return sxy / std::sqrt(sxx * syy);
}

ExperimentReport run_experiment(const ExperimentConfig& config) {
  config.validate();
  const auto& out_dir = config.output_dir;
  std::error_code ec;
  std::filesystem::create_directories(out_dir / "curves", ec);
  if (ec) {
    throw IoError(fmt::format("cannot create output directory '{}': {}",
                              out_dir.string(), ec.message()));
  }

  const std::size_t topo_count = config.topologies.size();
  std::vector<TopologyState> topos(topo_count);

  parallel_for(topo_count, config.workers, [&](std::size_t i) {
    const TopologyConfig& tc = config.topologies[i];
    TopologyState& st = topos[i];
    st.seed = topology_seed(config.global_seed, tc.name);
    try {
      if (const auto* spec = std::get_if<GeneratorSpec>(&tc.source)) {
        st.graph = generate(*spec);
      } else if (const auto* src = std::get_if<EdgeListSource>(&tc.source)) {
        st.graph = load_edge_list_file(src->path.string());
      } else {
        const auto& inj = std::get<InjectedScores>(tc.source);
        st.nodes = inj.nodes;
        st.links = inj.links;
        st.have_counts = true;
        if (inj.nodes >= 2) {
          const double n = static_cast<double>(inj.nodes);
          st.density = 2.0 * static_cast<double>(inj.links) / (n * (n - 1.0));
        }
        if (inj.diameter) st.diameter = static_cast<double>(*inj.diameter);
        if (inj.asp) st.asp = *inj.asp;
        if (inj.heterogeneity) st.heterogeneity = *inj.heterogeneity;
        return;
      }
      st.nodes = st.graph->active_node_count();
      st.links = st.graph->edge_count();
      st.have_counts = true;
      const MetricsReport m = metrics(*st.graph, false);
      st.density = m.density;
      st.diameter = static_cast<double>(m.diameter);
      st.asp = m.asp;
      st.heterogeneity = m.heterogeneity;
    } catch (const std::exception& e) {
      st.error = describe(e);
    }
  });

  const std::size_t attack_count = config.attacks.size();
  std::vector<CellState> cells(topo_count * attack_count);
  parallel_for(cells.size(), config.workers, [&](std::size_t c) {
    const std::size_t ti = c / attack_count;
    const AttackKind kind = config.attacks[c % attack_count];
    const TopologyConfig& tc = config.topologies[ti];
    const TopologyState& st = topos[ti];
    CellState& cell = cells[c];
    if (const auto* inj = std::get_if<InjectedScores>(&tc.source)) {
      cell.elasticity = kind == AttackKind::random           ? inj->elas_r
                        : kind == AttackKind::highest_degree ? inj->elas_d
                                                             : inj->elas_b;
      return;
    }
    if (!st.graph) {
      cell.error = "topology unavailable";
      return;
    }
    AttackStrategy strategy;
    strategy.kind = kind;
    strategy.seed = detail::mix_seed(st.seed, 1);
    strategy.recompute = config.recompute;
    strategy.batch = tc.batch.value_or(config.batch);
    ThroughputModel model = config.model;
    if (!config.tie_seed_given) model.tie_break.seed = detail::mix_seed(st.seed, 2);
    try {
      const ElasticityCurve curve =
          elasticity(*st.graph, strategy, model, config.stop_fraction);
      cell.elasticity = curve.elasticity;
      cell.curve_csv = curve_to_csv(curve, strategy, model);
    } catch (const std::exception& e) {
      cell.error = describe(e);
    }
  });

  // Reduction, in declaration order.
  ExperimentReport report;
  std::string log = "# netelastic run log\n";
  std::string metrics_csv = std::string(kMetricsCsvHeader) + "\n";
  auto cell_value = [&](std::size_t ti, AttackKind kind) {
    for (std::size_t a = 0; a < attack_count; ++a) {
      if (config.attacks[a] == kind) return cells[ti * attack_count + a].elasticity;
    }
    return kNaN;
  };

  for (std::size_t ti = 0; ti < topo_count; ++ti) {
    const TopologyConfig& tc = config.topologies[ti];
    const TopologyState& st = topos[ti];
    if (!st.error.empty()) {
      ++report.failures;
      log += fmt::format("topology {}: {}\n", tc.name, st.error);
      metrics_csv += fmt::format("{},NaN,NaN,NaN,NaN,NaN,NaN\n", tc.name);
    } else {
      log += fmt::format("topology {}: nodes={} links={}\n", tc.name, st.nodes, st.links);
      metrics_csv += fmt::format(
          "{},{},{},{},{},{},{}\n", tc.name, st.nodes, st.links,
          format_number(st.density), format_number(st.diameter), format_number(st.asp),
          format_number(st.heterogeneity));
    }

    for (std::size_t a = 0; a < attack_count; ++a) {
      const CellState& cell = cells[ti * attack_count + a];
      const AttackKind kind = config.attacks[a];
      report.cells.push_back({tc.name, kind, cell.elasticity, cell.error});
      if (!cell.error.empty()) {
        if (st.error.empty()) ++report.failures;
        log += fmt::format("cell {}/{}: NaN ({})\n", tc.name, to_string(kind), cell.error);
        continue;
      }
      log += fmt::format("cell {}/{}: elasticity={}\n", tc.name, to_string(kind),
                         format_number(cell.elasticity));
      if (!cell.curve_csv.empty()) {
        write_file(out_dir / "curves" / fmt::format("{}_{}.csv", tc.name, to_string(kind)),
                   cell.curve_csv);
      }
    }

    RankingRow row;
    row.name = tc.name;
    row.nodes = st.have_counts ? st.nodes : 0;
    row.links = st.have_counts ? st.links : 0;
    row.elas_r = cell_value(ti, AttackKind::random);
    row.elas_d = cell_value(ti, AttackKind::highest_degree);
    row.elas_b = cell_value(ti, AttackKind::highest_betweenness);
    row.re_score = kNaN;
    if (st.have_counts && std::isfinite(row.elas_r) && std::isfinite(row.elas_d) &&
        std::isfinite(row.elas_b)) {
      try {
        row.re_score = tradeoff_re(row.elas_r, row.elas_d, row.elas_b, row.nodes,
                                   row.links, config.tradeoff);
      } catch (const std::exception& e) {
        log += fmt::format("tradeoff {}: NaN ({})\n", tc.name, describe(e));
      }
    }
    report.rows.push_back(row);
  }
  log += fmt::format("failures: {}\n", report.failures);

  const auto& rows = report.rows;
  auto links_of = [&](const RankingRow& r, std::size_t i) {
    return topos[i].have_counts ? static_cast<double>(r.links) : kNaN;
  };
  auto column = [&](auto get) {
    std::vector<double> v;
    for (std::size_t i = 0; i < rows.size(); ++i) v.push_back(get(rows[i], i));
    return v;
  };
  const auto links = column(links_of);
  const auto er = column([](const RankingRow& r, std::size_t) { return r.elas_r; });
  const auto ed = column([](const RankingRow& r, std::size_t) { return r.elas_d; });
  const auto eb = column([](const RankingRow& r, std::size_t) { return r.elas_b; });
  const auto re = column([](const RankingRow& r, std::size_t) { return r.re_score; });

  std::string ranking =
      "rank,links_name,links,elas_r_name,elas_r,elas_d_name,elas_d,elas_b_name,elas_b\n";
  {
    const auto ol = descending_order(links), orr = descending_order(er),
               od = descending_order(ed), ob = descending_order(eb);
    for (std::size_t k = 0; k < rows.size(); ++k) {
      ranking += fmt::format("{},{},{},{},{},{},{},{},{}\n", k + 1, rows[ol[k]].name,
                             format_number(links[ol[k]]), rows[orr[k]].name,
                             format_number(er[orr[k]]), rows[od[k]].name,
                             format_number(ed[od[k]]), rows[ob[k]].name,
                             format_number(eb[ob[k]]));
    }
  }

  std::string tradeoff = "rank,name,nodes,links,elas_r,elas_d,elas_b,re\n";
  {
    const auto order = descending_order(re);
    for (std::size_t k = 0; k < rows.size(); ++k) {
      const RankingRow& r = rows[order[k]];
      const bool counts = topos[order[k]].have_counts;
      tradeoff += fmt::format("{},{},{},{},{},{},{},{}\n", k + 1, r.name,
                              counts ? std::to_string(r.nodes) : "NaN",
                              counts ? std::to_string(r.links) : "NaN",
                              format_number(r.elas_r), format_number(r.elas_d),
                              format_number(r.elas_b), format_number(r.re_score));
    }
  }

  std::string correlations = "metric,elasticity,pearson,samples\n";
  {
    std::vector<double> het, asp;
    for (const auto& st : topos) {
      het.push_back(st.heterogeneity);
      asp.push_back(st.asp);
    }
    const std::pair<const char*, const std::vector<double>*> metrics_cols[] = {
        {"links", &links}, {"heterogeneity", &het}, {"asp", &asp}};
    const std::pair<const char*, const std::vector<double>*> elas_cols[] = {
        {"elas_r", &er}, {"elas_d", &ed}, {"elas_b", &eb}};
    for (const auto& [mname, mv] : metrics_cols) {
      for (const auto& [ename, ev] : elas_cols) {
        std::size_t samples = 0;
        for (std::size_t i = 0; i < rows.size(); ++i) {
          if (std::isfinite((*mv)[i]) && std::isfinite((*ev)[i])) ++samples;
        }
        correlations += fmt::format("{},{},{},{}\n", mname, ename,
                                    format_number(pearson(*mv, *ev)), samples);
      }
    }
  }

  write_file(out_dir / "metrics.csv", metrics_csv);
  write_file(out_dir / "ranking.csv", ranking);
  write_file(out_dir / "tradeoff.csv", tradeoff);
  write_file(out_dir / "correlations.csv", correlations);
  write_file(out_dir / "run.log", log);
  return report;
}

}  // namespace netelastic
