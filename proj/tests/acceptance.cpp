// Acceptance suite: one line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "netelastic/experiment.hpp"
#include "netelastic/generators.hpp"
#include "netelastic/metrics.hpp"
#include "netelastic/robustness.hpp"
#include "netelastic/throughput.hpp"
#include "oracles.hpp"

using namespace netelastic;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  const char* title;
  double time_limit_s;  // 0 = none
  std::function<Outcome()> run;
};

constexpr AttackKind kAllAttacks[] = {AttackKind::random, AttackKind::highest_degree,
                                      AttackKind::highest_betweenness};
constexpr AttackKind kTargeted[] = {AttackKind::highest_degree,
                                    AttackKind::highest_betweenness};
constexpr RoutingModel kAllModels[] = {RoutingModel::dijkstra_homogeneous,
                                       RoutingModel::dijkstra_heterogeneous,
                                       RoutingModel::lp_optimization};

AttackStrategy strategy(AttackKind kind, std::uint64_t seed = 0, std::size_t batch = 1) {
  AttackStrategy s;
  s.kind = kind;
  s.seed = seed;
  s.batch = batch;
  return s;
}

// Indices of the three networks ordered by descending elasticity.
std::vector<int> ranking(const std::vector<double>& e) {
  std::vector<int> idx{0, 1, 2};
  std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) { return e[a] > e[b]; });
  return idx;
}

bool strictly_ranked(const std::vector<double>& e) {
  const auto r = ranking(e);
  return e[r[0]] > e[r[1]] && e[r[1]] > e[r[2]];
}

Outcome mesh_oracle() {
  double worst = 0.0;
  std::size_t step_mismatches = 0;
  for (std::size_t n : {2u, 3u, 10u, 25u, 50u}) {
    const double expect = 1.0 / 3.0 - 1.0 / (6.0 * static_cast<double>(n));
    for (AttackKind kind : kAllAttacks) {
      const ElasticityCurve c = elasticity(gen_mesh(n), strategy(kind, n), {});
      worst = std::max(worst, std::abs(c.elasticity - expect));
      for (std::size_t k = 0; k < c.samples.size(); ++k) {
        const double left = static_cast<double>(n - k);
        const double step =
            left * std::max(0.0, left - 1.0) / (static_cast<double>(n) * (n - 1.0));
        if (c.samples[k].normalized_throughput != step) ++step_mismatches;
      }
    }
  }
  return {worst <= 1e-9 && step_mismatches == 0,
          fmt::format("max |E - (1/3 - 1/6n)| = {:.3g}, per-step mismatches = {}", worst,
                      step_mismatches)};
}

Outcome upper_bound() {
  const double limit = mesh_elasticity_continuous(1000000000000ull);
  const ElasticityCurve c =
      elasticity(gen_mesh(1000), strategy(AttackKind::random, 1, 10), {});
  const bool pass = std::abs(limit - 1.0 / 3.0) <= 1e-9 && std::abs(c.elasticity - 0.3333) <= 5e-3;
  return {pass, fmt::format("continuous E(1e12) = {:.10f}; K_1000 random, batch 10: E = {:.6f}",
                            limit, c.elasticity)};
}

Outcome tradeoff_rows() {
  struct Row {
    const char* name;
    double a, b, c;
    std::uint64_t n, m;
    double re;
  };
  const Row rows[] = {{"HOT 2", 0.1623, 0.0095, 0.0048, 1000, 1049, 0.1519},
                      {"ringcore", 0.1290, 0.0040, 0.0026, 1000, 1000, 0.1351},
                      {"Abilene", 0.1280, 0.0093, 0.0031, 886, 896, 0.1342}};
  bool pass = true;
  std::string detail;
  for (const Row& r : rows) {
    const double re = tradeoff_re(r.a, r.b, r.c, r.n, r.m);
    pass = pass && std::abs(re - r.re) <= 5e-5;
    detail += fmt::format("{}{} = {:.5f} (table {:.4f})", detail.empty() ? "" : ", ", r.name,
                          re, r.re);
  }
  return {pass, detail};
}

Outcome convergence() {
  bool pass = true;
  double worst_ratio = 0.0;
  double worst_from_10 = 0.0;
  for (std::uint64_t n = 2; n <= 100; ++n) {
    const double gap = std::abs(mesh_elasticity_discrete(n, n) - mesh_elasticity_continuous(n));
    const double bound = 1.0 / (6.0 * static_cast<double>(n));
    pass = pass && gap <= bound;
    worst_ratio = std::max(worst_ratio, gap / bound);
    if (n >= 10) worst_from_10 = std::max(worst_from_10, gap);
  }
  pass = pass && worst_from_10 < 0.017;
  return {pass, fmt::format("max gap/(1/6n) = {:.4f}, max gap for n >= 10 = {:.5f}", worst_ratio,
                            worst_from_10)};
}

Outcome generator_counts() {
  const Graph nr = gen_near_regular(31, 32, false);
  const std::size_t nr_diag = gen_near_regular(31, 32, true).edge_count();
  const std::size_t ws = gen_watts_strogatz(1000, 6, 0.3, 1).edge_count();
  const bool pass =
      nr.node_count() == 992 && nr.edge_count() == 1921 && nr_diag == 3781 && ws == 3000;
  return {pass, fmt::format("near-regular N={} M={}, diagonals M={}, Watts-Strogatz M={}",
                            nr.node_count(), nr.edge_count(), nr_diag, ws)};
}

Outcome model_ordering() {
  std::mt19937_64 rng(2024);
  std::size_t lp_below_het = 0, het_below_hom = 0;
  double worst_lp_gap = 0.0;
  for (int i = 0; i < 200; ++i) {
    const std::size_t n = 2 + static_cast<std::size_t>(i % 9);
    const double extra = std::uniform_real_distribution<double>(0.0, 0.7)(rng);
    const Graph g = testing::random_connected_graph(n, extra, rng);
    const ModelComparison c = compare_models(g);
    if (c.lp < c.heterogeneous - 1e-9) {
      ++lp_below_het;
      worst_lp_gap = std::max(worst_lp_gap, c.heterogeneous - c.lp);
    }
    if (c.heterogeneous < c.homogeneous - 1e-9) ++het_below_hom;
  }

  std::size_t rank_mismatches = 0;
  std::string ranks;
  for (AttackKind kind : kTargeted) {
    std::vector<int> reference;
    for (RoutingModel model : kAllModels) {
      std::vector<double> e;
      for (int net = 1; net <= 3; ++net) {
        e.push_back(elasticity(testing::test_network(net), strategy(kind), {model, {}}).elasticity);
      }
      const auto r = ranking(e);
      if (!strictly_ranked(e)) ++rank_mismatches;
      if (reference.empty()) {
        reference = r;
      } else if (r != reference) {
        ++rank_mismatches;
      }
      ranks += fmt::format(" {}/{}: {:.4f} {:.4f} {:.4f};", to_string(kind), to_string(model),
                           e[0], e[1], e[2]);
    }
  }
  const bool pass = lp_below_het == 0 && het_below_hom == 0 && rank_mismatches == 0;
  return {pass, fmt::format("200 graphs: LP < het in {} (worst by {:.4f}), het < hom in {}; "
                            "fixed-network rank mismatches = {};{}",
                            lp_below_het, worst_lp_gap, het_below_hom, rank_mismatches, ranks)};
}

Outcome tie_break_robustness() {
  std::size_t flips = 0;
  std::string detail;
  for (RoutingModel model :
       {RoutingModel::dijkstra_homogeneous, RoutingModel::dijkstra_heterogeneous}) {
    for (AttackKind kind : kTargeted) {
      std::vector<double> seq;
      for (int net = 1; net <= 3; ++net) {
        seq.push_back(elasticity(testing::test_network(net), strategy(kind), {model, {}}).elasticity);
      }
      const auto reference = ranking(seq);
      double deviation = 0.0;
      for (std::uint64_t seed = 0; seed < 100; ++seed) {
        std::vector<double> e;
        for (int net = 1; net <= 3; ++net) {
          e.push_back(elasticity(testing::test_network(net), strategy(kind),
                                 {model, TieBreak::random(seed)})
                          .elasticity);
          deviation += std::abs(e.back() - seq[net - 1]);
        }
        if (ranking(e) != reference || !strictly_ranked(e)) ++flips;
      }
      detail += fmt::format(" {}/{}: mean |dE| = {:.5f};", to_string(model), to_string(kind),
                            deviation / 300.0);
    }
  }
  return {flips == 0, fmt::format("rank changes over 100 seeds = {};{}", flips, detail)};
}

// Calls fn on every connected labelled graph with n nodes.
void for_each_connected_graph(std::size_t n, const std::function<void(const Graph&)>& fn) {
  std::vector<Edge> slots;
  for (NodeId u = 0; u < n; ++u)
    for (NodeId v = u + 1; v < n; ++v) slots.push_back({u, v});
  for (std::uint64_t mask = 0; mask < (1ull << slots.size()); ++mask) {
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < slots.size(); ++i)
      if (mask >> i & 1) edges.push_back(slots[i]);
    const Graph g = Graph::from_edges(n, edges);
    if (connected_components(g).size() == 1) fn(g);
  }
}

Outcome betweenness_oracle() {
  std::size_t graphs = 0, mismatches = 0;
  double worst = 0.0;
  auto compare = [&](const Graph& g) {
    ++graphs;
    const auto fast = betweenness(g);
    const auto slow = testing::brute_force_betweenness(g);
    for (std::size_t v = 0; v < fast.size(); ++v) {
      const double d = std::abs(fast[v] - slow[v]);
      worst = std::max(worst, d);
      if (d > 1e-9) ++mismatches;
    }
  };
  for (std::size_t n = 1; n <= 6; ++n) for_each_connected_graph(n, compare);
  const std::size_t exhaustive = graphs;
  std::mt19937_64 rng(808);
  for (std::size_t n : {7u, 8u}) {
    for (int i = 0; i < 500; ++i) {
      const double extra = std::uniform_real_distribution<double>(0.0, 0.8)(rng);
      compare(testing::random_connected_graph(n, extra, rng));
    }
  }
  return {mismatches == 0,
          fmt::format("{} exhaustive (n <= 6) + {} random (n = 7, 8) graphs, "
                      "max deviation {:.3g}, mismatches {}",
                      exhaustive, graphs - exhaustive, worst, mismatches)};
}

Outcome attack_ordering() {
  bool pass = true;
  std::string detail;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const Graph gi = gen_gilbert(1000, 0.0091, seed);
    const Graph pa = gen_preferential_attachment(1000, 2, seed);
    const double r =
        elasticity(gi, strategy(AttackKind::random, seed, 10), {}).elasticity;
    const double d =
        elasticity(gi, strategy(AttackKind::highest_degree, 0, 10), {}).elasticity;
    const double b =
        elasticity(pa, strategy(AttackKind::highest_betweenness, 0, 10), {}).elasticity;
    pass = pass && r > d && d > b;
    detail += fmt::format(" seed {}: {:.4f} > {:.4f} > {:.4f};", seed, r, d, b);
  }
  return {pass, "R(Gilbert) > D(Gilbert) > B(PA), batch 10:" + detail};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome determinism() {
  const fs::path root = fs::temp_directory_path() / "netelastic_acceptance_determinism";
  fs::remove_all(root);
  const std::string text =
      "[experiment]\nglobal_seed = 20240601\nbatch = 2\noutput_dir = {}\n"
      "[topology gi]\nfamily = gilbert\nn = 60\np = 0.1\n"
      "[topology pa]\nfamily = preferential_attachment\nn = 60\nm = 2\n"
      "[topology ws]\nfamily = watts_strogatz\nn = 60\nk = 4\np = 0.3\n"
      "[topology grid]\nfamily = near_regular\nrows = 6\ncols = 10\n";
  for (const char* run : {"a", "b"}) {
    run_experiment(parse_experiment_config(fmt::format(fmt::runtime(text), run), root));
  }
  std::size_t files = 0, differing = 0;
  for (const auto& entry : fs::recursive_directory_iterator(root / "a")) {
    if (!entry.is_regular_file()) continue;
    ++files;
    const fs::path rel = fs::relative(entry.path(), root / "a");
    if (slurp(entry.path()) != slurp(root / "b" / rel)) ++differing;
  }
  fs::remove_all(root);
  return {files > 0 && differing == 0,
          fmt::format("{} output files compared, {} differ", files, differing)};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "mesh oracle", 10.0, mesh_oracle},
      {2, "upper bound", 300.0, upper_bound},
      {3, "tradeoff reproduction", 1.0, tradeoff_rows},
      {4, "discrete/continuous convergence", 1.0, convergence},
      {5, "generator counts", 0.0, generator_counts},
      {6, "routing model ordering", 300.0, model_ordering},
      {7, "tie-break robustness", 0.0, tie_break_robustness},
      {8, "betweenness oracle", 0.0, betweenness_oracle},
      {9, "attack ordering on Gilbert and PA", 0.0, attack_ordering},
      {10, "determinism", 0.0, determinism},
  };

  int failures = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out = {false, fmt::format("threw: {}", e.what())};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.time_limit_s > 0.0 && secs > c.time_limit_s) {
      out.pass = false;
      out.detail += fmt::format(" [over the {:.0f} s limit]", c.time_limit_s);
    }
    if (!out.pass) ++failures;
    std::printf("criterion %2d %s  %s (%.2f s): %s\n", c.id, out.pass ? "PASS" : "FAIL", c.title,
                secs, out.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
