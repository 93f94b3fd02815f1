#include <catch_amalgamated.hpp>

#include <cmath>
#include <numeric>
#include <optional>
#include <random>

#include "netelastic/errors.hpp"
#include "netelastic/generators.hpp"
#include "netelastic/metrics.hpp"
#include "netelastic/robustness.hpp"
#include "oracles.hpp"

using namespace netelastic;
using Catch::Approx;
using netelastic::testing::path_graph;
using netelastic::testing::star_graph;

namespace {

constexpr AttackKind kAllAttacks[] = {AttackKind::random, AttackKind::highest_degree,
                                      AttackKind::highest_betweenness};

AttackStrategy attack(AttackKind kind, std::uint64_t seed = 0, std::size_t batch = 1) {
  AttackStrategy s;
  s.kind = kind;
  s.seed = seed;
  s.batch = batch;
  return s;
}

ThroughputModel model(RoutingModel kind = RoutingModel::dijkstra_homogeneous) {
  return {kind, {}};
}

}  // namespace

TEST_CASE("attack order examples") {
  CHECK(attack_sequence(star_graph(5), attack(AttackKind::highest_degree)).front() == 0);
  CHECK(attack_sequence(path_graph(3), attack(AttackKind::highest_betweenness)).front() == 1);
  CHECK(attack_sequence(gen_mesh(4), attack(AttackKind::highest_degree)) ==
        std::vector<NodeId>{0, 1, 2, 3});
  // Path 0-1-2-3-4: once the center goes every score is 0 and ids decide.
  CHECK(attack_sequence(path_graph(5), attack(AttackKind::highest_betweenness)) ==
        std::vector<NodeId>{2, 0, 1, 3, 4});
  CHECK(attack_sequence(path_graph(7), attack(AttackKind::highest_betweenness)) ==
        std::vector<NodeId>{3, 1, 5, 0, 2, 4, 6});
  CHECK(attack_sequence(path_graph(5), attack(AttackKind::highest_degree), 2) ==
        std::vector<NodeId>{1, 3});
}

TEST_CASE("static ranking uses the intact graph") {
  // Hub 0 (degree 4) touches hub 1; hub 2 is separate. Both secondary hubs
  // start at degree 3, but removing 0 leaves hub 1 with only two links.
  const Graph g = parse_edge_list("0 1\n0 3\n0 4\n0 5\n1 6\n1 7\n2 8\n2 9\n2 10\n");
  AttackStrategy s = attack(AttackKind::highest_degree);
  s.recompute = false;
  CHECK(attack_sequence(g, s, 3) == std::vector<NodeId>{0, 1, 2});
  s.recompute = true;
  CHECK(attack_sequence(g, s, 3) == std::vector<NodeId>{0, 2, 1});
}

TEST_CASE("random attack is a seeded permutation of the active nodes") {
  Graph g = gen_mesh(30);
  g.remove_node(4);
  const auto a = attack_sequence(g, attack(AttackKind::random, 9));
  CHECK(a == attack_sequence(g, attack(AttackKind::random, 9)));
  CHECK_FALSE(a == attack_sequence(g, attack(AttackKind::random, 10)));
  auto sorted = a;
  std::sort(sorted.begin(), sorted.end());
  CHECK(sorted == g.active_nodes());
  CHECK_THROWS_AS(attack_sequence(g, attack(AttackKind::random, 0, 0)), ParameterError);
}

TEST_CASE("attack names") {
  for (AttackKind k : kAllAttacks) CHECK(parse_attack_kind(to_string(k)) == k);
  CHECK_THROWS_AS(parse_attack_kind("highest_closeness"), ParameterError);
}

TEST_CASE("full removal from K_n matches the discrete mesh formula") {
  for (std::size_t n = 2; n <= 50; ++n) {
    const double expect = 1.0 / 3.0 - 1.0 / (6.0 * static_cast<double>(n));
    CHECK(mesh_elasticity_discrete(n, n) == Approx(expect).margin(1e-12));
    for (AttackKind k : kAllAttacks) {
      const ElasticityCurve c = elasticity(gen_mesh(n), attack(k, n), model());
      CHECK(c.elasticity == Approx(expect).margin(1e-9));
    }
  }
}

TEST_CASE("elasticity examples") {
  const ElasticityCurve k10 = elasticity(gen_mesh(10), attack(AttackKind::random, 3), model());
  CHECK(k10.elasticity == Approx(19.0 / 60.0).margin(1e-9));
  CHECK(k10.alpha == 90.0);
  CHECK(k10.samples.size() == 11);
  CHECK(elasticity(gen_mesh(3), attack(AttackKind::highest_degree), model()).elasticity ==
        Approx(5.0 / 18.0).margin(1e-9));

  const ElasticityCurve star =
      elasticity(star_graph(9), attack(AttackKind::highest_degree), model());
  CHECK(star.samples[1].normalized_throughput == 0.0);
  CHECK(star.elasticity == Approx(0.05).margin(1e-12));
  CHECK(star.removed.front() == 0);
}

TEST_CASE("curve shape invariants") {
  std::mt19937_64 rng(4);
  for (int i = 0; i < 30; ++i) {
    const Graph g = testing::random_connected_graph(3 + i % 10, 0.3, rng);
    for (AttackKind k : kAllAttacks) {
      for (std::size_t batch : {1u, 3u}) {
        const ElasticityCurve c = elasticity(g, attack(k, i, batch), model());
        REQUIRE(c.samples.front().fraction_removed == 0.0);
        REQUIRE(c.samples.front().normalized_throughput == 1.0);
        CHECK(c.samples.back().fraction_removed == 1.0);
        CHECK(c.samples.back().normalized_throughput == 0.0);
        for (std::size_t j = 1; j < c.samples.size(); ++j) {
          CHECK(c.samples[j].fraction_removed > c.samples[j - 1].fraction_removed);
          CHECK(c.samples[j].normalized_throughput >= 0.0);
        }
        CHECK(c.elasticity == trapezoid_area(c.samples));
        CHECK(c.elasticity >= 0.0);
        CHECK(c.removed.size() == g.node_count());
      }
    }
  }
}

TEST_CASE("elasticity of cliques stays under the mesh ceiling") {
  for (std::size_t n = 2; n <= 30; ++n) {
    const double ceiling = 1.0 / 3.0 + 1.0 / (2.0 * static_cast<double>(n));
    for (AttackKind k : kAllAttacks) {
      const ElasticityCurve c = elasticity(gen_mesh(n), attack(k, n), model());
      CHECK(c.elasticity <= ceiling);
      for (const CurveSample& s : c.samples) CHECK(s.normalized_throughput <= 1.0);
    }
  }
}

TEST_CASE("bottlenecked graphs can exceed the mesh ceiling") {
  // A star's throughput is limited by one uplink, so it falls linearly in the
  // number of surviving leaves instead of quadratically like a clique.
  const Graph star = star_graph(9);
  double worst = 0.0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const ElasticityCurve c = elasticity(star, attack(AttackKind::random, seed), model());
    for (const CurveSample& s : c.samples) CHECK(s.normalized_throughput <= 1.0);
    worst = std::max(worst, c.elasticity);
  }
  CHECK(worst > 1.0 / 3.0 + 1.0 / 20.0);

  // Cutting the middle of a path relieves its bottleneck arcs faster than it
  // disconnects pairs, so the curve rises above its starting value.
  const ElasticityCurve p =
      elasticity(path_graph(8), attack(AttackKind::highest_betweenness), model());
  CHECK(p.samples[1].normalized_throughput > 1.0);
  CHECK(p.elasticity > 1.0 / 3.0 + 1.0 / 16.0);
}

TEST_CASE("batched removal spaces samples by the batch size") {
  const ElasticityCurve c = elasticity(gen_mesh(10), attack(AttackKind::random, 1, 4), model());
  REQUIRE(c.samples.size() == 4);
  CHECK(c.samples[1].fraction_removed == Approx(0.4));
  CHECK(c.samples[2].fraction_removed == Approx(0.8));
  CHECK(c.samples[3].fraction_removed == Approx(1.0));
  CHECK(c.samples[1].normalized_throughput == Approx(30.0 / 90.0));
  // Linear interpolation between coarse samples overestimates a convex curve.
  CHECK(c.elasticity > 19.0 / 60.0);
}

TEST_CASE("stop fraction truncates the curve") {
  const ElasticityCurve c =
      elasticity(gen_mesh(10), attack(AttackKind::random, 1), model(), 0.35);
  REQUIRE(c.samples.size() == 5);
  CHECK(c.samples.back().fraction_removed == Approx(0.4));
  CHECK(c.elasticity == Approx(mesh_elasticity_discrete(10, 4)).margin(1e-12));
  CHECK_THROWS_AS(elasticity(gen_mesh(4), attack(AttackKind::random), model(), 0.0),
                  ParameterError);
  CHECK_THROWS_AS(elasticity(gen_mesh(4), attack(AttackKind::random), model(), 1.5),
                  ParameterError);
}

TEST_CASE("elasticity needs positive starting throughput") {
  CHECK_THROWS_AS(elasticity(Graph(5), attack(AttackKind::random), model()), ComputeError);
  CHECK_THROWS_AS(elasticity(Graph(), attack(AttackKind::random), model()), ComputeError);
  // A disconnected start is fine as long as something flows.
  const Graph g = parse_edge_list("# nodes 5\n0 1\n2 3\n");
  CHECK(elasticity(g, attack(AttackKind::highest_degree), model()).alpha == 4.0);
}

TEST_CASE("elasticity runs under every routing model") {
  const Graph g = testing::test_network(2);
  for (RoutingModel kind : {RoutingModel::dijkstra_heterogeneous, RoutingModel::lp_optimization}) {
    const ElasticityCurve c = elasticity(g, attack(AttackKind::highest_degree), model(kind));
    CHECK(c.elasticity > 0.0);
    CHECK(c.elasticity < 1.0 / 3.0);
  }
}

TEST_CASE("discrete mesh elasticity against the trapezoid sum") {
  for (std::uint64_t n = 2; n <= 60; ++n) {
    for (std::uint64_t zeta = 1; zeta <= n; ++zeta) {
      CHECK(mesh_elasticity_discrete(n, zeta) ==
            Approx(testing::mesh_trapezoid_oracle(n, zeta)).margin(1e-12));
    }
  }
  CHECK(mesh_elasticity_discrete(2, 2) == Approx(0.25));
  CHECK(mesh_elasticity_discrete(3, 3) == Approx(5.0 / 18.0));
  CHECK(mesh_elasticity_discrete(1000000000ull, 1000000000ull) == Approx(1.0 / 3.0));
  CHECK_THROWS_AS(mesh_elasticity_discrete(10, 0), ParameterError);
  CHECK_THROWS_AS(mesh_elasticity_discrete(10, 11), ParameterError);
  CHECK_THROWS_AS(mesh_elasticity_discrete(1, 1), ParameterError);
}

TEST_CASE("continuous mesh elasticity") {
  CHECK(mesh_elasticity_continuous(10) == Approx(0.315).margin(1e-12));
  CHECK(mesh_elasticity_continuous(20, 20) == Approx(0.324583).margin(5e-7));
  CHECK(mesh_elasticity_continuous(1000000000ull) == Approx(1.0 / 3.0).margin(1e-9));
  // Partial removal integrates N(t) = (N-k)(N-k-1) from 0 to zeta.
  for (std::uint64_t n : {5ull, 20ull, 100ull}) {
    for (std::uint64_t zeta = 1; zeta < n; ++zeta) {
      const double nn = static_cast<double>(n);
      const double z = static_cast<double>(zeta);
      const double integral =
          (nn * (nn - 1) * z - (2 * nn - 1) * z * z / 2 + z * z * z / 3) /
          (nn * nn * (nn - 1));
      CHECK(mesh_elasticity_continuous(n, zeta) == Approx(integral).epsilon(1e-12));
      CHECK(mesh_elasticity_continuous(n, zeta) <= 1.0 / 3.0);
    }
  }
  CHECK_THROWS_AS(mesh_elasticity_continuous(10, 11), ParameterError);
  CHECK_THROWS_AS(mesh_elasticity_continuous(1), ParameterError);
}

TEST_CASE("discrete and continuous mesh values converge") {
  for (std::uint64_t n = 2; n <= 100; ++n) {
    const double gap =
        std::abs(mesh_elasticity_discrete(n, n) - mesh_elasticity_continuous(n));
    CHECK(gap <= 1.0 / (6.0 * static_cast<double>(n)));
    if (n >= 10) CHECK(gap < 0.017);
  }
}

TEST_CASE("mesh throughput") {
  CHECK(mesh_throughput(10, 0) == 1.0);
  CHECK(mesh_throughput(10, 9) == 0.0);
  CHECK(mesh_throughput(10, 10) == 0.0);
  CHECK(mesh_throughput(10, 3) == Approx(42.0 / 90.0));
  CHECK_THROWS_AS(mesh_throughput(10, 11), ParameterError);
}

TEST_CASE("tradeoff score reproduces published rankings") {
  CHECK(tradeoff_re(0.1623, 0.0095, 0.0048, 1000, 1049) == Approx(0.1519).margin(5e-5));
  CHECK(tradeoff_re(0.1290, 0.0040, 0.0026, 1000, 1000) == Approx(0.1351).margin(5e-5));
  CHECK(tradeoff_re(0.1280, 0.0093, 0.0031, 886, 896) == Approx(0.1342).margin(5e-5));
  CHECK(tradeoff_re(0.0, 0.0, 0.0, 50, 49) == 0.0);
}

TEST_CASE("tradeoff penalty") {
  CHECK(density_penalty(10, 9) == 0.0);
  CHECK(density_penalty(10, 5) == 0.0);
  CHECK(density_penalty(10, 19) == Approx(1.0 - std::exp(-0.5)));
  CHECK(density_penalty(1000, 499500) == Approx(1.0).margin(1e-100));
  TradeoffParams w;
  w.alpha_tol = 0.5;
  w.beta_tol = 0.0;
  w.delta_tol = 0.25;
  w.gamma_tol = 0.1;
  CHECK(tradeoff_re(0.3, 0.2, 0.1, 10, 19, w) ==
        Approx(0.15 + 0.025 - 0.1 * (1.0 - std::exp(-0.5))));
}

TEST_CASE("tradeoff is nonincreasing in the link count") {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> e(0.0, 1.0 / 3.0);
  for (int i = 0; i < 50; ++i) {
    const std::uint64_t n = 2 + rng() % 200;
    const double a = e(rng), b = e(rng), c = e(rng);
    double last = tradeoff_re(a, b, c, n, 0);
    for (std::uint64_t m = 1; m <= n * (n - 1) / 2; m += 1 + m / 3) {
      const double re = tradeoff_re(a, b, c, n, m);
      CHECK(re <= last);
      last = re;
    }
  }
}

TEST_CASE("tradeoff validation") {
  TradeoffParams bad;
  bad.gamma_tol = 1.5;
  CHECK_THROWS_AS(tradeoff_re(0.1, 0.1, 0.1, 10, 9, bad), ParameterError);
  CHECK_THROWS_AS(tradeoff_re(-0.1, 0.1, 0.1, 10, 9), ParameterError);
  CHECK_THROWS_AS(tradeoff_re(std::nan(""), 0.1, 0.1, 10, 9), ParameterError);
  CHECK_NOTHROW(tradeoff_re(0.5, 0.1, 0.1, 10, 9));
  CHECK_THROWS_AS(tradeoff_re(0.1, 0.1, 0.1, 1, 0), ParameterError);
}

TEST_CASE("targeted elasticity is invariant under relabelling when no ties occur") {
  // Trees have unique shortest paths; the filter keeps attack orders whose
  // every pick is a strict maximum, so the tie rule plays no part.
  // Returns how many picks were strict maxima, or nothing on a tie.
  auto tie_free = [](Graph g, AttackKind kind) -> std::optional<std::size_t> {
    std::size_t picks = 0;
    for (; g.edge_count() > 0; ++picks) {
      std::vector<double> score(g.node_count(), -1.0);
      const auto b = betweenness(g);
      for (NodeId v : g.active_nodes()) {
        score[v] = kind == AttackKind::highest_degree ? static_cast<double>(g.degree(v)) : b[v];
      }
      auto top = std::max_element(score.begin(), score.end());
      if (std::count_if(score.begin(), score.end(),
                        [&](double s) { return std::abs(s - *top) < 1e-9; }) > 1) {
        return std::nullopt;
      }
      g.remove_node(static_cast<NodeId>(top - score.begin()));
    }
    return picks;
  };
  std::mt19937_64 rng(15);
  int checked = 0;
  for (int i = 0; i < 400 && checked < 40; ++i) {
    const Graph g = testing::random_connected_graph(5 + i % 8, 0.0, rng);
    std::vector<NodeId> perm(g.node_count());
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    const Graph h = relabel(g, perm);
    for (AttackKind k : {AttackKind::highest_degree, AttackKind::highest_betweenness}) {
      const auto strict = tie_free(g, k);
      if (!strict) continue;
      ++checked;
      const ElasticityCurve a = elasticity(g, attack(k), model());
      const ElasticityCurve b = elasticity(h, attack(k), model());
      CHECK(a.elasticity == Approx(b.elasticity).margin(1e-12));
      for (std::size_t j = 0; j < *strict; ++j) CHECK(perm[a.removed[j]] == b.removed[j]);
    }
  }
  CHECK(checked >= 20);
}

TEST_CASE("random attacks hurt scale-free graphs less than targeted ones") {
  double r = 0.0, d = 0.0, b = 0.0;
  constexpr int kSeeds = 30;
  for (int seed = 0; seed < kSeeds; ++seed) {
    const Graph g = gen_preferential_attachment(60, 2, 1000 + seed);
    r += elasticity(g, attack(AttackKind::random, seed), model()).elasticity;
    d += elasticity(g, attack(AttackKind::highest_degree), model()).elasticity;
    b += elasticity(g, attack(AttackKind::highest_betweenness), model()).elasticity;
  }
  CHECK(r / kSeeds >= d / kSeeds);
  CHECK(r / kSeeds >= b / kSeeds);
}

TEST_CASE("curve csv") {
  const AttackStrategy s = attack(AttackKind::random, 5);
  const std::string csv = curve_to_csv(elasticity(gen_mesh(3), s, model()), s, model());
  CHECK(csv ==
        "fraction_removed,normalized_throughput\n"
        "0,1\n0.3333333,0.3333333\n0.6666667,0\n1,0\n"
        "# elasticity=0.2777778 alpha=6 strategy=random model=dijkstra_homogeneous seed=5\n");
}
