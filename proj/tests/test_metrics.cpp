#include <catch2/catch_amalgamated.hpp>

#include "migsim/migsim.hpp"
#include "oracles.hpp"

using namespace migsim;

namespace {

SubstrateNetwork path3_hops() {
  SubstrateNetwork net;
  net.nodes.resize(3);
  net.edges.push_back({0, 1, 1.0, 1.0});
  net.edges.push_back({1, 2, 1.0, 1.0});
  finalize_network(net);
  return net;
}

}  // namespace

TEST_CASE("access matrix basics") {
  SubstrateNetwork single;
  single.nodes.resize(1);
  finalize_network(single);
  const auto acc1 = access_cost_matrix(single, AccessMetric::hops);
  CHECK(acc1(0, 0) == 0.0);

  const auto path = path3_hops();
  const auto acc = access_cost_matrix(path, AccessMetric::hops);
  CHECK(acc(0, 2) == 2.0);
  CHECK(acc(2, 0) == 2.0);
}

TEST_CASE("latency metric takes the cheaper two-hop route") {
  SubstrateNetwork tri;
  tri.nodes.resize(3);
  tri.edges.push_back({0, 1, 1.0, 1.0});
  tri.edges.push_back({1, 2, 1.0, 1.0});
  tri.edges.push_back({0, 2, 1.0, 3.0});
  finalize_network(tri);
  const auto acc = access_cost_matrix(tri, AccessMetric::latency);
  CHECK(acc(0, 2) == oracle::simple_path_min_access(tri, AccessMetric::latency, 0, 2));
  CHECK(acc(0, 2) == 2.0);
}

TEST_CASE("access matrix is a metric") {
  migsim::Rng rng(11);
  for (int iter = 0; iter < 3; ++iter) {
    const auto net = oracle::random_connected_graph(rng, 40, 0.1, {1.0, 2.0});
    for (AccessMetric metric : {AccessMetric::hops, AccessMetric::latency}) {
      const auto acc = access_cost_matrix(net, metric);
      const int n = net.node_count();
      for (int u = 0; u < n; ++u) {
        CHECK(acc(u, u) == 0.0);
        for (int v = 0; v < n; ++v) CHECK(acc(u, v) == acc(v, u));
      }
      for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v)
          for (int w = 0; w < n; ++w)
            CHECK(acc(u, w) <= acc(u, v) + acc(v, w) + 1e-12);
    }
  }
}

TEST_CASE("migration cost of staying put is zero") {
  const auto net = path3_hops();
  CostModel cm;
  cm.server_size = 16.0;
  cm.beta = 16.0;
  const auto mig = migration_cost_table(net, cm);
  for (int v = 0; v < 3; ++v) CHECK(mig.cost(v, v) == 0.0);
}

TEST_CASE("two-node migration is size over bandwidth") {
  SubstrateNetwork net;
  net.nodes.resize(2);
  net.edges.push_back({0, 1, 2.0, 1.0});
  finalize_network(net);
  CostModel cm;
  cm.server_size = 16.0;
  cm.beta = 8.0;
  const auto mig = migration_cost_table(net, cm);
  CHECK(mig.cost(0, 1) == 16.0 / 2.0);
  CHECK(mig.crossings(0, 1) == 0);
}

TEST_CASE("boundary crossings are charged pi each") {
  // A--B in provider 1, C in provider 2; bottleneck on B--C.
  SubstrateNetwork net;
  net.nodes.resize(3);
  net.nodes[0].pip = 1;
  net.nodes[1].pip = 1;
  net.nodes[2].pip = 2;
  net.edges.push_back({0, 1, 4.0, 1.0});
  net.edges.push_back({1, 2, 2.0, 1.0});
  finalize_network(net);
  CostModel cm;
  cm.server_size = 16.0;
  cm.beta = 4.0;
  cm.pi = 3.0;
  const auto mig = migration_cost_table(net, cm);
  CHECK(mig.cost(0, 2) == 16.0 / 2.0 + 1 * 3.0);
  CHECK(mig.cost(0, 2) == oracle::simple_path_min_migration(net, cm, 0, 2));
  CHECK(mig.crossings(0, 2) == 1);
}

TEST_CASE("a high-bandwidth detour beats a direct bottleneck") {
  // Direct A--B at bandwidth 1 versus a three-hop route with bottleneck 8;
  // one boundary either way.
  SubstrateNetwork net;
  net.nodes.resize(4);
  net.nodes[0].pip = 0;
  net.nodes[1].pip = 0;
  net.nodes[2].pip = 1;
  net.nodes[3].pip = 1;
  net.edges.push_back({0, 3, 1.0, 1.0});
  net.edges.push_back({0, 1, 8.0, 1.0});
  net.edges.push_back({1, 2, 8.0, 1.0});
  net.edges.push_back({2, 3, 8.0, 1.0});
  finalize_network(net);
  CostModel cm;
  cm.server_size = 16.0;
  cm.beta = 4.0;
  cm.pi = 3.0;
  const auto mig = migration_cost_table(net, cm);
  CHECK(mig.cost(0, 3) == 5.0);  // 16/8 + pi, not 16/1 + pi
  CHECK(mig.cost(0, 3) == oracle::simple_path_min_migration(net, cm, 0, 3));
}

TEST_CASE("optimal migration table equals simple-path enumeration") {
  migsim::Rng rng(21);
  for (int iter = 0; iter < 10; ++iter) {
    const int n = 3 + static_cast<int>(rng.index(6));
    const int pips = 1 + static_cast<int>(rng.index(3));
    const auto net =
        oracle::random_connected_graph(rng, n, 0.35, {1.0, 2.0, 8.0}, pips);
    CostModel cm;
    cm.server_size = 16.0;
    cm.beta = 4.0;
    cm.pi = iter % 2 == 0 ? 3.0 : 0.0;
    const auto mig = migration_cost_table(net, cm);
    for (int u = 0; u < n; ++u)
      for (int v = 0; v < n; ++v) {
        if (u == v) {
          CHECK(mig.cost(u, v) == 0.0);
          continue;
        }
        CHECK(mig.cost(u, v) == oracle::simple_path_min_migration(net, cm, u, v));
        CHECK(mig.cost(u, v) == mig.cost(v, u));
      }
  }
}

TEST_CASE("shortest-latency mode pays the metric path's bottleneck") {
  // The latency-shortest route 0--1 has bandwidth 1; the optimizer would take
  // the roomy detour through 2.
  SubstrateNetwork net;
  net.nodes.resize(3);
  net.edges.push_back({0, 1, 1.0, 1.0});
  net.edges.push_back({0, 2, 100.0, 5.0});
  net.edges.push_back({2, 1, 100.0, 5.0});
  finalize_network(net);
  CostModel cm;
  cm.server_size = 16.0;
  cm.beta = 1.0;
  cm.access_metric = AccessMetric::latency;

  cm.path_mode = MigrationPathMode::shortest_latency;
  const auto direct = migration_cost_table(net, cm);
  CHECK(direct.cost(0, 1) == 16.0);

  cm.path_mode = MigrationPathMode::optimal;
  const auto optimal = migration_cost_table(net, cm);
  CHECK(optimal.cost(0, 1) == 16.0 / 100.0);
}

TEST_CASE("one-shot migration never loses to a split") {
  migsim::Rng rng(31);
  for (int iter = 0; iter < 20; ++iter) {
    const auto net =
        oracle::random_connected_graph(rng, 10, 0.25, {1.0, 2.0, 8.0}, 3);
    CostModel cm;
    cm.server_size = 16.0;
    cm.beta = 4.0;
    cm.pi = 3.0;
    const auto path = oracle::random_simple_path(rng, net, 6);
    const double whole = path_migration_cost(net, cm, path);
    for (std::size_t cut = 1; cut + 1 < path.size(); ++cut) {
      std::vector<int> a(path.begin(), path.begin() + cut + 1);
      std::vector<int> b(path.begin() + cut, path.end());
      CHECK(whole <= path_migration_cost(net, cm, a) +
                         path_migration_cost(net, cm, b));
    }
  }
}
