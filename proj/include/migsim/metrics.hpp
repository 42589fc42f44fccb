#pragma once

#include <algorithm>
#include <deque>
#include <limits>
#include <queue>
#include <stdexcept>
#include <vector>

#include "migsim/cost_model.hpp"
#include "migsim/substrate.hpp"

namespace migsim {

inline double edge_weight(const Edge& e, AccessMetric metric) {
  return metric == AccessMetric::hops ? 1.0 : e.latency;
}

// Dijkstra with lowest-id predecessor tie-break; pred_out (optional) allows
// path reconstruction.
inline std::vector<double> single_source_access(const SubstrateNetwork& net,
                                                AccessMetric metric, int src,
                                                std::vector<int>* pred_out = nullptr) {
  const int n = net.node_count();
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> dist(n, inf);
  std::vector<int> pred(n, -1);
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  dist[src] = 0.0;
  heap.push({0.0, src});
  while (!heap.empty()) {
    auto [d, v] = heap.top();
    heap.pop();
    if (d > dist[v]) continue;
    for (auto [w, ei] : net.adjacency[v]) {
      const double nd = d + edge_weight(net.edges[ei], metric);
      if (nd < dist[w]) {
        dist[w] = nd;
        pred[w] = v;
        heap.push({nd, w});
      } else if (nd == dist[w] && v < pred[w]) {
        pred[w] = v;
      }
    }
  }
  if (pred_out) *pred_out = std::move(pred);
  return dist;
}

// All-pairs access-cost table. Symmetric, zero diagonal, triangle inequality
// by construction (shortest-path metric).
class AccessMatrix {
 public:
  AccessMatrix() = default;
  AccessMatrix(int n, std::vector<double> d) : n_(n), d_(std::move(d)) {}

  double operator()(int u, int v) const { return d_[u * n_ + v]; }
  int size() const { return n_; }

 private:
  int n_ = 0;
  std::vector<double> d_;
};

inline AccessMatrix access_cost_matrix(const SubstrateNetwork& net,
                                       AccessMetric metric) {
  const int n = net.node_count();
  std::vector<double> d(static_cast<std::size_t>(n) * n, 0.0);
  for (int s = 0; s < n; ++s) {
    std::vector<double> row = single_source_access(net, metric, s);
    std::copy(row.begin(), row.end(), d.begin() + static_cast<std::size_t>(s) * n);
  }
  return AccessMatrix(n, std::move(d));
}

// Migration cost for an explicit node path: server size over the bottleneck
// bandwidth plus pi per PIP boundary crossed. Zero for a trivial path.
inline double path_migration_cost(const SubstrateNetwork& net,
                                  const CostModel& cm,
                                  const std::vector<int>& path,
                                  int* crossings_out = nullptr) {
  if (path.size() < 2) {
    if (crossings_out) *crossings_out = 0;
    return 0.0;
  }
  double bottleneck = std::numeric_limits<double>::infinity();
  int crossings = 0;
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    const int a = path[i], b = path[i + 1];
    double bw = -1.0;
    for (auto [w, ei] : net.adjacency[a]) {
      if (w == b) {
        bw = net.edges[ei].bandwidth;
        break;
      }
    }
    if (bw < 0) throw std::invalid_argument("path uses a non-existent edge");
    bottleneck = std::min(bottleneck, bw);
    if (net.nodes[a].pip != net.nodes[b].pip) ++crossings;
  }
  if (crossings_out) *crossings_out = crossings;
  return cm.server_size / bottleneck + crossings * cm.pi;
}

class MigrationTable {
 public:
  MigrationTable() = default;
  MigrationTable(int n, std::vector<double> cost, std::vector<int> crossings)
      : n_(n), cost_(std::move(cost)), crossings_(std::move(crossings)) {}

  double cost(int u, int v) const { return cost_[u * n_ + v]; }
  int crossings(int u, int v) const { return crossings_[u * n_ + v]; }
  int size() const { return n_; }

 private:
  int n_ = 0;
  std::vector<double> cost_;
  std::vector<int> crossings_;
};

namespace detail {

// Minimum PIP-boundary crossings from src using only edges with
// bandwidth >= bw_floor (pass 0 to use every edge). 0-1 BFS.
inline std::vector<int> min_crossings_from(const SubstrateNetwork& net, int src,
                                           double bw_floor) {
  const int n = net.node_count();
  const int inf = std::numeric_limits<int>::max();
  std::vector<int> dist(n, inf);
  std::deque<int> dq;
  dist[src] = 0;
  dq.push_back(src);
  while (!dq.empty()) {
    const int v = dq.front();
    dq.pop_front();
    for (auto [w, ei] : net.adjacency[v]) {
      if (net.edges[ei].bandwidth < bw_floor) continue;
      const int step = net.nodes[v].pip != net.nodes[w].pip ? 1 : 0;
      if (dist[v] != inf && dist[v] + step < dist[w]) {
        dist[w] = dist[v] + step;
        if (step == 0)
          dq.push_front(w);
        else
          dq.push_back(w);
      }
    }
  }
  return dist;
}

}  // namespace detail

// mode=optimal minimizes size/bottleneck + crossings*pi over all paths by
// sweeping bandwidth floors: for each distinct bandwidth b (descending),
// restrict to edges with BW >= b and take the fewest-crossings path.
// mode=shortest_latency evaluates the formula on the access-metric shortest
// path instead.
inline MigrationTable migration_cost_table(const SubstrateNetwork& net,
                                           const CostModel& cm) {
  const int n = net.node_count();
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> cost(static_cast<std::size_t>(n) * n, 0.0);
  std::vector<int> crossings(static_cast<std::size_t>(n) * n, 0);

  if (cm.path_mode == MigrationPathMode::optimal) {
    std::vector<double> floors;
    for (const Edge& e : net.edges) floors.push_back(e.bandwidth);
    std::sort(floors.begin(), floors.end(), std::greater<>());
    floors.erase(std::unique(floors.begin(), floors.end()), floors.end());

    std::fill(cost.begin(), cost.end(), inf);
    for (int v = 0; v < n; ++v) {
      cost[static_cast<std::size_t>(v) * n + v] = 0.0;
    }
    for (double b : floors) {
      const double transfer = cm.server_size / b;
      for (int u = 0; u < n; ++u) {
        std::vector<int> cr = detail::min_crossings_from(net, u, b);
        for (int v = 0; v < n; ++v) {
          if (u == v || cr[v] == std::numeric_limits<int>::max()) continue;
          const double c = transfer + cr[v] * cm.pi;
          auto idx = static_cast<std::size_t>(u) * n + v;
          if (c < cost[idx]) {
            cost[idx] = c;
            crossings[idx] = cr[v];
          }
        }
      }
    }
  } else {
    for (int u = 0; u < n; ++u) {
      std::vector<int> pred;
      single_source_access(net, cm.access_metric, u, &pred);
      for (int v = 0; v < n; ++v) {
        if (u == v) continue;
        std::vector<int> path;
        for (int w = v; w != -1; w = pred[w]) path.push_back(w);
        std::reverse(path.begin(), path.end());
        int k = 0;
        const double c = path_migration_cost(net, cm, path, &k);
        cost[static_cast<std::size_t>(u) * n + v] = c;
        crossings[static_cast<std::size_t>(u) * n + v] = k;
      }
    }
  }
  return MigrationTable(n, std::move(cost), std::move(crossings));
}

// Largest number of PIP boundaries that any migration must cross, i.e. the
// max over node pairs of the crossing-minimal connecting path.
inline int pip_graph_diameter(const SubstrateNetwork& net) {
  const int n = net.node_count();
  int diam = 0;
  for (int u = 0; u < n; ++u) {
    std::vector<int> cr = detail::min_crossings_from(net, u, 0.0);
    for (int v = 0; v < n; ++v) diam = std::max(diam, cr[v]);
  }
  return diam;
}

}  // namespace migsim
