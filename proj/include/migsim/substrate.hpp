#pragma once

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "migsim/rng.hpp"

namespace migsim {

struct NodeInfo {
  int pip = 0;
  std::optional<double> capacity;  // stored, never used by decisions
};

struct Edge {
  int u = 0;
  int v = 0;
  double bandwidth = 0.0;  // Mbit/s, > 0
  double latency = 1.0;    // ms, >= 0
};

// Undirected simple connected graph. Node ids are dense 0..n-1; each node
// belongs to one PIP. Immutable after construction: mutate only through the
// builders below, then share read-only.
struct SubstrateNetwork {
  std::vector<NodeInfo> nodes;
  std::vector<Edge> edges;
  // adjacency[v] = list of (neighbor, edge index)
  std::vector<std::vector<std::pair<int, int>>> adjacency;

  int node_count() const { return static_cast<int>(nodes.size()); }
  int edge_count() const { return static_cast<int>(edges.size()); }

  int pip_count() const {
    int m = 0;
    for (const auto& nd : nodes) m = std::max(m, nd.pip + 1);
    return m;
  }

  double min_bandwidth() const {
    double b = edges.empty() ? 1.0 : edges.front().bandwidth;
    for (const auto& e : edges) b = std::min(b, e.bandwidth);
    return b;
  }

  double max_bandwidth() const {
    double b = edges.empty() ? 1.0 : edges.front().bandwidth;
    for (const auto& e : edges) b = std::max(b, e.bandwidth);
    return b;
  }

  double mean_bandwidth() const {
    if (edges.empty()) return 1.0;
    double s = 0.0;
    for (const auto& e : edges) s += e.bandwidth;
    return s / static_cast<double>(edges.size());
  }

  bool constant_bandwidth() const {
    for (const auto& e : edges)
      if (e.bandwidth != edges.front().bandwidth) return false;
    return true;
  }
};

namespace detail {

inline void build_adjacency(SubstrateNetwork& net) {
  net.adjacency.assign(net.nodes.size(), {});
  for (int i = 0; i < net.edge_count(); ++i) {
    const Edge& e = net.edges[i];
    net.adjacency[e.u].push_back({e.v, i});
    net.adjacency[e.v].push_back({e.u, i});
  }
}

inline bool is_connected(const SubstrateNetwork& net) {
  const int n = net.node_count();
  if (n == 0) return false;
  std::vector<char> seen(n, 0);
  std::queue<int> q;
  q.push(0);
  seen[0] = 1;
  int reached = 1;
  while (!q.empty()) {
    const int v = q.front();
    q.pop();
    for (auto [w, ei] : net.adjacency[v]) {
      if (!seen[w]) {
        seen[w] = 1;
        ++reached;
        q.push(w);
      }
    }
  }
  return reached == n;
}

}  // namespace detail

// Validates the type invariants and builds the adjacency index.
// Throws std::runtime_error naming the first violated invariant.
inline void finalize_network(SubstrateNetwork& net) {
  const int n = net.node_count();
  if (n == 0) throw std::runtime_error("network has no nodes");
  std::set<std::pair<int, int>> seen;
  for (const Edge& e : net.edges) {
    if (e.u < 0 || e.u >= n || e.v < 0 || e.v >= n)
      throw std::runtime_error("edge references unknown node " +
                               std::to_string(e.u >= n || e.u < 0 ? e.u : e.v));
    if (e.u == e.v)
      throw std::runtime_error("self-loop at node " + std::to_string(e.u));
    auto key = std::minmax(e.u, e.v);
    if (!seen.insert({key.first, key.second}).second)
      throw std::runtime_error("duplicate edge (" + std::to_string(e.u) + "," +
                               std::to_string(e.v) + ")");
    if (!(e.bandwidth > 0.0))
      throw std::runtime_error("non-positive bandwidth on edge (" +
                               std::to_string(e.u) + "," + std::to_string(e.v) +
                               ")");
    if (e.latency < 0.0)
      throw std::runtime_error("negative latency on edge (" +
                               std::to_string(e.u) + "," + std::to_string(e.v) +
                               ")");
  }
  detail::build_adjacency(net);
  if (!detail::is_connected(net))
    throw std::runtime_error("network is not connected");
}

enum class LatencyMode { unit, uniform_range };

struct LatencySpec {
  LatencyMode mode = LatencyMode::unit;
  double lo = 1.0;
  double hi = 1.0;

  static LatencySpec unit() { return {}; }
  static LatencySpec uniform(double lo, double hi) {
    return {LatencyMode::uniform_range, lo, hi};
  }
};

// G(n, p) with per-edge bandwidth drawn from bw_choices. Resamples the whole
// graph until it is connected; gives up after max_attempts draws. The number
// of attempts used is reported through attempts_out when non-null.
inline SubstrateNetwork generate_erdos_renyi(
    int n, double p_conn, const std::vector<double>& bw_choices,
    const LatencySpec& latency, int pip_id, std::uint64_t seed,
    int* attempts_out = nullptr, int max_attempts = 1000) {
  if (n < 1) throw std::invalid_argument("erdos-renyi: n must be >= 1");
  if (!(p_conn > 0.0) || p_conn > 1.0)
    throw std::invalid_argument("erdos-renyi: p_conn must be in (0,1]");
  if (bw_choices.empty())
    throw std::invalid_argument("erdos-renyi: bw_choices is empty");

  Rng rng(seed);
  for (int attempt = 1; attempt <= max_attempts; ++attempt) {
    SubstrateNetwork net;
    net.nodes.assign(n, NodeInfo{pip_id, std::nullopt});
    for (int u = 0; u < n; ++u) {
      for (int v = u + 1; v < n; ++v) {
        if (rng.real01() < p_conn) {
          Edge e;
          e.u = u;
          e.v = v;
          e.bandwidth = rng.pick(bw_choices);
          e.latency = latency.mode == LatencyMode::unit
                          ? 1.0
                          : latency.lo + rng.real01() * (latency.hi - latency.lo);
          net.edges.push_back(e);
        }
      }
    }
    detail::build_adjacency(net);
    if (detail::is_connected(net)) {
      if (attempts_out) *attempts_out = attempt;
      return net;
    }
  }
  throw std::runtime_error(
      "erdos-renyi generation failed: no connected graph with n=" +
      std::to_string(n) + " p_conn=" + std::to_string(p_conn) + " within " +
      std::to_string(max_attempts) + " attempts");
}

// Joins per-provider subnets into one substrate: nodes are relabeled densely,
// pip_id becomes the subnet index, and each adjacent pair around the ring is
// linked by one edge between uniformly random endpoints. Two subnets get a
// single link, not two.
inline SubstrateNetwork compose_pip_ring(
    const std::vector<SubstrateNetwork>& subnets, double inter_bw,
    double inter_latency, std::uint64_t seed) {
  if (subnets.empty()) throw std::invalid_argument("pip ring: no subnets");
  if (subnets.size() == 1) return subnets.front();

  const int k = static_cast<int>(subnets.size());
  SubstrateNetwork net;
  std::vector<int> offset(k, 0);
  for (int i = 0; i < k; ++i) {
    offset[i] = net.node_count();
    for (const auto& nd : subnets[i].nodes)
      net.nodes.push_back(NodeInfo{i, nd.capacity});
    for (const Edge& e : subnets[i].edges) {
      Edge r = e;
      r.u += offset[i];
      r.v += offset[i];
      net.edges.push_back(r);
    }
  }

  Rng rng(seed);
  const int links = (k == 2) ? 1 : k;
  for (int i = 0; i < links; ++i) {
    const int j = (i + 1) % k;
    Edge e;
    e.u = offset[i] + static_cast<int>(rng.index(subnets[i].nodes.size()));
    e.v = offset[j] + static_cast<int>(rng.index(subnets[j].nodes.size()));
    e.bandwidth = inter_bw;
    e.latency = inter_latency;
    net.edges.push_back(e);
  }
  finalize_network(net);
  return net;
}

namespace detail {

inline std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

}  // namespace detail

// Line-oriented network file:
//   # comment
//   node <id> <pip_id> [capacity]
//   edge <u> <v> <bandwidth_mbps> <latency_ms>
// Node lines precede edge lines; the serializer emits nodes ascending and
// edges ascending by (u, v).
inline SubstrateNetwork parse_network(const std::string& text) {
  SubstrateNetwork net;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  std::map<int, NodeInfo> node_map;
  bool edges_started = false;
  std::vector<Edge> edges;

  auto fail = [&](const std::string& what) {
    throw std::runtime_error("network parse error at line " +
                             std::to_string(lineno) + ": " + what);
  };

  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string kind;
    if (!(ls >> kind)) continue;  // blank
    if (kind[0] == '#') continue;
    if (kind == "node") {
      if (edges_started) fail("node line after edge lines");
      int id, pip;
      if (!(ls >> id >> pip)) fail("malformed node line");
      NodeInfo info;
      info.pip = pip;
      double cap;
      if (ls >> cap) {
        if (cap < 0) fail("negative capacity");
        info.capacity = cap;
      }
      if (!node_map.emplace(id, info).second)
        fail("duplicate node id " + std::to_string(id));
    } else if (kind == "edge") {
      edges_started = true;
      Edge e;
      if (!(ls >> e.u >> e.v >> e.bandwidth >> e.latency))
        fail("malformed edge line");
      if (!node_map.count(e.u)) fail("unknown node " + std::to_string(e.u));
      if (!node_map.count(e.v)) fail("unknown node " + std::to_string(e.v));
      edges.push_back(e);
    } else {
      fail("unknown directive '" + kind + "'");
    }
  }
  if (node_map.empty()) throw std::runtime_error("network file has no nodes");

  const int n = static_cast<int>(node_map.size());
  net.nodes.resize(n);
  for (const auto& [id, info] : node_map) {
    if (id < 0 || id >= n)
      throw std::runtime_error("node ids not dense 0.." + std::to_string(n - 1) +
                               ": found " + std::to_string(id));
    net.nodes[id] = info;
  }
  net.edges = std::move(edges);
  finalize_network(net);  // self-loops, duplicates, connectivity
  return net;
}

inline std::string serialize_network(const SubstrateNetwork& net) {
  std::ostringstream out;
  for (int i = 0; i < net.node_count(); ++i) {
    out << "node " << i << ' ' << net.nodes[i].pip;
    if (net.nodes[i].capacity)
      out << ' ' << detail::format_double(*net.nodes[i].capacity);
    out << '\n';
  }
  std::vector<Edge> sorted = net.edges;
  for (Edge& e : sorted)
    if (e.u > e.v) std::swap(e.u, e.v);
  std::sort(sorted.begin(), sorted.end(), [](const Edge& a, const Edge& b) {
    return std::tie(a.u, a.v) < std::tie(b.u, b.v);
  });
  for (const Edge& e : sorted) {
    out << "edge " << e.u << ' ' << e.v << ' '
        << detail::format_double(e.bandwidth) << ' '
        << detail::format_double(e.latency) << '\n';
  }
  return out.str();
}

// FNV-1a over the canonical serialization; used to stamp traces with the
// network they were generated against.
inline std::uint64_t network_fingerprint(const SubstrateNetwork& net) {
  const std::string text = serialize_network(net);
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  return h;
}

}  // namespace migsim
