#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "migsim/metrics.hpp"
#include "migsim/rng.hpp"
#include "migsim/substrate.hpp"

namespace migsim {

// One round's request multiset: origins lists one access-point node id per
// request, in generation order (repeats allowed).
struct RequestRound {
  int round_index = 0;
  std::vector<int> origins;
};

struct TraceMeta {
  std::string scenario = "unknown";
  std::uint64_t seed = 0;
  std::uint64_t net_fingerprint = 0;
  std::string params;  // free-form key=value tokens
};

struct RequestTrace {
  std::vector<RequestRound> rounds;
  TraceMeta meta;

  int round_count() const { return static_cast<int>(rounds.size()); }

  long total_requests() const {
    long s = 0;
    for (const auto& r : rounds) s += static_cast<long>(r.origins.size());
    return s;
  }
};

// One hotspot node carries round(p_hot% * requests_per_round) requests per
// round for an exponentially distributed sojourn (mean `lambda` rounds,
// floored at 1); the rest of the round is uniform background. Hotspot
// requests are emitted first in each round's origin list.
inline RequestTrace gen_time_zones(const SubstrateNetwork& net, int rounds,
                                   double p_hot, double lambda,
                                   int requests_per_round, std::uint64_t seed) {
  if (rounds < 1) throw std::invalid_argument("time-zones: rounds must be >= 1");
  if (!(lambda > 0)) throw std::invalid_argument("time-zones: lambda must be > 0");
  if (requests_per_round < 1)
    throw std::invalid_argument("time-zones: requests_per_round must be >= 1");
  if (p_hot < 0 || p_hot > 100)
    throw std::invalid_argument("time-zones: p_hot must be in [0,100]");

  const int n = net.node_count();
  Rng rng(seed);
  const long hot_count = std::lround(p_hot / 100.0 * requests_per_round);

  RequestTrace trace;
  trace.meta.scenario = "time_zones";
  trace.meta.seed = seed;
  trace.meta.net_fingerprint = network_fingerprint(net);
  {
    std::ostringstream p;
    p << "p_hot=" << p_hot << " lambda=" << lambda
      << " requests=" << requests_per_round << " rounds=" << rounds;
    trace.meta.params = p.str();
  }

  int hotspot = static_cast<int>(rng.index(n));
  long sojourn = rng.exp_rounds(lambda);
  for (int t = 0; t < rounds; ++t) {
    RequestRound round;
    round.round_index = t;
    round.origins.reserve(requests_per_round);
    for (long i = 0; i < hot_count; ++i) round.origins.push_back(hotspot);
    for (long i = hot_count; i < requests_per_round; ++i)
      round.origins.push_back(static_cast<int>(rng.index(n)));
    trace.rounds.push_back(std::move(round));
    if (--sojourn == 0) {
      hotspot = static_cast<int>(rng.index(n));
      sojourn = rng.exp_rounds(lambda);
    }
  }
  return trace;
}

// Fixed per-round load of 2^(T/2) requests spreading out from the center and
// contracting back: in phase i the requests are split evenly over the center
// plus the 2^i - 1 nodes nearest to it (access metric, lowest-id ties), and
// the phase index follows the triangle wave 0,1,...,T/2,...,1,0,... Each
// phase lasts an exponential number of rounds (mean `lambda`, floored at 1).
inline RequestTrace gen_commuter(const SubstrateNetwork& net, int T,
                                 double lambda, int rounds, int center,
                                 std::uint64_t seed,
                                 AccessMetric metric = AccessMetric::hops) {
  if (T < 2 || T % 2 != 0)
    throw std::invalid_argument("commuter: T must be even and >= 2");
  if (!(lambda > 0)) throw std::invalid_argument("commuter: lambda must be > 0");
  if (rounds < 1) throw std::invalid_argument("commuter: rounds must be >= 1");
  const int n = net.node_count();
  if (center < 0 || center >= n)
    throw std::invalid_argument("commuter: center node out of range");
  const long total = 1L << (T / 2);
  if (total > n)
    throw std::invalid_argument("commuter: 2^(T/2) = " + std::to_string(total) +
                                " exceeds node count " + std::to_string(n));

  // Access points ordered by distance from the center, center first.
  std::vector<double> dist = single_source_access(net, metric, center);
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (a == center) return true;
    if (b == center) return false;
    if (dist[a] != dist[b]) return dist[a] < dist[b];
    return a < b;
  });

  RequestTrace trace;
  trace.meta.scenario = "commuter";
  trace.meta.seed = seed;
  trace.meta.net_fingerprint = network_fingerprint(net);
  {
    std::ostringstream p;
    p << "T=" << T << " lambda=" << lambda << " center=" << center
      << " rounds=" << rounds;
    trace.meta.params = p.str();
  }

  Rng rng(seed);
  int wave = 0;  // position on the length-T triangle wave
  long phase_left = rng.exp_rounds(lambda);
  for (int t = 0; t < rounds; ++t) {
    const int phase = wave <= T / 2 ? wave : T - wave;
    const long points = 1L << phase;
    const long per_point = total / points;
    long remainder = total - per_point * points;  // 0 for power-of-two splits

    RequestRound round;
    round.round_index = t;
    round.origins.reserve(total);
    for (long i = 0; i < per_point + remainder; ++i)
      round.origins.push_back(order[0]);  // center
    for (long a = 1; a < points; ++a)
      for (long i = 0; i < per_point; ++i) round.origins.push_back(order[a]);
    trace.rounds.push_back(std::move(round));

    if (--phase_left == 0) {
      wave = (wave + 1) % T;
      phase_left = rng.exp_rounds(lambda);
    }
  }
  return trace;
}

// Trace file: one header line
//   # trace v1 scenario=<name> seed=<u64> net=<hex fingerprint> <params...>
// then one line per round: `<round_index> <origin> <origin> ...`.
inline std::string serialize_trace(const RequestTrace& trace) {
  std::ostringstream out;
  out << "# trace v1 scenario=" << trace.meta.scenario
      << " seed=" << trace.meta.seed << " net=" << std::hex
      << trace.meta.net_fingerprint << std::dec;
  if (!trace.meta.params.empty()) out << ' ' << trace.meta.params;
  out << '\n';
  for (const auto& round : trace.rounds) {
    out << round.round_index;
    for (int o : round.origins) out << ' ' << o;
    out << '\n';
  }
  return out.str();
}

inline RequestTrace parse_trace(const std::string& text) {
  RequestTrace trace;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  int expected_index = 0;

  auto fail = [&](const std::string& what) {
    throw std::runtime_error("trace parse error at line " +
                             std::to_string(lineno) + ": " + what);
  };

  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::istringstream hs(line.substr(1));
      std::string tok;
      std::ostringstream rest;
      while (hs >> tok) {
        auto eq = tok.find('=');
        if (eq == std::string::npos) continue;
        const std::string key = tok.substr(0, eq);
        const std::string val = tok.substr(eq + 1);
        try {
          if (key == "scenario") {
            trace.meta.scenario = val;
          } else if (key == "seed") {
            trace.meta.seed = std::stoull(val);
          } else if (key == "net") {
            trace.meta.net_fingerprint = std::stoull(val, nullptr, 16);
          } else {
            if (rest.tellp() > 0) rest << ' ';
            rest << tok;
          }
        } catch (const std::exception&) {
          fail("bad header value '" + tok + "'");
        }
      }
      trace.meta.params = rest.str();
      continue;
    }
    std::istringstream ls(line);
    RequestRound round;
    if (!(ls >> round.round_index)) fail("malformed round line");
    if (round.round_index != expected_index)
      fail("round indices not consecutive: expected " +
           std::to_string(expected_index) + ", got " +
           std::to_string(round.round_index));
    int origin;
    while (ls >> origin) {
      if (origin < 0) fail("negative origin id");
      round.origins.push_back(origin);
    }
    if (!ls.eof()) fail("trailing garbage on round line");
    trace.rounds.push_back(std::move(round));
    ++expected_index;
  }
  return trace;
}

// Every origin must name a node of the companion network.
inline void validate_trace_against(const RequestTrace& trace,
                                   const SubstrateNetwork& net) {
  for (const auto& round : trace.rounds)
    for (int o : round.origins)
      if (o < 0 || o >= net.node_count())
        throw std::runtime_error("trace references node " + std::to_string(o) +
                                 " outside the network (round " +
                                 std::to_string(round.round_index) + ")");
}

}  // namespace migsim
