#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

#include "migsim/metrics.hpp"
#include "migsim/workload.hpp"

namespace migsim {

// opt[t][v] = cheapest cost of serving the first t+1 active rounds with the
// server at v for round t. Rows exist only for active rounds (nonempty
// request sets); migrating during an empty round can never beat folding the
// move into the next active round.
struct OptTable {
  int n = 0;
  int v0 = 0;
  std::vector<int> active_rounds;   // original round indices, ascending
  std::vector<std::vector<double>> opt;
  std::vector<std::vector<int>> pred;

  double minimum() const {
    if (opt.empty()) return 0.0;
    double m = opt.back()[0];
    for (double c : opt.back()) m = std::min(m, c);
    return m;
  }
};

struct ScheduleEntry {
  int round_index = 0;
  int location = 0;
  double access_cost = 0.0;
  double migration_cost = 0.0;
};

struct MigrationSchedule {
  std::vector<ScheduleEntry> entries;  // one per active round
  double total_cost = 0.0;
  double access_total = 0.0;
  double migration_total = 0.0;
};

namespace detail {

inline double round_access_at(const RequestRound& round, int node,
                              const AccessMatrix& acc) {
  double s = 0.0;
  for (int r : round.origins) s += acc(r, node);
  return s;
}

}  // namespace detail

inline OptTable opt_table(const SubstrateNetwork& net, const RequestTrace& trace,
                          int v0, const AccessMatrix& acc, const CostModel& /*cm*/,
                          const MigrationTable& mig) {
  const int n = net.node_count();
  if (v0 < 0 || v0 >= n)
    throw std::invalid_argument("opt_table: v0 out of range");
  validate_trace_against(trace, net);

  OptTable table;
  table.n = n;
  table.v0 = v0;
  for (const auto& round : trace.rounds)
    if (!round.origins.empty()) table.active_rounds.push_back(round.round_index);

  const int T = static_cast<int>(table.active_rounds.size());
  table.opt.assign(T, std::vector<double>(n, 0.0));
  table.pred.assign(T, std::vector<int>(n, v0));

  for (int t = 0; t < T; ++t) {
    const RequestRound& round = trace.rounds[table.active_rounds[t]];
    std::vector<double> access(n);
    for (int u = 0; u < n; ++u)
      access[u] = detail::round_access_at(round, u, acc);

    if (t == 0) {
      for (int u = 0; u < n; ++u)
        table.opt[0][u] = mig.cost(v0, u) + access[u];
      continue;
    }
    for (int u = 0; u < n; ++u) {
      double best = std::numeric_limits<double>::infinity();
      int best_v = 0;
      for (int v = 0; v < n; ++v) {
        const double c = table.opt[t - 1][v] + mig.cost(v, u);
        if (c < best) {
          best = c;
          best_v = v;
        }
      }
      table.opt[t][u] = best + access[u];
      table.pred[t][u] = best_v;
    }
  }
  return table;
}

// Backtracks the minimizing schedule (lowest-id argmin in the final row) and
// recomputes its cost forward, including the initial placement move.
inline MigrationSchedule opt_schedule(const OptTable& table,
                                      const RequestTrace& trace,
                                      const AccessMatrix& acc,
                                      const MigrationTable& mig) {
  MigrationSchedule sched;
  const int T = static_cast<int>(table.active_rounds.size());
  if (T == 0) return sched;

  int cur = 0;
  for (int v = 1; v < table.n; ++v)
    if (table.opt[T - 1][v] < table.opt[T - 1][cur]) cur = v;

  std::vector<int> locations(T);
  for (int t = T - 1; t >= 0; --t) {
    locations[t] = cur;
    cur = table.pred[t][cur];
  }

  int prev = table.v0;
  for (int t = 0; t < T; ++t) {
    const RequestRound& round = trace.rounds[table.active_rounds[t]];
    ScheduleEntry e;
    e.round_index = table.active_rounds[t];
    e.location = locations[t];
    e.migration_cost = mig.cost(prev, locations[t]);
    e.access_cost = detail::round_access_at(round, locations[t], acc);
    sched.access_total += e.access_cost;
    sched.migration_total += e.migration_cost;
    sched.entries.push_back(e);
    prev = locations[t];
  }
  sched.total_cost = sched.access_total + sched.migration_total;
  return sched;
}

// Test oracle: exact minimum by enumerating every location sequence over the
// active rounds. Guarded against blowup; never use outside tests.
inline MigrationSchedule brute_force_opt(const SubstrateNetwork& net,
                                         const RequestTrace& trace, int v0,
                                         const AccessMatrix& acc,
                                         const CostModel& /*cm*/,
                                         const MigrationTable& mig) {
  const int n = net.node_count();
  if (v0 < 0 || v0 >= n)
    throw std::invalid_argument("brute_force_opt: v0 out of range");
  validate_trace_against(trace, net);

  std::vector<int> active;
  for (const auto& round : trace.rounds)
    if (!round.origins.empty()) active.push_back(round.round_index);
  const int T = static_cast<int>(active.size());

  double combos = 1.0;
  for (int t = 0; t < T; ++t) {
    combos *= n;
    if (combos > 1e7)
      throw std::runtime_error("brute_force_opt: n^T exceeds 1e7");
  }

  MigrationSchedule best;
  if (T == 0) return best;
  best.total_cost = std::numeric_limits<double>::infinity();

  std::vector<int> seq(T, 0);
  while (true) {
    double access = 0.0, migration = 0.0;
    int prev = v0;
    for (int t = 0; t < T; ++t) {
      migration += mig.cost(prev, seq[t]);
      access += detail::round_access_at(trace.rounds[active[t]], seq[t], acc);
      prev = seq[t];
    }
    if (access + migration < best.total_cost) {
      best.total_cost = access + migration;
      best.access_total = access;
      best.migration_total = migration;
      best.entries.clear();
      for (int t = 0; t < T; ++t)
        best.entries.push_back({active[t], seq[t], 0.0, 0.0});
    }
    int t = T - 1;
    while (t >= 0 && ++seq[t] == n) seq[t--] = 0;
    if (t < 0) break;
  }
  return best;
}

}  // namespace migsim
