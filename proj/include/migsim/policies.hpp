#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "migsim/cost_model.hpp"
#include "migsim/metrics.hpp"
#include "migsim/rng.hpp"
#include "migsim/workload.hpp"

namespace migsim {

enum class PolicyKind { stat, rand, det, prand, pdet };

inline const char* policy_name(PolicyKind k) {
  switch (k) {
    case PolicyKind::stat: return "stat";
    case PolicyKind::rand: return "rand";
    case PolicyKind::det: return "det";
    case PolicyKind::prand: return "prand";
    case PolicyKind::pdet: return "pdet";
  }
  return "?";
}

inline PolicyKind policy_from_name(const std::string& s) {
  if (s == "stat") return PolicyKind::stat;
  if (s == "rand") return PolicyKind::rand;
  if (s == "det") return PolicyKind::det;
  if (s == "prand") return PolicyKind::prand;
  if (s == "pdet") return PolicyKind::pdet;
  throw std::invalid_argument("unknown policy '" + s + "'");
}

// Outcome of one round. migrated=false implies new_location is the previous
// location and migration_cost_paid is zero.
struct PolicyDecision {
  int new_location = 0;
  bool migrated = false;
  double migration_cost_paid = 0.0;
  bool epoch_ended = false;        // smallest epoch scope of the policy
  bool large_epoch_ended = false;  // multi-provider only
  bool huge_epoch_ended = false;   // multi-provider only
};

// Node minimizing the worst-case access distance, lowest id on ties.
inline int stat_center(const SubstrateNetwork& net, const AccessMatrix& acc) {
  const int n = net.node_count();
  int best = 0;
  double best_ecc = std::numeric_limits<double>::infinity();
  for (int v = 0; v < n; ++v) {
    double ecc = 0.0;
    for (int w = 0; w < n; ++w) ecc = std::max(ecc, acc(v, w));
    if (ecc < best_ecc) {
      best_ecc = ecc;
      best = v;
    }
  }
  return best;
}

// Weighted gravity center: argmin over the candidates of the request-weighted
// sum of access distances, lowest id on ties. Weights index by node id.
inline int gravity_center(const AccessMatrix& acc,
                          const std::vector<int>& candidates,
                          const std::vector<double>& weights) {
  if (candidates.empty())
    throw std::invalid_argument("gravity_center: empty candidate set");
  int best = -1;
  double best_sum = std::numeric_limits<double>::infinity();
  for (int v : candidates) {
    double s = 0.0;
    for (int u = 0; u < acc.size(); ++u)
      if (weights[u] != 0.0) s += weights[u] * acc(u, v);
    if (s < best_sum || (s == best_sum && v < best)) {
      best_sum = s;
      best = v;
    }
  }
  return best;
}

// Counters for one policy run. counters[v] accumulates the access cost the
// epoch would have charged to a server pinned at v; epoch_weights is the
// request multiset of the epoch (the gravity-center weights).
struct IntraPolicyState {
  PolicyKind kind = PolicyKind::rand;
  int location = 0;
  double threshold = 0.0;  // beta, or size/min BW on non-constant bandwidth
  double tau = 1.0 / 3.0;
  std::vector<double> counters;
  std::vector<double> epoch_weights;
  long epoch_index = 0;
  long phase_index = 0;
  bool reset_pending = false;  // epoch ended; counters reset next round
  Rng rng{0};
};

inline IntraPolicyState make_intra_state(PolicyKind kind,
                                         const SubstrateNetwork& net,
                                         const CostModel& cm, int v0,
                                         std::uint64_t seed) {
  if (v0 < 0 || v0 >= net.node_count())
    throw std::invalid_argument("initial location out of range");
  IntraPolicyState st;
  st.kind = kind;
  st.location = v0;
  st.threshold = epoch_threshold(net, cm);
  st.tau = cm.det_tau;
  st.counters.assign(net.node_count(), 0.0);
  st.epoch_weights.assign(net.node_count(), 0.0);
  st.rng = Rng(seed);
  return st;
}

namespace detail {

inline void epoch_update(std::vector<double>& counters,
                         std::vector<double>& weights, const RequestRound& round,
                         const AccessMatrix& acc) {
  for (int r : round.origins) {
    weights[r] += 1.0;
    for (int v = 0; v < acc.size(); ++v) counters[v] += acc(r, v);
  }
}

}  // namespace detail

// One round of RAND: accumulate, then if the occupied node's counter reached
// the threshold, jump to a uniformly random node still under it; with none
// left the epoch ends (counters reset at the start of the next round).
inline PolicyDecision rand_step(IntraPolicyState& state,
                                const RequestRound& round,
                                const AccessMatrix& acc, const CostModel& /*cm*/,
                                const MigrationTable& mig) {
  if (state.kind != PolicyKind::rand)
    throw std::invalid_argument("rand_step on non-rand state");
  if (state.reset_pending) {
    std::fill(state.counters.begin(), state.counters.end(), 0.0);
    std::fill(state.epoch_weights.begin(), state.epoch_weights.end(), 0.0);
    ++state.epoch_index;
    state.phase_index = 0;
    state.reset_pending = false;
  }
  detail::epoch_update(state.counters, state.epoch_weights, round, acc);

  PolicyDecision d;
  d.new_location = state.location;
  if (state.counters[state.location] >= state.threshold) {
    std::vector<int> below;
    for (int v = 0; v < acc.size(); ++v)
      if (state.counters[v] < state.threshold) below.push_back(v);
    if (!below.empty()) {
      const int target = below[state.rng.index(below.size())];
      d.new_location = target;
      d.migrated = true;
      d.migration_cost_paid = mig.cost(state.location, target);
      state.location = target;
      ++state.phase_index;
    } else {
      d.epoch_ended = true;
      state.reset_pending = true;
    }
  }
  return d;
}

// One round of DET: accumulate, then if the occupied node's counter reached
// the threshold, migrate to the gravity center of the active nodes (counter
// strictly below tau*threshold) weighted by the epoch's requests. An empty
// active set ends the epoch whether or not the trigger fired.
inline PolicyDecision det_step(IntraPolicyState& state,
                               const RequestRound& round,
                               const AccessMatrix& acc, const CostModel& /*cm*/,
                               const MigrationTable& mig) {
  if (state.kind != PolicyKind::det)
    throw std::invalid_argument("det_step on non-det state");
  if (state.reset_pending) {
    std::fill(state.counters.begin(), state.counters.end(), 0.0);
    std::fill(state.epoch_weights.begin(), state.epoch_weights.end(), 0.0);
    ++state.epoch_index;
    state.phase_index = 0;
    state.reset_pending = false;
  }
  detail::epoch_update(state.counters, state.epoch_weights, round, acc);

  PolicyDecision d;
  d.new_location = state.location;
  std::vector<int> active;
  for (int v = 0; v < acc.size(); ++v)
    if (state.counters[v] < state.tau * state.threshold) active.push_back(v);

  if (state.counters[state.location] >= state.threshold && !active.empty()) {
    const int target = gravity_center(acc, active, state.epoch_weights);
    d.new_location = target;
    d.migrated = true;
    d.migration_cost_paid = mig.cost(state.location, target);
    state.location = target;
    ++state.phase_index;
  } else if (active.empty()) {
    d.epoch_ended = true;
    state.reset_pending = true;
  }
  return d;
}

}  // namespace migsim
