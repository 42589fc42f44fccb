#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <vector>

#include "migsim/policies.hpp"

namespace migsim {

// ceil(pi/beta), at least 1; tolerant of representation noise in the ratio.
inline long small_epochs_per_large(const CostModel& cm) {
  const long c = static_cast<long>(std::ceil(cm.pi / cm.beta - 1e-9));
  return c < 1 ? 1 : c;
}

// Nested-epoch bookkeeping shared by PRAND and PDET. counter accumulates over
// the small epoch, counter_large over the large epoch; activity flags are
// scoped to the huge epoch and only ever cleared inside it.
struct MultiPolicyState {
  PolicyKind kind = PolicyKind::prand;
  int location = 0;
  double beta = 1.0;
  double pi = 0.0;
  double tau = 1.0 / 3.0;
  double tau_large = 1.0 / 40.0;
  long small_per_large = 1;

  std::vector<int> node_pip;
  std::vector<std::vector<int>> pip_nodes;

  std::vector<double> counter;
  std::vector<double> counter_large;
  std::vector<double> small_weights;  // request multiset of the small epoch
  std::vector<double> huge_weights;   // request multiset of the huge epoch

  std::vector<char> pip_active;        // prand
  std::vector<char> node_active_huge;  // pdet

  long small_epochs_done = 0;  // completed within the current large epoch
  long small_epoch_index = 0;
  long large_epoch_index = 0;
  long huge_epoch_index = 0;
  long phase_index = 0;

  bool small_reset_pending = false;
  bool large_reset_pending = false;
  bool huge_reset_pending = false;

  Rng rng{0};

  int current_pip() const { return node_pip[location]; }
};

inline MultiPolicyState make_multi_state(PolicyKind kind,
                                         const SubstrateNetwork& net,
                                         const CostModel& cm, int v0,
                                         std::uint64_t seed) {
  if (v0 < 0 || v0 >= net.node_count())
    throw std::invalid_argument("initial location out of range");
  if (cm.pi < cm.beta)
    std::fprintf(stderr,
                 "warning: pi (%g) < beta (%g); multi-provider epochs assume "
                 "pi >= beta\n",
                 cm.pi, cm.beta);
  MultiPolicyState st;
  st.kind = kind;
  st.location = v0;
  st.beta = cm.beta;
  st.pi = cm.pi;
  st.tau = cm.det_tau;
  st.tau_large = cm.det_tau_large;
  st.small_per_large = small_epochs_per_large(cm) *
                       (kind == PolicyKind::pdet ? 40 : 1);
  const int n = net.node_count();
  st.node_pip.resize(n);
  st.pip_nodes.assign(net.pip_count(), {});
  for (int v = 0; v < n; ++v) {
    st.node_pip[v] = net.nodes[v].pip;
    st.pip_nodes[net.nodes[v].pip].push_back(v);
  }
  st.counter.assign(n, 0.0);
  st.counter_large.assign(n, 0.0);
  st.small_weights.assign(n, 0.0);
  st.huge_weights.assign(n, 0.0);
  st.pip_active.assign(st.pip_nodes.size(), 1);
  st.node_active_huge.assign(n, 1);
  st.rng = Rng(seed);
  return st;
}

namespace detail {

inline void multi_apply_resets(MultiPolicyState& st) {
  if (st.huge_reset_pending) {
    std::fill(st.pip_active.begin(), st.pip_active.end(), 1);
    std::fill(st.node_active_huge.begin(), st.node_active_huge.end(), 1);
    std::fill(st.huge_weights.begin(), st.huge_weights.end(), 0.0);
    ++st.huge_epoch_index;
    st.huge_reset_pending = false;
  }
  if (st.large_reset_pending) {
    std::fill(st.counter_large.begin(), st.counter_large.end(), 0.0);
    st.small_epochs_done = 0;
    ++st.large_epoch_index;
    st.large_reset_pending = false;
  }
  if (st.small_reset_pending) {
    std::fill(st.counter.begin(), st.counter.end(), 0.0);
    std::fill(st.small_weights.begin(), st.small_weights.end(), 0.0);
    ++st.small_epoch_index;
    st.phase_index = 0;
    st.small_reset_pending = false;
  }
}

inline void multi_update(MultiPolicyState& st, const RequestRound& round,
                         const AccessMatrix& acc) {
  for (int r : round.origins) {
    st.small_weights[r] += 1.0;
    st.huge_weights[r] += 1.0;
    for (int v = 0; v < acc.size(); ++v) {
      const double d = acc(r, v);
      st.counter[v] += d;
      st.counter_large[v] += d;
    }
  }
}

}  // namespace detail

// PRAND: RAND inside the current provider per small epoch. After
// small_per_large small epochs the large epoch closes: providers whose nodes
// all accumulated counterLarge >= pi are switched off for the rest of the
// huge epoch, and the server jumps to a uniformly random node of a uniformly
// random surviving provider (possibly the current one). With every provider
// off, the server stays and a fresh huge epoch begins.
inline PolicyDecision prand_step(MultiPolicyState& state,
                                 const RequestRound& round,
                                 const AccessMatrix& acc, const CostModel& /*cm*/,
                                 const MigrationTable& mig) {
  if (state.kind != PolicyKind::prand)
    throw std::invalid_argument("prand_step on non-prand state");
  detail::multi_apply_resets(state);
  detail::multi_update(state, round, acc);

  PolicyDecision d;
  d.new_location = state.location;
  if (state.counter[state.location] < state.beta) return d;

  const int pip = state.current_pip();
  std::vector<int> below;
  for (int v : state.pip_nodes[pip])
    if (state.counter[v] < state.beta) below.push_back(v);

  if (!below.empty()) {
    const int target = below[state.rng.index(below.size())];
    d.new_location = target;
    d.migrated = true;
    d.migration_cost_paid = mig.cost(state.location, target);
    state.location = target;
    ++state.phase_index;
    return d;
  }

  // Small epoch ends in this round.
  d.epoch_ended = true;
  state.small_reset_pending = true;
  ++state.small_epochs_done;
  if (state.small_epochs_done < state.small_per_large) return d;

  // Large epoch ends: deactivate exhausted providers.
  d.large_epoch_ended = true;
  state.large_reset_pending = true;
  for (std::size_t p = 0; p < state.pip_nodes.size(); ++p) {
    if (!state.pip_active[p]) continue;
    bool any_below = false;
    for (int v : state.pip_nodes[p])
      if (state.counter_large[v] < state.pi) {
        any_below = true;
        break;
      }
    if (!any_below) state.pip_active[p] = 0;
  }
  std::vector<int> active_pips;
  for (std::size_t p = 0; p < state.pip_active.size(); ++p)
    if (state.pip_active[p]) active_pips.push_back(static_cast<int>(p));

  if (!active_pips.empty()) {
    const int p = active_pips[state.rng.index(active_pips.size())];
    const int target =
        state.pip_nodes[p][state.rng.index(state.pip_nodes[p].size())];
    if (target != state.location) {
      d.new_location = target;
      d.migrated = true;
      d.migration_cost_paid = mig.cost(state.location, target);
      state.location = target;
    }
  } else {
    d.huge_epoch_ended = true;
    state.huge_reset_pending = true;
  }
  return d;
}

// PDET: DET inside the current provider per small epoch, with active nodes
// additionally required to be alive in the huge epoch. After 40*ceil(pi/beta)
// small epochs the large epoch closes: nodes whose counterLarge reached
// tau_large*pi are switched off for the rest of the huge epoch, and the
// server moves to the gravity center of the surviving nodes network-wide,
// weighted by the huge epoch's requests. With no survivors the server stays
// and a fresh huge epoch begins.
inline PolicyDecision pdet_step(MultiPolicyState& state,
                                const RequestRound& round,
                                const AccessMatrix& acc, const CostModel& /*cm*/,
                                const MigrationTable& mig) {
  if (state.kind != PolicyKind::pdet)
    throw std::invalid_argument("pdet_step on non-pdet state");
  detail::multi_apply_resets(state);
  detail::multi_update(state, round, acc);

  PolicyDecision d;
  d.new_location = state.location;

  const int pip = state.current_pip();
  std::vector<int> active_small;
  for (int v : state.pip_nodes[pip])
    if (state.node_active_huge[v] && state.counter[v] < state.tau * state.beta)
      active_small.push_back(v);

  if (state.counter[state.location] >= state.beta && !active_small.empty()) {
    const int target = gravity_center(acc, active_small, state.small_weights);
    if (target != state.location) {
      d.new_location = target;
      d.migrated = true;
      d.migration_cost_paid = mig.cost(state.location, target);
      state.location = target;
    }
    ++state.phase_index;
    return d;
  }
  if (!active_small.empty()) return d;  // no trigger, epoch continues

  // Small epoch ends in this round.
  d.epoch_ended = true;
  state.small_reset_pending = true;
  ++state.small_epochs_done;
  if (state.small_epochs_done < state.small_per_large) return d;

  // Large epoch ends: deactivate saturated nodes everywhere.
  d.large_epoch_ended = true;
  state.large_reset_pending = true;
  for (int v = 0; v < static_cast<int>(state.node_active_huge.size()); ++v)
    if (state.node_active_huge[v] &&
        state.counter_large[v] >= state.tau_large * state.pi)
      state.node_active_huge[v] = 0;

  std::vector<int> active_all;
  for (int v = 0; v < static_cast<int>(state.node_active_huge.size()); ++v)
    if (state.node_active_huge[v]) active_all.push_back(v);

  if (!active_all.empty()) {
    const int target = gravity_center(acc, active_all, state.huge_weights);
    if (target != state.location) {
      d.new_location = target;
      d.migrated = true;
      d.migration_cost_paid = mig.cost(state.location, target);
      state.location = target;
    }
  } else {
    d.huge_epoch_ended = true;
    state.huge_reset_pending = true;
  }
  return d;
}

}  // namespace migsim
