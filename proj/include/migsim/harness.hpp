#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "migsim/multiprovider.hpp"
#include "migsim/offline.hpp"
#include "migsim/policies.hpp"
#include "migsim/workload.hpp"

namespace migsim {

struct RoundRecord {
  int round_index = 0;
  int location_before = 0;
  int location_after = 0;
  double access_cost = 0.0;
  double migration_cost = 0.0;
  bool epoch_ended = false;
  bool large_epoch_ended = false;
  bool huge_epoch_ended = false;
};

// Per-round cost accounting for one policy run.
// grand_total = access_total + migration_total, exactly.
struct CostLedger {
  PolicyKind policy = PolicyKind::stat;
  std::uint64_t seed = 0;
  std::vector<RoundRecord> records;
  double access_total = 0.0;
  double migration_total = 0.0;
  double grand_total = 0.0;
};

// Plays the round-based game: requests arrive, the policy decides (and pays
// any migration), then the round's access cost is charged from the
// post-decision location. charge_before_migration flips the last two steps
// for sensitivity studies.
inline CostLedger run_policy(const SubstrateNetwork& net,
                             const RequestTrace& trace, PolicyKind kind, int v0,
                             const CostModel& cm, const AccessMatrix& acc,
                             const MigrationTable& mig, std::uint64_t seed,
                             bool charge_before_migration = false) {
  validate_trace_against(trace, net);
  if (v0 < 0 || v0 >= net.node_count())
    throw std::invalid_argument("run_policy: v0 out of range");

  CostLedger ledger;
  ledger.policy = kind;
  ledger.seed = seed;

  IntraPolicyState intra;
  MultiPolicyState multi;
  const bool is_multi = kind == PolicyKind::prand || kind == PolicyKind::pdet;
  if (kind == PolicyKind::rand || kind == PolicyKind::det)
    intra = make_intra_state(kind, net, cm, v0, seed);
  else if (is_multi)
    multi = make_multi_state(kind, net, cm, v0, seed);

  int location = v0;
  for (const RequestRound& round : trace.rounds) {
    RoundRecord rec;
    rec.round_index = round.round_index;
    rec.location_before = location;

    PolicyDecision d;
    d.new_location = location;
    switch (kind) {
      case PolicyKind::stat:
        break;  // never migrates
      case PolicyKind::rand:
        d = rand_step(intra, round, acc, cm, mig);
        break;
      case PolicyKind::det:
        d = det_step(intra, round, acc, cm, mig);
        break;
      case PolicyKind::prand:
        d = prand_step(multi, round, acc, cm, mig);
        break;
      case PolicyKind::pdet:
        d = pdet_step(multi, round, acc, cm, mig);
        break;
    }

    const int charge_at = charge_before_migration ? rec.location_before
                                                  : d.new_location;
    rec.access_cost = detail::round_access_at(round, charge_at, acc);
    rec.migration_cost = d.migration_cost_paid;
    rec.location_after = d.new_location;
    rec.epoch_ended = d.epoch_ended;
    rec.large_epoch_ended = d.large_epoch_ended;
    rec.huge_epoch_ended = d.huge_epoch_ended;
    location = d.new_location;

    ledger.access_total += rec.access_cost;
    ledger.migration_total += rec.migration_cost;
    ledger.records.push_back(rec);
  }
  ledger.grand_total = ledger.access_total + ledger.migration_total;
  return ledger;
}

// Competitive ratio with the degenerate cases pinned: 0/0 counts as 1, and a
// positive cost against a zero optimum is flagged unbounded rather than
// averaged away.
struct Ratio {
  double value = 1.0;
  bool unbounded = false;
};

inline Ratio competitive_ratio(double ledger_total, double opt_total) {
  if (ledger_total < 0 || opt_total < 0)
    throw std::invalid_argument("competitive_ratio: negative cost");
  if (opt_total > 0) return {ledger_total / opt_total, false};
  if (ledger_total == 0) return {1.0, false};
  return {0.0, true};
}

}  // namespace migsim
