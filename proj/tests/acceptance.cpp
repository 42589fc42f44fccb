// Acceptance suite: end-to-end checks over randomized instances, one
// pass/fail line per criterion. Exits nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "migsim/config_json.hpp"
#include "migsim/migsim.hpp"
#include "oracles.hpp"

using namespace migsim;
namespace fs = std::filesystem;

namespace {

int g_failures = 0;

void criterion(int num, const std::string& name,
               const std::function<std::string()>& body) {
  const auto start = std::chrono::steady_clock::now();
  std::string detail;
  bool ok = true;
  try {
    detail = body();
  } catch (const std::exception& e) {
    ok = false;
    detail = std::string("exception: ") + e.what();
  }
  if (detail.rfind("FAIL", 0) == 0) ok = false;
  const auto secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  std::ostringstream line;
  line.setf(std::ios::fixed);
  line.precision(1);
  line << (ok ? "[PASS] " : "[FAIL] ") << num << ". " << name << " -- "
       << detail << " (" << secs << "s)";
  std::cout << line.str() << std::endl;
  if (!ok) ++g_failures;
}

double round_access(const RequestRound& round, int node, const AccessMatrix& acc) {
  double s = 0.0;
  for (int r : round.origins) s += acc(r, node);
  return s;
}

// ---- criterion 1: DP vs brute force -------------------------------------

std::string crit_offline_oracle() {
  migsim::Rng rng(1001);
  int cases = 0;
  double worst = 0.0;
  const double pi_mults[] = {0.0, 1.0, 3.0};
  for (int iter = 0; iter < 54; ++iter) {
    const int n = 2 + static_cast<int>(rng.index(4));  // 2..5
    const bool constant_bw = iter % 2 == 0;
    const std::vector<double> bws =
        constant_bw ? std::vector<double>{iter % 4 == 0 ? 1.0 : 2.0}
                    : std::vector<double>{1.0, 2.0};
    const auto net = oracle::random_connected_graph(
        rng, n, 0.4, bws, 1 + static_cast<int>(rng.index(2)));
    const double size = 2.0 * (1 + rng.index(2));  // 2 or 4
    const auto cm = derive_cost_parameters(net, size, pi_mults[iter % 3]);
    const auto acc = access_cost_matrix(net, AccessMetric::hops);
    const auto mig = migration_cost_table(net, cm);
    const auto trace = oracle::random_trace(rng, n, 5, 3, 0.25);
    const int v0 = static_cast<int>(rng.index(n));

    const double dp = opt_table(net, trace, v0, acc, cm, mig).minimum();
    const double brute =
        brute_force_opt(net, trace, v0, acc, cm, mig).total_cost;
    const double delta = std::abs(dp - brute);
    worst = std::max(worst, delta);
    if (constant_bw) {
      // integral costs: sizes and pi are integer multiples of 1/bw sums
      if (dp != brute) return "FAIL: exact mismatch on integral instance";
    } else if (delta > 1e-9) {
      return "FAIL: |dp - brute| = " + std::to_string(delta);
    }
    ++cases;
  }
  std::ostringstream out;
  out << cases << " instances, max |delta| = " << worst;
  return out.str();
}

// ---- criterion 2: migration-path optimizer ------------------------------

std::string crit_migration_paths() {
  migsim::Rng rng(1002);
  int pairs = 0;
  for (int iter = 0; iter < 100; ++iter) {
    const int n = 3 + static_cast<int>(rng.index(6));  // 3..8
    const int pips = 1 + static_cast<int>(rng.index(3));
    const auto net = oracle::random_connected_graph(
        rng, n, 0.35, {1.0, 2.0, 8.0}, pips);
    CostModel cm;
    cm.server_size = 16.0;
    cm.beta = 4.0;
    cm.pi = (iter % 3) * 4.0;
    const auto mig = migration_cost_table(net, cm);
    for (int u = 0; u < n; ++u)
      for (int v = 0; v < n; ++v) {
        const double expect =
            u == v ? 0.0 : oracle::simple_path_min_migration(net, cm, u, v);
        if (mig.cost(u, v) != expect)
          return "FAIL: pair (" + std::to_string(u) + "," + std::to_string(v) +
                 ") table=" + std::to_string(mig.cost(u, v)) +
                 " brute=" + std::to_string(expect);
        ++pairs;
      }
  }
  return "100 graphs, " + std::to_string(pairs) + " pairs, all exact";
}

// ---- criterion 3: ratio floor -------------------------------------------

std::string crit_ratio_floor() {
  const std::vector<PolicyKind> kinds = {PolicyKind::stat, PolicyKind::rand,
                                         PolicyKind::det, PolicyKind::prand,
                                         PolicyKind::pdet};
  double min_ratio = 1e18;
  int runs = 0;
  for (int inst = 0; inst < 20; ++inst) {
    const std::uint64_t seed = 3000 + inst;
    SubstrateNetwork net;
    if (inst % 2 == 0) {
      net = generate_erdos_renyi(20, 0.3, {1.0, 2.0}, LatencySpec::unit(), 0,
                                 seed);
    } else {
      std::vector<SubstrateNetwork> subs;
      for (int i = 0; i < 2; ++i)
        subs.push_back(generate_erdos_renyi(10, 0.5, {1.0, 2.0},
                                            LatencySpec::unit(), 0,
                                            derive_seed(seed, i)));
      net = compose_pip_ring(subs, 1.0, 1.0, seed);
    }
    const auto acc = access_cost_matrix(net, AccessMetric::hops);
    // keep beta small so every policy actually migrates
    const auto cm = derive_cost_parameters(net, 30.0, 3.0);
    const auto mig = migration_cost_table(net, cm);
    const int v0 = stat_center(net, acc);

    RequestTrace trace;
    if (inst < 10)
      trace = gen_time_zones(net, 100, 60.0, 10.0, 4, derive_seed(seed, 9));
    else
      trace = gen_commuter(net, 4, 5.0, 100, v0, derive_seed(seed, 9));

    const double opt = opt_table(net, trace, v0, acc, cm, mig).minimum();
    for (PolicyKind kind : kinds) {
      const auto led =
          run_policy(net, trace, kind, v0, cm, acc, mig, derive_seed(seed, 33));
      if (led.grand_total < opt - 1e-9)
        return "FAIL: " + std::string(policy_name(kind)) + " total " +
               std::to_string(led.grand_total) + " below opt " +
               std::to_string(opt);
      const Ratio r = competitive_ratio(led.grand_total, opt);
      if (!r.unbounded) min_ratio = std::min(min_ratio, r.value);
      ++runs;
    }
  }
  std::ostringstream out;
  out << runs << " runs, min ratio = " << min_ratio;
  return out.str();
}

// ---- criterion 4: intra-provider epoch invariants ------------------------

std::string crit_epoch_invariants() {
  long violations = 0;
  long rand_epochs = 0, det_migrations = 0, det_phases = 0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const std::vector<double> bws =
        seed % 2 == 0 ? std::vector<double>{1.0} : std::vector<double>{1.0, 2.0};
    const auto net = generate_erdos_renyi(25, 0.3, bws, LatencySpec::unit(), 0,
                                          4000 + seed);
    const auto acc = access_cost_matrix(net, AccessMetric::hops);
    // scale beta so the 1000 rounds cover many epochs
    const auto cm = derive_cost_parameters(net, 100.0, 3.0);
    const auto mig = migration_cost_table(net, cm);
    // hotspot-skewed traffic; uniform load would rarely leave active nodes
    const auto trace =
        gen_time_zones(net, 1000, 70.0, 8.0, 5, derive_seed(seed, 2));

    // RAND: epoch-end certificate and target legality
    auto rs = make_intra_state(PolicyKind::rand, net, cm, 0, seed);
    for (const auto& round : trace.rounds) {
      const int before = rs.location;
      const auto d = rand_step(rs, round, acc, cm, mig);
      if (d.epoch_ended) {
        ++rand_epochs;
        for (int v = 0; v < 25; ++v)
          if (rs.counters[v] < rs.threshold) ++violations;
      }
      if (d.migrated &&
          (rs.counters[d.new_location] >= rs.threshold || d.new_location == before))
        ++violations;
    }

    // DET: active gravity-minimal targets and the per-phase access bound
    auto ds = make_intra_state(PolicyKind::det, net, cm, 0, seed);
    double phase_access = 0.0, max_mass = 0.0;
    for (const auto& round : trace.rounds) {
      const auto d = det_step(ds, round, acc, cm, mig);
      const double mass = round_access(round, d.new_location, acc);
      max_mass = std::max(max_mass, mass);
      if (d.migrated) {
        ++det_migrations;
        const double cap = ds.tau * ds.threshold;
        if (ds.counters[d.new_location] >= cap) ++violations;
        int expect = -1;
        for (int v = 0; v < 25; ++v) {
          if (ds.counters[v] >= cap) continue;
          if (expect < 0 || ds.counters[v] < ds.counters[expect]) expect = v;
        }
        if (d.new_location != expect) ++violations;
        // the closed phase respected the threshold overshoot bound
        if (phase_access > ds.threshold + max_mass + 1e-9) ++violations;
        ++det_phases;
        phase_access = mass;
      } else {
        phase_access += mass;
      }
      if (d.epoch_ended) {
        if (phase_access > ds.threshold + max_mass + 1e-9) ++violations;
        ++det_phases;
        phase_access = 0.0;
      }
    }
  }
  if (violations > 0 || rand_epochs == 0 || det_migrations == 0)
    return "FAIL: " + std::to_string(violations) + " violations, " +
           std::to_string(rand_epochs) + " rand epochs, " +
           std::to_string(det_migrations) + " det migrations";
  return "0 violations over " + std::to_string(rand_epochs) +
         " rand epochs, " + std::to_string(det_migrations) +
         " det migrations, " + std::to_string(det_phases) + " det phases";
}

// ---- criterion 5: multi-provider epoch structure --------------------------

std::string crit_multiprovider_structure() {
  long violations = 0;
  long large_bounds = 0, inter_moves = 0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    std::vector<SubstrateNetwork> subs;
    for (int i = 0; i < 3; ++i)
      subs.push_back(generate_erdos_renyi(15, 0.4, {1.0}, LatencySpec::unit(),
                                          0, 5000 + 10 * seed + i));
    const auto net = compose_pip_ring(subs, 1.0, 1.0, seed);
    const auto acc = access_cost_matrix(net, AccessMetric::hops);
    const auto cm = derive_cost_parameters(net, 60.0, 3.0);  // pi = 3 beta
    const auto mig = migration_cost_table(net, cm);
    migsim::Rng trng(derive_seed(seed, 3));
    const auto trace = oracle::random_trace(trng, 45, 1000, 9);

    for (PolicyKind kind : {PolicyKind::prand, PolicyKind::pdet}) {
      auto st = make_multi_state(kind, net, cm, 0, seed);
      const long per_large = st.small_per_large;
      long smalls = 0;
      for (const auto& round : trace.rounds) {
        const int before = st.location;
        const auto d = kind == PolicyKind::prand
                           ? prand_step(st, round, acc, cm, mig)
                           : pdet_step(st, round, acc, cm, mig);
        const bool crossed = d.migrated && net.nodes[before].pip !=
                                               net.nodes[d.new_location].pip;
        if (crossed) {
          ++inter_moves;
          if (!d.large_epoch_ended) ++violations;
        }
        if (d.epoch_ended) ++smalls;
        if (d.large_epoch_ended) {
          ++large_bounds;
          if (smalls != per_large) ++violations;
          smalls = 0;
          if (d.migrated) {
            if (kind == PolicyKind::prand &&
                !st.pip_active[net.nodes[d.new_location].pip])
              ++violations;
            if (kind == PolicyKind::pdet && !st.node_active_huge[d.new_location])
              ++violations;
          }
        }
      }
    }
  }
  if (violations > 0 || large_bounds == 0 || inter_moves == 0)
    return "FAIL: " + std::to_string(violations) + " violations, " +
           std::to_string(large_bounds) + " large boundaries, " +
           std::to_string(inter_moves) + " inter-PIP moves";
  return "0 violations over " + std::to_string(large_bounds) +
         " large boundaries, " + std::to_string(inter_moves) +
         " inter-PIP moves";
}

// ---- criterion 6: desk-scale time-zone experiment -------------------------

std::string crit_desk_scale() {
  double det_total = 0.0, rand_total = 0.0;
  double det_ratio = 0.0, rand_ratio = 0.0;
  const int seeds = 10;
  for (int i = 0; i < seeds; ++i) {
    const std::uint64_t seed = 6000 + i;
    const auto net = generate_erdos_renyi(60, 0.1, {1.544, 6.312},
                                          LatencySpec::unit(), 0, seed);
    const auto acc = access_cost_matrix(net, AccessMetric::hops);
    const auto cm = derive_cost_parameters(net, 2048.0 * 8.0, 3.0);
    const auto mig = migration_cost_table(net, cm);
    const int v0 = stat_center(net, acc);
    const auto trace =
        gen_time_zones(net, 200, 60.0, 10.0, 12, derive_seed(seed, 4));

    const double opt = opt_table(net, trace, v0, acc, cm, mig).minimum();
    const auto det =
        run_policy(net, trace, PolicyKind::det, v0, cm, acc, mig, seed);
    const auto rnd =
        run_policy(net, trace, PolicyKind::rand, v0, cm, acc, mig, seed);
    det_total += det.grand_total;
    rand_total += rnd.grand_total;
    det_ratio += det.grand_total / opt;
    rand_ratio += rnd.grand_total / opt;
  }
  det_total /= seeds;
  rand_total /= seeds;
  det_ratio /= seeds;
  rand_ratio /= seeds;

  std::ostringstream out;
  out << "mean ratios det=" << det_ratio << " rand=" << rand_ratio
      << ", mean totals det=" << det_total << " rand=" << rand_total;
  if (det_ratio >= 8.0 || rand_ratio >= 8.0)
    return "FAIL: ratio out of range: " + out.str();
  if (det_total > 1.05 * rand_total)
    return "FAIL: det total above 1.05x rand: " + out.str();
  return out.str();
}

// ---- criterion 7: static baseline -----------------------------------------

std::string crit_static_baseline() {
  migsim::Rng rng(1007);
  for (int iter = 0; iter < 20; ++iter) {
    const int n = 4 + static_cast<int>(rng.index(27));  // 4..30
    const auto net = oracle::random_connected_graph(rng, n, 0.2, {1.0, 2.0});
    const auto acc = access_cost_matrix(net, AccessMetric::hops);
    const int center = stat_center(net, acc);
    const int brute = oracle::minimax_center_hops(net);
    if (center != brute)
      return "FAIL: stat_center " + std::to_string(center) + " != brute " +
             std::to_string(brute);

    const auto cm = derive_cost_parameters(net, 50.0, 3.0);
    const auto mig = migration_cost_table(net, cm);
    const auto trace = oracle::random_trace(rng, n, 50, 4);
    const auto led =
        run_policy(net, trace, PolicyKind::stat, center, cm, acc, mig, 1);
    if (led.migration_total != 0.0) return "FAIL: stat paid migration";
  }
  return "20 graphs, stat_center exact, stat migration always 0";
}

// ---- criterion 8: CLI determinism ------------------------------------------

std::string crit_cli_determinism(const std::string& cli) {
  if (cli.empty()) return "FAIL: CLI path not supplied";
  const fs::path root = fs::path("acceptance_tmp");
  fs::remove_all(root);
  fs::create_directories(root);

  ExperimentConfig cfg;
  cfg.net_n = 12;
  cfg.net_p = 0.5;
  cfg.scenario = "time_zones";
  cfg.rounds = 30;
  cfg.p_hot = 50.0;
  cfg.requests_per_round = 3;
  cfg.policies = {"stat", "rand", "det", "prand", "pdet"};
  cfg.repetitions = 2;
  cfg.base_seed = 77;
  cfg.server_size_mbit = 40.0;
  cfg.output_dir = (root / "default").string();
  write_file_atomic(root / "config.json", serialize_config_json(cfg));

  auto run = [&](const std::string& dir) {
    const std::string cmd = "\"" + cli + "\" --quiet --out \"" + dir +
                            "\" simulate --config \"" +
                            (root / "config.json").string() + "\"";
    return std::system(cmd.c_str());
  };
  if (run((root / "a").string()) != 0) return "FAIL: first simulate run failed";
  if (run((root / "b").string()) != 0) return "FAIL: second simulate run failed";

  for (const char* name :
       {"per_round.csv", "summary.csv", "aggregate.csv", "config_echo.json"}) {
    const std::string a = read_file(root / "a" / name);
    const std::string b = read_file(root / "b" / name);
    if (a != b) return std::string("FAIL: ") + name + " differs between runs";
    if (a.empty()) return std::string("FAIL: ") + name + " is empty";
  }
  fs::remove_all(root);
  return "two simulate runs byte-identical across 4 output files";
}

// ---- criterion 9: one-shot migration dominance -----------------------------

std::string crit_one_shot_dominance() {
  migsim::Rng rng(1009);
  int paths = 0, splits = 0;
  while (paths < 200) {
    const auto net = oracle::random_connected_graph(
        rng, 8 + static_cast<int>(rng.index(5)), 0.3, {1.0, 2.0, 8.0}, 3);
    CostModel cm;
    cm.server_size = 16.0;
    cm.beta = 4.0;
    cm.pi = (paths % 4) * 2.0;
    const auto path = oracle::random_simple_path(rng, net, 8);
    const double whole = path_migration_cost(net, cm, path);
    for (std::size_t cut = 1; cut + 1 < path.size(); ++cut) {
      std::vector<int> a(path.begin(), path.begin() + cut + 1);
      std::vector<int> b(path.begin() + cut, path.end());
      const double split =
          path_migration_cost(net, cm, a) + path_migration_cost(net, cm, b);
      if (whole > split)
        return "FAIL: one-shot " + std::to_string(whole) + " > split " +
               std::to_string(split);
      ++splits;
    }
    ++paths;
  }
  return "200 paths, " + std::to_string(splits) + " splits, dominance exact";
}

}  // namespace

int main(int argc, char** argv) {
  const std::string cli = argc > 1 ? argv[1] : "";

  criterion(1, "offline oracle equivalence", crit_offline_oracle);
  criterion(2, "migration-path optimizer equivalence", crit_migration_paths);
  criterion(3, "ratio floor", crit_ratio_floor);
  criterion(4, "intra-provider epoch invariants", crit_epoch_invariants);
  criterion(5, "multi-provider epoch structure", crit_multiprovider_structure);
  criterion(6, "desk-scale time-zone findings", crit_desk_scale);
  criterion(7, "static baseline", crit_static_baseline);
  criterion(8, "CLI determinism", [&] { return crit_cli_determinism(cli); });
  criterion(9, "one-shot migration dominance", crit_one_shot_dominance);

  if (g_failures > 0) {
    std::cout << g_failures << " criterion(s) failed" << std::endl;
    return 1;
  }
  std::cout << "all acceptance criteria passed" << std::endl;
  return 0;
}
