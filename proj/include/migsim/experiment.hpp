#pragma once

#include <cmath>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "migsim/harness.hpp"

namespace migsim {

// Flat experiment description; the JSON config file maps onto this 1:1.
struct ExperimentConfig {
  // network source: file, or generator (single provider or PIP ring)
  std::string network_file;  // empty = use generator
  int net_n = 0;             // nodes (single provider)
  int net_pips = 1;
  int net_n_per_pip = 0;
  double net_p = 0.5;
  std::vector<double> net_bandwidths = {1.544, 6.312};  // T1 / T2
  bool net_latency_unit = true;
  double net_latency_lo = 1.0;
  double net_latency_hi = 1.0;
  double net_inter_bw = 1.544;
  double net_inter_latency = 1.0;

  // scenario
  std::string scenario = "time_zones";
  int rounds = 200;
  double p_hot = 60.0;
  double lambda = 10.0;
  int requests_per_round = 0;  // 0 = one fifth of the network size
  int commuter_T = 4;
  int commuter_center = -1;  // -1 = network center

  // cost parameters
  double server_size_mbit = 2048.0 * 8.0;
  double pi_over_beta = 3.0;
  double tau = 1.0 / 3.0;
  double tau_large = 1.0 / 40.0;
  std::string metric = "hops";
  std::string path_mode = "optimal";

  // run control
  std::vector<std::string> policies = {"stat", "rand", "det"};
  int repetitions = 10;
  std::uint64_t base_seed = 1;
  std::string output_dir = "out";
  bool opt_enabled = true;
  double opt_budget = 1e9;  // refuse OPT when n^2 * total requests exceeds it
  bool charge_before_migration = false;
  int v0 = -1;  // -1 = network center

  AccessMetric access_metric() const {
    if (metric == "hops") return AccessMetric::hops;
    if (metric == "latency") return AccessMetric::latency;
    throw std::invalid_argument("metric: expected 'hops' or 'latency'");
  }

  MigrationPathMode migration_path_mode() const {
    if (path_mode == "optimal") return MigrationPathMode::optimal;
    if (path_mode == "shortest_latency") return MigrationPathMode::shortest_latency;
    throw std::invalid_argument("path_mode: expected 'optimal' or 'shortest_latency'");
  }

  void validate() const {
    if (network_file.empty() && net_n < 1 && net_n_per_pip < 1)
      throw std::invalid_argument(
          "network_file: provide a file or generator sizes (net_n or net_pips/net_n_per_pip)");
    if (!network_file.empty() && (net_n > 0 || net_n_per_pip > 0))
      throw std::invalid_argument("network_file: conflicts with generator fields");
    if (net_pips < 1) throw std::invalid_argument("net_pips: must be >= 1");
    if (net_pips > 1 && net_n_per_pip < 1)
      throw std::invalid_argument("net_n_per_pip: required when net_pips > 1");
    if (!(net_p > 0.0) || net_p > 1.0)
      throw std::invalid_argument("net_p: must be in (0,1]");
    if (net_bandwidths.empty())
      throw std::invalid_argument("net_bandwidths: must be nonempty");
    if (scenario != "time_zones" && scenario != "commuter")
      throw std::invalid_argument("scenario: expected 'time_zones' or 'commuter'");
    if (rounds < 1) throw std::invalid_argument("rounds: must be >= 1");
    if (p_hot < 0 || p_hot > 100)
      throw std::invalid_argument("p_hot: must be in [0,100]");
    if (!(lambda > 0)) throw std::invalid_argument("lambda: must be > 0");
    if (commuter_T < 2 || commuter_T % 2 != 0)
      throw std::invalid_argument("commuter_T: must be even and >= 2");
    if (!(server_size_mbit > 0))
      throw std::invalid_argument("server_size_mbit: must be > 0");
    if (pi_over_beta < 0) throw std::invalid_argument("pi_over_beta: must be >= 0");
    if (!(tau > 0 && tau < 1)) throw std::invalid_argument("tau: must be in (0,1)");
    if (!(tau_large > 0 && tau_large < 1))
      throw std::invalid_argument("tau_large: must be in (0,1)");
    access_metric();
    migration_path_mode();
    if (policies.empty()) throw std::invalid_argument("policies: must be nonempty");
    for (const auto& p : policies) policy_from_name(p);
    if (repetitions < 1) throw std::invalid_argument("repetitions: must be >= 1");
    if (rounds > 0 && requests_per_round < 0)
      throw std::invalid_argument("requests_per_round: must be >= 0");
  }
};

struct RunSummary {
  PolicyKind policy = PolicyKind::stat;
  std::uint64_t seed = 0;
  double access_total = 0.0;
  double migration_total = 0.0;
  double total = 0.0;
  std::optional<double> opt_total;
  std::optional<Ratio> ratio;
};

struct PolicyAggregate {
  std::string policy;
  double mean_total = 0.0;
  double stddev_total = 0.0;
  double mean_ratio = 0.0;
  double min_ratio = 0.0;
  double max_ratio = 0.0;
  int unbounded_count = 0;
  int ratio_count = 0;  // bounded ratios that entered the mean
};

struct RepetitionData {
  std::uint64_t seed = 0;
  SubstrateNetwork net;
  RequestTrace trace;
  int v0 = 0;
  std::optional<double> opt_total;
  std::vector<CostLedger> ledgers;  // one per requested policy, config order
};

struct ExperimentResult {
  ExperimentConfig config;
  std::vector<RepetitionData> repetitions;
  std::vector<RunSummary> summaries;     // policy-major, then seed
  std::vector<PolicyAggregate> aggregates;
  std::vector<std::string> warnings;
};

namespace detail {

inline SubstrateNetwork build_network(const ExperimentConfig& cfg,
                                      std::uint64_t seed) {
  if (!cfg.network_file.empty()) {
    throw std::logic_error("build_network: file loading handled by caller");
  }
  LatencySpec lat = cfg.net_latency_unit
                        ? LatencySpec::unit()
                        : LatencySpec::uniform(cfg.net_latency_lo, cfg.net_latency_hi);
  if (cfg.net_pips <= 1) {
    return generate_erdos_renyi(cfg.net_n, cfg.net_p, cfg.net_bandwidths, lat, 0,
                                derive_seed(seed, 101));
  }
  std::vector<SubstrateNetwork> subnets;
  for (int i = 0; i < cfg.net_pips; ++i)
    subnets.push_back(generate_erdos_renyi(cfg.net_n_per_pip, cfg.net_p,
                                           cfg.net_bandwidths, lat, 0,
                                           derive_seed(seed, 200 + i)));
  return compose_pip_ring(subnets, cfg.net_inter_bw, cfg.net_inter_latency,
                          derive_seed(seed, 102));
}

inline RequestTrace build_trace(const ExperimentConfig& cfg,
                                const SubstrateNetwork& net,
                                const AccessMatrix& acc, std::uint64_t seed) {
  if (cfg.scenario == "time_zones") {
    int per_round = cfg.requests_per_round;
    if (per_round <= 0) per_round = std::max(1, net.node_count() / 5);
    return gen_time_zones(net, cfg.rounds, cfg.p_hot, cfg.lambda, per_round,
                          derive_seed(seed, 103));
  }
  int center = cfg.commuter_center;
  if (center < 0) center = stat_center(net, acc);
  return gen_commuter(net, cfg.commuter_T, cfg.lambda, cfg.rounds, center,
                      derive_seed(seed, 104), cfg.access_metric());
}

inline double sample_stddev(const std::vector<double>& xs, double mean) {
  if (xs.size() < 2) return 0.0;
  double s = 0.0;
  for (double x : xs) s += (x - mean) * (x - mean);
  return std::sqrt(s / static_cast<double>(xs.size() - 1));
}

}  // namespace detail

// Runs every requested policy over `repetitions` freshly seeded instances
// (seed_i = base_seed + i), optionally computes the offline optimum per
// instance, and aggregates totals and ratios per policy. Fully deterministic
// given the config.
inline ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  ExperimentResult result;
  result.config = cfg;

  std::optional<SubstrateNetwork> file_net;
  if (!cfg.network_file.empty()) {
    std::ostringstream buf;
    std::ifstream in(cfg.network_file);
    if (!in) throw std::runtime_error("cannot open network file " + cfg.network_file);
    buf << in.rdbuf();
    file_net = parse_network(buf.str());
  }

  for (int i = 0; i < cfg.repetitions; ++i) {
    RepetitionData rep;
    rep.seed = cfg.base_seed + static_cast<std::uint64_t>(i);
    rep.net = file_net ? *file_net : detail::build_network(cfg, rep.seed);

    const AccessMatrix acc = access_cost_matrix(rep.net, cfg.access_metric());
    const CostModel cm = derive_cost_parameters(
        rep.net, cfg.server_size_mbit, cfg.pi_over_beta, cfg.access_metric(),
        cfg.migration_path_mode(), cfg.tau, cfg.tau_large);
    const MigrationTable mig = migration_cost_table(rep.net, cm);

    rep.trace = detail::build_trace(cfg, rep.net, acc, rep.seed);
    rep.v0 = cfg.v0 >= 0 ? cfg.v0 : stat_center(rep.net, acc);
    if (rep.v0 >= rep.net.node_count())
      throw std::invalid_argument("v0: node out of range");

    if (cfg.opt_enabled) {
      const double work = static_cast<double>(rep.net.node_count()) *
                          rep.net.node_count() * rep.trace.total_requests();
      if (work > cfg.opt_budget) {
        std::ostringstream msg;
        msg << "opt: refusing offline optimum: n^2 * total requests = " << work
            << " exceeds budget " << cfg.opt_budget
            << " (disable opt or raise opt_budget)";
        throw std::runtime_error(msg.str());
      }
      OptTable table = opt_table(rep.net, rep.trace, rep.v0, acc, cm, mig);
      rep.opt_total = table.minimum();
    }

    for (const std::string& pname : cfg.policies) {
      const PolicyKind kind = policy_from_name(pname);
      const std::uint64_t pseed =
          derive_seed(rep.seed, static_cast<std::uint64_t>(kind) + 7);
      rep.ledgers.push_back(run_policy(rep.net, rep.trace, kind, rep.v0, cm,
                                       acc, mig, pseed,
                                       cfg.charge_before_migration));
    }
    result.repetitions.push_back(std::move(rep));
  }

  // Summaries, policy-major for stable output order.
  for (std::size_t p = 0; p < cfg.policies.size(); ++p) {
    for (const RepetitionData& rep : result.repetitions) {
      const CostLedger& led = rep.ledgers[p];
      RunSummary s;
      s.policy = led.policy;
      s.seed = rep.seed;
      s.access_total = led.access_total;
      s.migration_total = led.migration_total;
      s.total = led.grand_total;
      if (rep.opt_total) {
        s.opt_total = rep.opt_total;
        s.ratio = competitive_ratio(led.grand_total, *rep.opt_total);
        if (s.ratio->unbounded) {
          std::ostringstream w;
          w << "unbounded ratio (opt=0, alg>0) for policy=" << policy_name(led.policy)
            << " seed=" << rep.seed << "; excluded from the mean";
          result.warnings.push_back(w.str());
        }
      }
      result.summaries.push_back(s);
    }
  }

  for (std::size_t p = 0; p < cfg.policies.size(); ++p) {
    PolicyAggregate agg;
    agg.policy = cfg.policies[p];
    std::vector<double> totals, ratios;
    for (const RepetitionData& rep : result.repetitions) {
      totals.push_back(rep.ledgers[p].grand_total);
      if (rep.opt_total) {
        const Ratio r = competitive_ratio(rep.ledgers[p].grand_total, *rep.opt_total);
        if (r.unbounded)
          ++agg.unbounded_count;
        else
          ratios.push_back(r.value);
      }
    }
    for (double t : totals) agg.mean_total += t;
    agg.mean_total /= static_cast<double>(totals.size());
    agg.stddev_total = detail::sample_stddev(totals, agg.mean_total);
    agg.ratio_count = static_cast<int>(ratios.size());
    if (!ratios.empty()) {
      agg.min_ratio = ratios.front();
      agg.max_ratio = ratios.front();
      for (double r : ratios) {
        agg.mean_ratio += r;
        agg.min_ratio = std::min(agg.min_ratio, r);
        agg.max_ratio = std::max(agg.max_ratio, r);
      }
      agg.mean_ratio /= static_cast<double>(ratios.size());
    }
    result.aggregates.push_back(agg);
  }
  return result;
}

}  // namespace migsim
