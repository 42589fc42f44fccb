// Command-line front end: substrate/trace generation, trace-driven policy
// simulation, and the offline optimum.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "migsim/config_json.hpp"
#include "migsim/migsim.hpp"

namespace fs = std::filesystem;
using namespace migsim;

namespace {

struct GlobalOpts {
  std::uint64_t seed = 1;
  std::string out_dir = ".";
  bool quiet = false;
};

void info(const GlobalOpts& g, const std::string& msg) {
  if (!g.quiet) std::cout << msg << '\n';
}

SubstrateNetwork load_network(const std::string& path) {
  return parse_network(read_file(path));
}

struct GenNetOpts {
  int n = 0;
  double p = 0.5;
  int pips = 1;
  int n_per_pip = 0;
  std::vector<double> bw = {1.544, 6.312};
  std::vector<double> latency_range;  // empty = unit latency
  double inter_bw = 1.544;
  double inter_latency = 1.0;
  std::string file = "network.txt";
};

int cmd_gen_net(const GlobalOpts& g, const GenNetOpts& o) {
  LatencySpec lat = o.latency_range.empty()
                        ? LatencySpec::unit()
                        : LatencySpec::uniform(o.latency_range[0], o.latency_range[1]);
  SubstrateNetwork net;
  int attempts = 0;
  if (o.pips <= 1) {
    if (o.n < 1) throw std::runtime_error("gen-net: --n is required");
    net = generate_erdos_renyi(o.n, o.p, o.bw, lat, 0, g.seed, &attempts);
  } else {
    if (o.n_per_pip < 1)
      throw std::runtime_error("gen-net: --n-per-pip is required with --pips");
    std::vector<SubstrateNetwork> subnets;
    for (int i = 0; i < o.pips; ++i)
      subnets.push_back(generate_erdos_renyi(o.n_per_pip, o.p, o.bw, lat, 0,
                                             derive_seed(g.seed, 200 + i),
                                             &attempts));
    net = compose_pip_ring(subnets, o.inter_bw, o.inter_latency,
                           derive_seed(g.seed, 102));
  }
  const fs::path path = fs::path(g.out_dir) / o.file;
  write_file_atomic(path, serialize_network(net));
  info(g, "network: " + std::to_string(net.node_count()) + " nodes, " +
              std::to_string(net.edge_count()) + " edges, " +
              std::to_string(net.pip_count()) + " pips (sampled " +
              std::to_string(attempts) + "x) -> " + path.string());
  return 0;
}

struct GenTraceOpts {
  std::string net_file;
  std::string scenario;
  int rounds = 200;
  double p_hot = 60.0;
  double lambda = 10.0;
  int requests = 0;  // 0 = n/5
  int T = 4;
  int center = -1;
  std::string metric = "hops";
  std::string file = "trace.txt";
};

int cmd_gen_trace(const GlobalOpts& g, const GenTraceOpts& o) {
  if (o.net_file.empty()) throw std::runtime_error("gen-trace: --net is required");
  const SubstrateNetwork net = load_network(o.net_file);
  const AccessMetric metric = o.metric == "latency" ? AccessMetric::latency
                                                    : AccessMetric::hops;
  RequestTrace trace;
  if (o.scenario == "time_zones") {
    const int per_round =
        o.requests > 0 ? o.requests : std::max(1, net.node_count() / 5);
    trace = gen_time_zones(net, o.rounds, o.p_hot, o.lambda, per_round, g.seed);
  } else if (o.scenario == "commuter") {
    int center = o.center;
    if (center < 0)
      center = stat_center(net, access_cost_matrix(net, metric));
    trace = gen_commuter(net, o.T, o.lambda, o.rounds, center, g.seed, metric);
  } else {
    throw std::runtime_error("gen-trace: unknown scenario '" + o.scenario +
                             "' (expected time_zones or commuter)");
  }
  const fs::path path = fs::path(g.out_dir) / o.file;
  write_file_atomic(path, serialize_trace(trace));
  info(g, "trace: " + std::to_string(trace.round_count()) + " rounds, " +
              std::to_string(trace.total_requests()) + " requests -> " +
              path.string());
  return 0;
}

struct SimulateOpts {
  std::string config_file;
  bool plot_data = false;
  bool skip_opt = false;
};

int cmd_simulate(const GlobalOpts& g, const SimulateOpts& o, bool out_overridden) {
  ExperimentConfig cfg = parse_config_json(read_file(o.config_file));
  if (o.skip_opt) cfg.opt_enabled = false;
  const fs::path out_dir = out_overridden ? fs::path(g.out_dir)
                                          : fs::path(cfg.output_dir);

  const ExperimentResult result = run_experiment(cfg);

  write_file_atomic(out_dir / "per_round.csv", per_round_csv(result));
  write_file_atomic(out_dir / "summary.csv", summary_csv(result));
  write_file_atomic(out_dir / "aggregate.csv", aggregate_csv(result));
  write_file_atomic(out_dir / "config_echo.json", serialize_config_json(cfg));
  if (o.plot_data)
    for (const auto& [name, content] : plot_data_files(result))
      write_file_atomic(out_dir / name, content);

  for (const std::string& w : result.warnings)
    std::cerr << "warning: " << w << '\n';
  for (const PolicyAggregate& a : result.aggregates) {
    std::string line = a.policy + ": mean_total=" + fmt(a.mean_total);
    if (a.ratio_count > 0) line += " mean_ratio=" + fmt(a.mean_ratio);
    if (a.unbounded_count > 0)
      line += " unbounded=" + std::to_string(a.unbounded_count);
    info(g, line);
  }
  info(g, "results -> " + out_dir.string());
  return 0;
}

struct OptOpts {
  std::string net_file;
  std::string trace_file;
  int v0 = -1;
  double server_size = 2048.0 * 8.0;
  double pi_over_beta = 3.0;
  std::string metric = "hops";
  std::string path_mode = "optimal";
  double budget = 1e9;
  std::string file = "schedule.csv";
};

int cmd_opt(const GlobalOpts& g, const OptOpts& o) {
  if (o.net_file.empty()) throw std::runtime_error("opt: --net is required");
  if (o.trace_file.empty()) throw std::runtime_error("opt: --trace is required");
  const SubstrateNetwork net = load_network(o.net_file);
  const RequestTrace trace = parse_trace(read_file(o.trace_file));
  validate_trace_against(trace, net);

  const AccessMetric metric = o.metric == "latency" ? AccessMetric::latency
                                                    : AccessMetric::hops;
  const MigrationPathMode mode = o.path_mode == "shortest_latency"
                                     ? MigrationPathMode::shortest_latency
                                     : MigrationPathMode::optimal;
  const CostModel cm = derive_cost_parameters(net, o.server_size,
                                              o.pi_over_beta, metric, mode);
  const AccessMatrix acc = access_cost_matrix(net, metric);
  const double work = static_cast<double>(net.node_count()) *
                      net.node_count() * trace.total_requests();
  if (work > o.budget)
    throw std::runtime_error(
        "opt: refusing offline optimum: n^2 * total requests = " + fmt(work) +
        " exceeds budget " + fmt(o.budget));
  const MigrationTable mig = migration_cost_table(net, cm);
  const int v0 = o.v0 >= 0 ? o.v0 : stat_center(net, acc);
  if (v0 >= net.node_count())
    throw std::runtime_error("opt: --v0 out of range");

  const OptTable table = opt_table(net, trace, v0, acc, cm, mig);
  const MigrationSchedule sched = opt_schedule(table, trace, acc, mig);

  const fs::path path = fs::path(g.out_dir) / o.file;
  write_file_atomic(path, schedule_csv(sched));
  info(g, "opt: total=" + fmt(sched.total_cost) +
              " access=" + fmt(sched.access_total) +
              " migration=" + fmt(sched.migration_total) + " v0=" +
              std::to_string(v0) + " -> " + path.string());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Trace-driven simulator for online service migration on "
               "substrate networks"};
  app.require_subcommand(1);
  app.failure_message([](const CLI::App*, const CLI::Error& e) {
    return std::string("error: ") + e.what() + "\n";
  });

  GlobalOpts g;
  app.add_option("--seed", g.seed, "Base seed for all randomness");
  auto* out_opt = app.add_option("--out", g.out_dir, "Output directory");
  app.add_flag("--quiet", g.quiet, "Suppress informational output");

  GenNetOpts gn;
  auto* gen_net = app.add_subcommand("gen-net", "Generate a substrate network");
  gen_net->add_option("--n", gn.n, "Node count (single provider)");
  gen_net->add_option("--p", gn.p, "Edge probability");
  gen_net->add_option("--pips", gn.pips, "Number of providers (ring composition)");
  gen_net->add_option("--n-per-pip", gn.n_per_pip, "Nodes per provider");
  gen_net->add_option("--bw", gn.bw, "Bandwidth choices, Mbit/s");
  gen_net->add_option("--latency-range", gn.latency_range,
                      "Uniform latency range lo hi (default: unit)")
      ->expected(2);
  gen_net->add_option("--inter-bw", gn.inter_bw, "Inter-provider link bandwidth");
  gen_net->add_option("--inter-latency", gn.inter_latency,
                      "Inter-provider link latency");
  gen_net->add_option("--file", gn.file, "Output file name");

  GenTraceOpts gt;
  auto* gen_trace = app.add_subcommand("gen-trace", "Generate a request trace");
  gen_trace->add_option("--net", gt.net_file, "Network file");
  gen_trace->add_option("--scenario", gt.scenario,
                        "time_zones or commuter")->required();
  gen_trace->add_option("--rounds", gt.rounds, "Number of rounds");
  gen_trace->add_option("--p-hot", gt.p_hot, "Hotspot share, percent");
  gen_trace->add_option("--lambda", gt.lambda, "Mean sojourn/phase length");
  gen_trace->add_option("--requests", gt.requests,
                        "Requests per round (0 = n/5)");
  gen_trace->add_option("--T", gt.T, "Commuter period (even)");
  gen_trace->add_option("--center", gt.center,
                        "Commuter center node (-1 = network center)");
  gen_trace->add_option("--metric", gt.metric, "hops or latency");
  gen_trace->add_option("--file", gt.file, "Output file name");

  SimulateOpts sim;
  auto* simulate = app.add_subcommand("simulate", "Run a configured experiment");
  simulate->add_option("--config", sim.config_file, "JSON config file")->required();
  simulate->add_flag("--plot-data", sim.plot_data, "Emit plot-ready column files");
  simulate->add_flag("--skip-opt", sim.skip_opt, "Skip the offline optimum");

  OptOpts op;
  auto* opt = app.add_subcommand("opt", "Offline optimal schedule for a trace");
  opt->add_option("--net", op.net_file, "Network file");
  opt->add_option("--trace", op.trace_file, "Trace file");
  opt->add_option("--v0", op.v0, "Initial server node (-1 = network center)");
  opt->add_option("--server-size", op.server_size, "Server size, Mbit");
  opt->add_option("--pi-over-beta", op.pi_over_beta, "Transit cost multiple");
  opt->add_option("--metric", op.metric, "hops or latency");
  opt->add_option("--path-mode", op.path_mode, "optimal or shortest_latency");
  opt->add_option("--budget", op.budget, "Refusal threshold for n^2 * requests");
  opt->add_option("--file", op.file, "Output file name");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (gen_net->parsed()) return cmd_gen_net(g, gn);
    if (gen_trace->parsed()) return cmd_gen_trace(g, gt);
    if (simulate->parsed()) return cmd_simulate(g, sim, out_opt->count() > 0);
    if (opt->parsed()) return cmd_opt(g, op);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
