#pragma once

#include <charconv>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>

#include "migsim/experiment.hpp"

namespace migsim {

// Shortest round-trip decimal form; keeps serialized files byte-stable.
inline std::string fmt(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

// Write-temp-then-rename so readers never observe a half-written file.
inline void write_file_atomic(const std::filesystem::path& path,
                              const std::string& content) {
  if (path.has_parent_path())
    std::filesystem::create_directories(path.parent_path());
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << content;
  }
  std::filesystem::rename(tmp, path);
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline std::string per_round_csv(const ExperimentResult& result) {
  std::ostringstream out;
  out << "seed,policy,round,location_before,location_after,access_cost,"
         "migration_cost,cumulative_cost\n";
  for (std::size_t p = 0; p < result.config.policies.size(); ++p) {
    for (const RepetitionData& rep : result.repetitions) {
      const CostLedger& led = rep.ledgers[p];
      double cum = 0.0;
      for (const RoundRecord& r : led.records) {
        cum += r.access_cost + r.migration_cost;
        out << rep.seed << ',' << policy_name(led.policy) << ','
            << r.round_index << ',' << r.location_before << ','
            << r.location_after << ',' << fmt(r.access_cost) << ','
            << fmt(r.migration_cost) << ',' << fmt(cum) << '\n';
      }
    }
  }
  return out.str();
}

inline std::string summary_csv(const ExperimentResult& result) {
  std::ostringstream out;
  out << "policy,seed,total_access,total_migration,total,opt_total,ratio\n";
  for (const RunSummary& s : result.summaries) {
    out << policy_name(s.policy) << ',' << s.seed << ',' << fmt(s.access_total)
        << ',' << fmt(s.migration_total) << ',' << fmt(s.total) << ',';
    if (s.opt_total) out << fmt(*s.opt_total);
    out << ',';
    if (s.ratio) out << (s.ratio->unbounded ? "inf" : fmt(s.ratio->value));
    out << '\n';
  }
  return out.str();
}

inline std::string aggregate_csv(const ExperimentResult& result) {
  std::ostringstream out;
  out << "policy,mean_total,stddev_total,mean_ratio,min_ratio,max_ratio,"
         "unbounded_count\n";
  for (const PolicyAggregate& a : result.aggregates) {
    out << a.policy << ',' << fmt(a.mean_total) << ',' << fmt(a.stddev_total)
        << ',';
    if (a.ratio_count > 0)
      out << fmt(a.mean_ratio) << ',' << fmt(a.min_ratio) << ','
          << fmt(a.max_ratio);
    else
      out << ",,";
    out << ',' << a.unbounded_count << '\n';
  }
  return out.str();
}

// Plot-data emission: whitespace-column files a generic plotting tool can
// consume directly. The ratio-vs-X files carry this experiment's single X
// value per policy so that sweep scripts can concatenate runs.
namespace detail {

inline std::string ratio_point_file(const ExperimentResult& result,
                                    const std::string& x_name, double x_value) {
  std::ostringstream out;
  out << "# " << x_name << " policy mean_ratio\n";
  for (const PolicyAggregate& a : result.aggregates) {
    if (a.ratio_count == 0) continue;
    out << fmt(x_value) << ' ' << a.policy << ' ' << fmt(a.mean_ratio) << '\n';
  }
  return out.str();
}

}  // namespace detail

inline std::map<std::string, std::string> plot_data_files(
    const ExperimentResult& result) {
  std::map<std::string, std::string> files;
  const ExperimentConfig& cfg = result.config;

  int n = 0;
  if (!result.repetitions.empty()) n = result.repetitions.front().net.node_count();
  files["plot_ratio_vs_n.dat"] = detail::ratio_point_file(result, "n", n);
  files["plot_ratio_vs_lambda.dat"] =
      detail::ratio_point_file(result, "lambda", cfg.lambda);
  files["plot_ratio_vs_pi_over_beta.dat"] =
      detail::ratio_point_file(result, "pi_over_beta", cfg.pi_over_beta);

  std::ostringstream out;
  out << "# round policy mean_cumulative_cost\n";
  for (std::size_t p = 0; p < cfg.policies.size(); ++p) {
    std::vector<double> cum;
    for (const RepetitionData& rep : result.repetitions) {
      double c = 0.0;
      for (std::size_t t = 0; t < rep.ledgers[p].records.size(); ++t) {
        const RoundRecord& r = rep.ledgers[p].records[t];
        c += r.access_cost + r.migration_cost;
        if (cum.size() <= t) cum.push_back(0.0);
        cum[t] += c;
      }
    }
    for (std::size_t t = 0; t < cum.size(); ++t)
      out << t << ' ' << cfg.policies[p] << ' '
          << fmt(cum[t] / static_cast<double>(result.repetitions.size())) << '\n';
  }
  files["plot_cost_vs_round.dat"] = out.str();
  return files;
}

inline std::string schedule_csv(const MigrationSchedule& sched) {
  std::ostringstream out;
  out << "round,location,access_cost,migration_cost\n";
  for (const ScheduleEntry& e : sched.entries)
    out << e.round_index << ',' << e.location << ',' << fmt(e.access_cost)
        << ',' << fmt(e.migration_cost) << '\n';
  return out.str();
}

}  // namespace migsim
