#pragma once

#include <set>
#include <string>

#include <json.hpp>

#include "migsim/experiment.hpp"

namespace migsim {

// Flat JSON object -> ExperimentConfig. Unknown keys are rejected so that a
// typo cannot silently fall back to a default.
inline ExperimentConfig parse_config_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::runtime_error(std::string("config: invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw std::runtime_error("config: expected a JSON object");

  ExperimentConfig cfg;
  const std::set<std::string> known = {
      "network_file", "net_n", "net_pips", "net_n_per_pip", "net_p",
      "net_bandwidths", "net_latency", "net_inter_bw", "net_inter_latency",
      "scenario", "rounds", "p_hot", "lambda", "requests_per_round",
      "commuter_T", "commuter_center", "server_size_mbit", "pi_over_beta",
      "tau", "tau_large", "metric", "path_mode", "policies", "repetitions",
      "base_seed", "output_dir", "opt", "opt_budget",
      "charge_before_migration", "v0"};
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!known.count(it.key()))
      throw std::runtime_error("config: unknown key '" + it.key() + "'");

  auto get = [&](const char* key, auto& field) {
    if (j.contains(key)) {
      try {
        j.at(key).get_to(field);
      } catch (const nlohmann::json::exception&) {
        throw std::runtime_error(std::string("config: bad value for '") + key + "'");
      }
    }
  };

  get("network_file", cfg.network_file);
  get("net_n", cfg.net_n);
  get("net_pips", cfg.net_pips);
  get("net_n_per_pip", cfg.net_n_per_pip);
  get("net_p", cfg.net_p);
  get("net_bandwidths", cfg.net_bandwidths);
  if (j.contains("net_latency")) {
    const auto& lat = j.at("net_latency");
    if (lat.is_string() && lat.get<std::string>() == "unit") {
      cfg.net_latency_unit = true;
    } else if (lat.is_array() && lat.size() == 2) {
      cfg.net_latency_unit = false;
      cfg.net_latency_lo = lat.at(0).get<double>();
      cfg.net_latency_hi = lat.at(1).get<double>();
    } else {
      throw std::runtime_error("config: net_latency must be \"unit\" or [lo, hi]");
    }
  }
  get("net_inter_bw", cfg.net_inter_bw);
  get("net_inter_latency", cfg.net_inter_latency);
  get("scenario", cfg.scenario);
  get("rounds", cfg.rounds);
  get("p_hot", cfg.p_hot);
  get("lambda", cfg.lambda);
  get("requests_per_round", cfg.requests_per_round);
  get("commuter_T", cfg.commuter_T);
  get("commuter_center", cfg.commuter_center);
  get("server_size_mbit", cfg.server_size_mbit);
  get("pi_over_beta", cfg.pi_over_beta);
  get("tau", cfg.tau);
  get("tau_large", cfg.tau_large);
  get("metric", cfg.metric);
  get("path_mode", cfg.path_mode);
  get("policies", cfg.policies);
  get("repetitions", cfg.repetitions);
  get("base_seed", cfg.base_seed);
  get("output_dir", cfg.output_dir);
  get("opt", cfg.opt_enabled);
  get("opt_budget", cfg.opt_budget);
  get("charge_before_migration", cfg.charge_before_migration);
  get("v0", cfg.v0);

  cfg.validate();
  return cfg;
}

// Resolved-config echo: every field, defaults included, in key order.
inline std::string serialize_config_json(const ExperimentConfig& cfg) {
  nlohmann::json j;
  j["network_file"] = cfg.network_file;
  j["net_n"] = cfg.net_n;
  j["net_pips"] = cfg.net_pips;
  j["net_n_per_pip"] = cfg.net_n_per_pip;
  j["net_p"] = cfg.net_p;
  j["net_bandwidths"] = cfg.net_bandwidths;
  if (cfg.net_latency_unit)
    j["net_latency"] = "unit";
  else
    j["net_latency"] = {cfg.net_latency_lo, cfg.net_latency_hi};
  j["net_inter_bw"] = cfg.net_inter_bw;
  j["net_inter_latency"] = cfg.net_inter_latency;
  j["scenario"] = cfg.scenario;
  j["rounds"] = cfg.rounds;
  j["p_hot"] = cfg.p_hot;
  j["lambda"] = cfg.lambda;
  j["requests_per_round"] = cfg.requests_per_round;
  j["commuter_T"] = cfg.commuter_T;
  j["commuter_center"] = cfg.commuter_center;
  j["server_size_mbit"] = cfg.server_size_mbit;
  j["pi_over_beta"] = cfg.pi_over_beta;
  j["tau"] = cfg.tau;
  j["tau_large"] = cfg.tau_large;
  j["metric"] = cfg.metric;
  j["path_mode"] = cfg.path_mode;
  j["policies"] = cfg.policies;
  j["repetitions"] = cfg.repetitions;
  j["base_seed"] = cfg.base_seed;
  j["output_dir"] = cfg.output_dir;
  j["opt"] = cfg.opt_enabled;
  j["opt_budget"] = cfg.opt_budget;
  j["charge_before_migration"] = cfg.charge_before_migration;
  j["v0"] = cfg.v0;
  return j.dump(2) + "\n";
}

}  // namespace migsim
