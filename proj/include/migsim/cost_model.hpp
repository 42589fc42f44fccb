#pragma once

#include <stdexcept>

#include "migsim/substrate.hpp"

namespace migsim {

enum class AccessMetric { hops, latency };
enum class MigrationPathMode { optimal, shortest_latency };

// All costs live on one abstract axis: access distances, beta and pi are
// directly comparable scalars, mirroring how the simulations treat them.
struct CostModel {
  double server_size = 2048.0 * 8.0;  // Mbit
  double beta = 1.0;                  // intra-provider migration cost unit
  double pi = 0.0;                    // transit cost per PIP boundary
  double mu = 1.0;                    // max/min bandwidth ratio
  AccessMetric access_metric = AccessMetric::hops;
  MigrationPathMode path_mode = MigrationPathMode::optimal;
  double det_tau = 1.0 / 3.0;         // active-node threshold multiplier
  double det_tau_large = 1.0 / 40.0;  // large-epoch deactivation multiplier

  void validate() const {
    if (!(server_size > 0)) throw std::invalid_argument("server_size must be > 0");
    if (!(beta > 0)) throw std::invalid_argument("beta must be > 0");
    if (pi < 0) throw std::invalid_argument("pi must be >= 0");
    if (mu < 1) throw std::invalid_argument("mu must be >= 1");
    if (!(det_tau > 0 && det_tau < 1))
      throw std::invalid_argument("det_tau must be in (0,1)");
    if (!(det_tau_large > 0 && det_tau_large < 1))
      throw std::invalid_argument("det_tau_large must be in (0,1)");
  }
};

// beta = server size over mean bandwidth, pi as a multiple of beta, mu from
// the bandwidth spread.
inline CostModel derive_cost_parameters(
    const SubstrateNetwork& net, double server_size, double pi_over_beta,
    AccessMetric metric = AccessMetric::hops,
    MigrationPathMode path_mode = MigrationPathMode::optimal,
    double det_tau = 1.0 / 3.0, double det_tau_large = 1.0 / 40.0) {
  if (!(server_size > 0)) throw std::invalid_argument("server_size must be > 0");
  if (pi_over_beta < 0) throw std::invalid_argument("pi_over_beta must be >= 0");
  CostModel cm;
  cm.server_size = server_size;
  cm.beta = server_size / net.mean_bandwidth();
  cm.pi = pi_over_beta * cm.beta;
  cm.mu = net.max_bandwidth() / net.min_bandwidth();
  cm.access_metric = metric;
  cm.path_mode = path_mode;
  cm.det_tau = det_tau;
  cm.det_tau_large = det_tau_large;
  cm.validate();
  return cm;
}

// Counter threshold that triggers a migration check: beta on constant
// bandwidth, server_size over the worst link otherwise.
inline double epoch_threshold(const SubstrateNetwork& net, const CostModel& cm) {
  if (net.constant_bandwidth()) return cm.beta;
  return cm.server_size / net.min_bandwidth();
}

}  // namespace migsim
