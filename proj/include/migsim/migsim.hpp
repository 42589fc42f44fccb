#pragma once

// Umbrella header for the service-migration simulator.

#include "migsim/cost_model.hpp"
#include "migsim/experiment.hpp"
#include "migsim/harness.hpp"
#include "migsim/io.hpp"
#include "migsim/metrics.hpp"
#include "migsim/multiprovider.hpp"
#include "migsim/offline.hpp"
#include "migsim/policies.hpp"
#include "migsim/rng.hpp"
#include "migsim/substrate.hpp"
#include "migsim/workload.hpp"
