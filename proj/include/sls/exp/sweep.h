#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "sls/exp/metrics.h"
#include "sls/exp/scenario.h"

namespace sls::exp {

enum class SweepAxis { kBuffer, kDelay, kBandwidth };

// "buffer" (packets), "delay" (one-way, ms), "bandwidth" (Mbps).
SweepAxis ParseSweepAxis(const std::string& name);
std::string_view ToString(SweepAxis axis);

// The scenario for one sweep point. Axis values are in the units above.
// Non-swept axes stay at the defaults: buffer sweeps run 40 Mbps / 50 ms;
// delay and bandwidth sweeps size the buffer at BDP/2 of each point.
ScenarioConfig SweepPointConfig(SweepAxis axis, double value, const std::string& variant,
                                double horizon_s = 20.0);

struct SweepPoint {
  double value = 0.0;
  std::string variant;
  MetricsReport report;
  // Non-empty when the run failed; the sweep carries on.
  std::string error;
};

struct SweepOptions {
  double horizon_s = 20.0;
  std::string reference_variant = "sls";
  unsigned threads = 0;  // 0: hardware concurrency
};

// Runs every (value, variant) point, possibly in parallel. Results are keyed
// by (value, variant) so completion order never matters. throughput_ratio
// is reference throughput over the point's throughput at the same value.
std::map<std::pair<double, std::string>, SweepPoint> Sweep(SweepAxis axis,
                                                           const std::vector<double>& values,
                                                           const std::vector<std::string>& variants,
                                                           const SweepOptions& options = {});

}  // namespace sls::exp
