#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <string>

namespace sls::exp {

// Delivered payload bits over capacity x window, clamped to [0, 1]. A
// zero-length window yields 0.
double ComputeLinkUtilization(double delivered_payload_bits, double bw_bps, double window_s);

// (sum x)^2 / (n sum x^2). All-zero input counts as perfectly fair.
double JainFairness(std::span<const double> throughputs);

// One row of the metrics table: one flow over one measurement window.
struct MetricsReport {
  std::string scenario_id;
  std::string controller;
  double window_start_s = 0.0;
  double window_end_s = 0.0;
  double utilization = 0.0;
  std::int64_t highest_seq_sent = -1;
  double throughput_bps = 0.0;
  // Reference throughput over this row's; NaN when no reference applies.
  double throughput_ratio = std::numeric_limits<double>::quiet_NaN();
  double jain = 1.0;
  std::uint64_t drops = 0;
};

}  // namespace sls::exp
