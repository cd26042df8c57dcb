#pragma once

#include <cstdint>

#include "sls/cc/controller.h"

namespace sls::cc {

// Packets this connection holds in the bottleneck buffer, inferred from
// how far the RTT sample sits above the base RTT:
//
//   N = (cwnd / base_rtt - cwnd / rtt) * base_rtt
//
// rtt below base_rtt is clamped to base_rtt. Throws std::domain_error for a
// nonpositive RTT or window.
double EstimateBacklog(double cwnd, double base_rtt_s, double rtt_s);

// RTT as read from a TCP clock ticking every tick_s: rounded to the nearest
// tick, never below one tick. tick_s <= 0 passes the sample through.
double QuantizeRtt(double rtt_s, double tick_s);

struct BacklogProbe {
  double n_est = 0.0;
  double beta = 3.0;
  // Granularity of the RTT clock feeding the estimate; 0 is exact.
  double rtt_tick_s = 0.0;
  // Whether the previous ack saw n_est >= beta.
  bool congestive_status = false;
  // Completed congestive episodes (n_est rose to beta, then fell below).
  std::int64_t congestion_event_no = 0;
};

// One SSthreshless Start step for a single acked packet. Updates the probe
// and returns the cwnd increment:
//   n_est >= beta: 1/cwnd                              (linear increase)
//   otherwise:     max(1/cwnd, 2^-congestion_event_no) (adjustive increase)
double SsthreshlessIncrement(BacklogProbe& probe, const ControllerView& view);

}  // namespace sls::cc
