#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "sls/sim/sim_time.h"

namespace sls::cc {

enum class Phase { kStartup, kCongestionAvoidance, kFastRecovery };

std::string_view ToString(Phase phase);

// Large enough to never bind on any topology we build.
inline constexpr double kUnboundedSsthresh = 1e6;

// Read-only snapshot of the transport handed to a controller.
struct ControllerView {
  double cwnd = 1.0;
  double ssthresh = kUnboundedSsthresh;
  // Zero until the first valid RTT sample.
  double base_rtt_s = 0.0;
  double last_rtt_s = 0.0;
  Phase phase = Phase::kStartup;
  // Packets newly acknowledged by the ack being processed.
  std::int64_t acked_packets = 0;
  // The packet this invocation accounts for.
  std::int64_t acked_seq = -1;
  std::int64_t snd_una = 0;
  std::int64_t snd_nxt = 0;
  // True when the ack being processed produced an RTT sample.
  bool fresh_rtt_sample = false;
  sim::SimTime now;
};

struct WindowUpdate {
  double cwnd;
  double ssthresh;
};

// What the controller did on its most recent per-packet invocation.
struct AckDiagnostics {
  double increment = 0.0;
  std::optional<double> n_est;
  bool linear_mode = false;
  std::int64_t congestion_event_no = 0;
};

// Window growth policy plugged into a TCP sender. Loss recovery mechanics
// (dupack counting, retransmission, NewReno recovery) stay in the sender;
// controllers only decide window values.
class CongestionController {
 public:
  virtual ~CongestionController() = default;

  virtual std::string_view Name() const = 0;
  virtual double InitialSsthresh() const { return kUnboundedSsthresh; }

  // Called once per newly acknowledged packet outside fast recovery.
  virtual WindowUpdate OnPacketAcked(const ControllerView& view) = 0;

  // Triple-dupack loss. Returns the new ssthresh.
  virtual double OnFastRecoveryEntry(const ControllerView& view);

  // Retransmission timeout. The sender has already set cwnd = 1 and the new
  // ssthresh, both visible in view.
  virtual void OnTimeout(const ControllerView& view) { (void)view; }

  // Whether the connection is still in its startup phase.
  virtual bool InStartup(const ControllerView& view) const = 0;

  virtual AckDiagnostics LastDiagnostics() const { return {}; }
};

// Growth shared by every NewReno-based variant once startup is over:
// +1 per ack below ssthresh, +1/cwnd above.
double NewRenoIncrement(const ControllerView& view);

}  // namespace sls::cc
