#pragma once

#include <cstdint>
#include <optional>

#include "sls/cc/backlog.h"
#include "sls/cc/controller.h"

namespace sls::cc {

// Traditional slow start with a fixed initial ssthresh.
class SlowStart : public CongestionController {
 public:
  explicit SlowStart(double ssthresh) : ssthresh_(ssthresh) {}

  std::string_view Name() const override { return "slowstart"; }
  double InitialSsthresh() const override { return ssthresh_; }
  WindowUpdate OnPacketAcked(const ControllerView& view) override;
  bool InStartup(const ControllerView& view) const override { return view.cwnd < view.ssthresh; }
  AckDiagnostics LastDiagnostics() const override { return diag_; }

 private:
  double ssthresh_;
  AckDiagnostics diag_;
};

double SlowStartIncrement(const ControllerView& view);

// Limited slow start: doubling up to max_ssthresh, then at most
// max_ssthresh/2 packets per RTT until ssthresh.
class LimitedSlowStart : public CongestionController {
 public:
  LimitedSlowStart(double ssthresh, double max_ssthresh)
      : ssthresh_(ssthresh), max_ssthresh_(max_ssthresh) {}

  std::string_view Name() const override { return "lss"; }
  double InitialSsthresh() const override { return ssthresh_; }
  WindowUpdate OnPacketAcked(const ControllerView& view) override;
  bool InStartup(const ControllerView& view) const override { return view.cwnd < view.ssthresh; }
  AckDiagnostics LastDiagnostics() const override { return diag_; }

  double max_ssthresh() const { return max_ssthresh_; }

 private:
  double ssthresh_;
  double max_ssthresh_;
  AckDiagnostics diag_;
};

// Per-ack increment in the LSS startup region (cwnd < ssthresh).
double LimitedSlowStartIncrement(const ControllerView& view, double max_ssthresh);

struct PacketPairEstimate {
  double ack_gap_s = 0.0;
  double bw_est_bps = 0.0;
  double ssthresh_est = 0.0;
};

// ssthresh = estimated bandwidth x base RTT, in packets. Returns nullopt
// when the ack gap is not positive (the caller tries the next pair).
std::optional<PacketPairEstimate> HoeInitialSsthresh(double ack_gap_s, double base_rtt_s,
                                                     std::uint32_t pkt_bytes);

// Hoe's change: slow start whose ssthresh is set once from the spacing of
// the first back-to-back ack pair.
class HoeChange : public CongestionController {
 public:
  HoeChange(double initial_ssthresh, double initial_cwnd, std::uint32_t pkt_bytes);

  std::string_view Name() const override { return "hoe"; }
  double InitialSsthresh() const override { return initial_ssthresh_; }
  WindowUpdate OnPacketAcked(const ControllerView& view) override;
  bool InStartup(const ControllerView& view) const override { return view.cwnd < view.ssthresh; }
  AckDiagnostics LastDiagnostics() const override { return diag_; }

  const std::optional<PacketPairEstimate>& estimate() const { return estimate_; }

 private:
  double initial_ssthresh_;
  std::uint32_t pkt_bytes_;
  std::int64_t pair_first_seq_;
  std::optional<sim::SimTime> first_ack_at_;
  std::optional<PacketPairEstimate> estimate_;
  AckDiagnostics diag_;
};

struct VegasParams {
  double gamma = 1.0;
  double alpha = 1.0;
  double beta = 3.0;
};

// Vegas-style packet excess over a round: (cwnd/base - cwnd/rtt) * base.
double VegasDiff(double cwnd, double base_rtt_s, double rtt_s);

// TCP Vegas: doubles every other round during startup, leaves startup once
// the round's packet excess exceeds gamma, then holds the excess between
// alpha and beta with +-1 per round.
class Vegas : public CongestionController {
 public:
  explicit Vegas(VegasParams params) : params_(params) {}

  std::string_view Name() const override { return "vegas"; }
  WindowUpdate OnPacketAcked(const ControllerView& view) override;
  void OnTimeout(const ControllerView& view) override;
  bool InStartup(const ControllerView&) const override { return in_startup_; }
  AckDiagnostics LastDiagnostics() const override { return diag_; }

  bool growth_round() const { return growth_round_; }
  std::int64_t rounds_completed() const { return rounds_completed_; }

 private:
  VegasParams params_;
  bool in_startup_ = true;
  bool growth_round_ = true;
  std::int64_t round_end_seq_ = -1;
  std::int64_t rounds_completed_ = 0;
  double rtt_sum_ = 0.0;
  std::int64_t rtt_count_ = 0;
  AckDiagnostics diag_;
};

// SSthreshless Start. Runs the backlog-driven two-mode probe until the
// first triple-dupack loss, then hands over to NewReno congestion
// avoidance for good.
class Ssthreshless : public CongestionController {
 public:
  explicit Ssthreshless(double beta, bool preserve_counters_on_timeout = false,
                        double rtt_tick_s = 0.0);

  std::string_view Name() const override { return "ssthreshless"; }
  WindowUpdate OnPacketAcked(const ControllerView& view) override;
  double OnFastRecoveryEntry(const ControllerView& view) override;
  void OnTimeout(const ControllerView& view) override;
  bool InStartup(const ControllerView& view) const override {
    return !exited_ || view.cwnd < view.ssthresh;
  }
  AckDiagnostics LastDiagnostics() const override { return diag_; }

  const BacklogProbe& probe() const { return probe_; }

 private:
  BacklogProbe probe_;
  bool preserve_counters_on_timeout_;
  bool exited_ = false;
  AckDiagnostics diag_;
};

}  // namespace sls::cc
