#pragma once

#include <cstdint>
#include <deque>
#include <optional>

#include "sls/sim/sim_time.h"

namespace sls::tcp {

struct RtoParams {
  double initial_rto_s = 1.0;
  double min_rto_s = 0.2;
  double max_rto_s = 60.0;
};

// Smoothed RTT / RTO (srtt, rttvar with gains 1/8 and 1/4), the minimum RTT
// seen, and per-packet send records for sampling. Retransmitted packets
// never yield a sample.
class RttEstimator {
 public:
  explicit RttEstimator(RtoParams params = {});

  void OnSend(std::int64_t seq, sim::SimTime now, bool retransmit);

  // RTT of the newly acknowledged packet `acked_seq`, if it was never
  // retransmitted. Updates all estimates when a sample is produced.
  std::optional<double> Sample(std::int64_t acked_seq, sim::SimTime now);

  void AddSample(double rtt_s);

  // Drops send records below `seq`.
  void Forget(std::int64_t seq);

  // Doubles the RTO, capped at max_rto_s.
  void Backoff();

  bool has_sample() const { return has_sample_; }
  double base_rtt_s() const { return base_rtt_s_; }
  double last_rtt_s() const { return last_rtt_s_; }
  double srtt_s() const { return srtt_s_; }
  double rttvar_s() const { return rttvar_s_; }
  double rto_s() const { return rto_s_; }

 private:
  struct SendRecord {
    sim::SimTime sent_at;
    bool retransmitted = false;
  };

  RtoParams params_;
  std::deque<SendRecord> records_;
  std::int64_t first_record_seq_ = 0;
  bool has_sample_ = false;
  double base_rtt_s_ = 0.0;
  double last_rtt_s_ = 0.0;
  double srtt_s_ = 0.0;
  double rttvar_s_ = 0.0;
  double rto_s_;
};

}  // namespace sls::tcp
