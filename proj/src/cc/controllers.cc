#include "sls/cc/controllers.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sls::cc {

double SlowStartIncrement(const ControllerView& view) { return NewRenoIncrement(view); }

WindowUpdate SlowStart::OnPacketAcked(const ControllerView& view) {
  diag_ = AckDiagnostics{.increment = SlowStartIncrement(view)};
  return {view.cwnd + diag_.increment, view.ssthresh};
}

double LimitedSlowStartIncrement(const ControllerView& view, double max_ssthresh) {
  if (view.cwnd <= max_ssthresh) return 1.0;
  const double k = std::ceil(view.cwnd / (max_ssthresh / 2.0));
  return 1.0 / k;
}

WindowUpdate LimitedSlowStart::OnPacketAcked(const ControllerView& view) {
  const double inc = view.cwnd < view.ssthresh ? LimitedSlowStartIncrement(view, max_ssthresh_)
                                               : 1.0 / view.cwnd;
  diag_ = AckDiagnostics{.increment = inc};
  return {view.cwnd + inc, view.ssthresh};
}

std::optional<PacketPairEstimate> HoeInitialSsthresh(double ack_gap_s, double base_rtt_s,
                                                     std::uint32_t pkt_bytes) {
  if (!(ack_gap_s > 0.0)) return std::nullopt;
  const double pkt_bits = 8.0 * pkt_bytes;
  PacketPairEstimate e;
  e.ack_gap_s = ack_gap_s;
  e.bw_est_bps = pkt_bits / ack_gap_s;
  e.ssthresh_est = e.bw_est_bps * base_rtt_s / pkt_bits;
  return e;
}

HoeChange::HoeChange(double initial_ssthresh, double initial_cwnd, std::uint32_t pkt_bytes)
    : initial_ssthresh_(initial_ssthresh),
      pkt_bytes_(pkt_bytes),
      // With a one-packet initial window the first back-to-back pair is the
      // two packets released by the first ack.
      pair_first_seq_(initial_cwnd >= 2.0 ? 0 : 1) {}

WindowUpdate HoeChange::OnPacketAcked(const ControllerView& view) {
  double ssthresh = view.ssthresh;
  if (!estimate_ && view.base_rtt_s > 0.0) {
    if (view.acked_seq == pair_first_seq_) {
      first_ack_at_ = view.now;
    } else if (first_ack_at_ && view.acked_seq == pair_first_seq_ + 1) {
      estimate_ = HoeInitialSsthresh(view.now - *first_ack_at_, view.base_rtt_s, pkt_bytes_);
      if (estimate_) {
        ssthresh = std::max(estimate_->ssthresh_est, 2.0);
      } else {
        // Zero gap: slide to the next pair.
        ++pair_first_seq_;
        first_ack_at_ = view.now;
      }
    }
  }
  ControllerView v = view;
  v.ssthresh = ssthresh;
  diag_ = AckDiagnostics{.increment = NewRenoIncrement(v)};
  return {view.cwnd + diag_.increment, ssthresh};
}

double VegasDiff(double cwnd, double base_rtt_s, double rtt_s) {
  if (!(base_rtt_s > 0.0) || !(rtt_s > 0.0)) return 0.0;
  return (cwnd / base_rtt_s - cwnd / rtt_s) * base_rtt_s;
}

WindowUpdate Vegas::OnPacketAcked(const ControllerView& view) {
  double cwnd = view.cwnd;
  double ssthresh = view.ssthresh;
  if (view.fresh_rtt_sample) {
    rtt_sum_ += view.last_rtt_s;
    ++rtt_count_;
  }
  if (round_end_seq_ < 0) round_end_seq_ = view.snd_nxt;

  double inc = 0.0;
  if (in_startup_ && growth_round_) inc = 1.0;

  if (view.acked_seq + 1 >= round_end_seq_) {
    // Round boundary: everything outstanding at the round start is acked.
    ++rounds_completed_;
    const double avg_rtt = rtt_count_ > 0 ? rtt_sum_ / rtt_count_ : view.last_rtt_s;
    const double diff = VegasDiff(cwnd, view.base_rtt_s, avg_rtt);
    diag_.n_est = diff;
    if (in_startup_) {
      if (diff > params_.gamma || cwnd + inc >= ssthresh) {
        in_startup_ = false;
        ssthresh = std::min(ssthresh, cwnd + inc);
      } else {
        growth_round_ = !growth_round_;
      }
    } else if (rtt_count_ > 0) {
      if (diff < params_.alpha) {
        inc = 1.0;
      } else if (diff > params_.beta) {
        inc = cwnd > 2.0 ? -1.0 : 0.0;
      }
    }
    rtt_sum_ = 0.0;
    rtt_count_ = 0;
    round_end_seq_ = std::max(view.snd_nxt, view.acked_seq + 2);
  }
  diag_.increment = inc;
  return {std::max(cwnd + inc, 1.0), ssthresh};
}

void Vegas::OnTimeout(const ControllerView& view) {
  (void)view;
  in_startup_ = true;
  growth_round_ = true;
  round_end_seq_ = -1;
  rtt_sum_ = 0.0;
  rtt_count_ = 0;
}

Ssthreshless::Ssthreshless(double beta, bool preserve_counters_on_timeout, double rtt_tick_s)
    : preserve_counters_on_timeout_(preserve_counters_on_timeout) {
  if (!(beta > 0.0)) throw std::invalid_argument("ssthreshless beta must be positive");
  if (!(rtt_tick_s >= 0.0) || !std::isfinite(rtt_tick_s)) {
    throw std::invalid_argument("ssthreshless rtt tick must be finite and >= 0");
  }
  probe_.beta = beta;
  probe_.rtt_tick_s = rtt_tick_s;
}

WindowUpdate Ssthreshless::OnPacketAcked(const ControllerView& view) {
  if (exited_) {
    diag_ = AckDiagnostics{.increment = NewRenoIncrement(view)};
    return {view.cwnd + diag_.increment, view.ssthresh};
  }
  const double inc = SsthreshlessIncrement(probe_, view);
  diag_ = AckDiagnostics{inc, probe_.n_est, probe_.congestive_status,
                         probe_.congestion_event_no};
  return {view.cwnd + inc, view.ssthresh};
}

double Ssthreshless::OnFastRecoveryEntry(const ControllerView& view) {
  exited_ = true;
  probe_.congestion_event_no = 0;
  probe_.congestive_status = false;
  return std::max(view.cwnd / 2.0, 2.0);
}

void Ssthreshless::OnTimeout(const ControllerView& view) {
  (void)view;
  if (exited_ || preserve_counters_on_timeout_) return;
  probe_.congestion_event_no = 0;
  probe_.congestive_status = false;
}

}  // namespace sls::cc
