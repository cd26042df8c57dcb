#include "sls/tcp/rtt_estimator.h"

#include <algorithm>
#include <cmath>

namespace sls::tcp {

namespace {
constexpr double kAlpha = 0.125;
constexpr double kBeta = 0.25;
}  // namespace

RttEstimator::RttEstimator(RtoParams params)
    : params_(params),
      rto_s_(std::clamp(params.initial_rto_s, params.min_rto_s, params.max_rto_s)) {}

void RttEstimator::OnSend(std::int64_t seq, sim::SimTime now, bool retransmit) {
  if (records_.empty() && seq >= first_record_seq_) {
    // Nothing outstanding; re-anchor at seq so we never store gaps.
    if (seq > first_record_seq_ + static_cast<std::int64_t>(records_.size())) {
      first_record_seq_ = seq;
    }
  }
  if (seq < first_record_seq_) return;  // already acknowledged
  const auto offset = static_cast<std::size_t>(seq - first_record_seq_);
  if (offset < records_.size()) {
    records_[offset].sent_at = now;
    records_[offset].retransmitted = records_[offset].retransmitted || retransmit;
    return;
  }
  while (records_.size() < offset) records_.push_back(SendRecord{now, true});
  records_.push_back(SendRecord{now, retransmit});
}

std::optional<double> RttEstimator::Sample(std::int64_t acked_seq, sim::SimTime now) {
  if (acked_seq < first_record_seq_) return std::nullopt;
  const auto offset = static_cast<std::size_t>(acked_seq - first_record_seq_);
  if (offset >= records_.size()) return std::nullopt;
  const SendRecord& r = records_[offset];
  if (r.retransmitted) return std::nullopt;
  const double rtt = now - r.sent_at;
  if (!(rtt > 0.0)) return std::nullopt;
  AddSample(rtt);
  return rtt;
}

void RttEstimator::AddSample(double rtt_s) {
  if (!has_sample_) {
    has_sample_ = true;
    base_rtt_s_ = rtt_s;
    srtt_s_ = rtt_s;
    rttvar_s_ = rtt_s / 2.0;
  } else {
    base_rtt_s_ = std::min(base_rtt_s_, rtt_s);
    rttvar_s_ = (1.0 - kBeta) * rttvar_s_ + kBeta * std::abs(srtt_s_ - rtt_s);
    srtt_s_ = (1.0 - kAlpha) * srtt_s_ + kAlpha * rtt_s;
  }
  last_rtt_s_ = rtt_s;
  rto_s_ = std::clamp(srtt_s_ + 4.0 * rttvar_s_, params_.min_rto_s, params_.max_rto_s);
}

void RttEstimator::Forget(std::int64_t seq) {
  while (first_record_seq_ < seq && !records_.empty()) {
    records_.pop_front();
    ++first_record_seq_;
  }
  if (records_.empty() && first_record_seq_ < seq) first_record_seq_ = seq;
}

void RttEstimator::Backoff() { rto_s_ = std::min(rto_s_ * 2.0, params_.max_rto_s); }

}  // namespace sls::tcp
