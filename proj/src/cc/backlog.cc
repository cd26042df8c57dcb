#include "sls/cc/backlog.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace sls::cc {

std::string_view ToString(Phase phase) {
  switch (phase) {
    case Phase::kStartup:
      return "startup";
    case Phase::kCongestionAvoidance:
      return "congestion_avoidance";
    case Phase::kFastRecovery:
      return "fast_recovery";
  }
  return "unknown";
}

double CongestionController::OnFastRecoveryEntry(const ControllerView& view) {
  return std::max(view.cwnd / 2.0, 2.0);
}

double NewRenoIncrement(const ControllerView& view) {
  return view.cwnd < view.ssthresh ? 1.0 : 1.0 / view.cwnd;
}

double EstimateBacklog(double cwnd, double base_rtt_s, double rtt_s) {
  if (!(base_rtt_s > 0.0) || !(rtt_s > 0.0)) {
    throw std::domain_error("backlog estimate needs positive RTTs (base=" +
                            std::to_string(base_rtt_s) + ", rtt=" + std::to_string(rtt_s) + ")");
  }
  if (!(cwnd > 0.0)) throw std::domain_error("backlog estimate needs a positive cwnd");
  const double rtt = std::max(rtt_s, base_rtt_s);
  const double n = (cwnd / base_rtt_s - cwnd / rtt) * base_rtt_s;
  return std::max(n, 0.0);
}

double QuantizeRtt(double rtt_s, double tick_s) {
  if (!(tick_s > 0.0)) return rtt_s;
  return std::max(1.0, std::floor(rtt_s / tick_s + 0.5)) * tick_s;
}

double SsthreshlessIncrement(BacklogProbe& probe, const ControllerView& view) {
  probe.n_est = view.base_rtt_s > 0.0
                    ? EstimateBacklog(view.cwnd, QuantizeRtt(view.base_rtt_s, probe.rtt_tick_s),
                                      QuantizeRtt(view.last_rtt_s, probe.rtt_tick_s))
                    : 0.0;
  if (probe.n_est >= probe.beta) {
    probe.congestive_status = true;
    return 1.0 / view.cwnd;
  }
  if (probe.congestive_status) {
    ++probe.congestion_event_no;
    probe.congestive_status = false;
  }
  const double adjustive = std::ldexp(1.0, -static_cast<int>(std::min<std::int64_t>(
                                               probe.congestion_event_no, 1000)));
  return std::max(1.0 / view.cwnd, adjustive);
}

}  // namespace sls::cc
