#include "sls/traffic/udp_cbr.h"

#include <cmath>

#include "sls/config_error.h"

namespace sls::traffic {

void Validate(const UdpCbrParams& params) {
  if (!(params.rate_bps > 0.0) || !std::isfinite(params.rate_bps)) {
    throw ConfigError("cross_traffic.rate_bps must be positive");
  }
  if (params.pkt_bytes == 0) throw ConfigError("cross_traffic.pkt_bytes must be positive");
  if (!(params.start_s >= 0.0)) throw ConfigError("cross_traffic.start_s must be nonnegative");
  if (!(params.stop_s >= params.start_s)) {
    throw ConfigError("cross_traffic.stop_s must not precede start_s");
  }
}

double CbrInterval(const UdpCbrParams& params) {
  return static_cast<double>(params.pkt_bytes) * 8.0 / params.rate_bps;
}

std::optional<sim::SimTime> UdpNextEmission(const UdpCbrParams& params, sim::SimTime now) {
  const double interval = CbrInterval(params);
  double k = 0.0;
  if (now.seconds() > params.start_s) {
    k = std::ceil((now.seconds() - params.start_s) / interval);
    // Guard against ceil landing one step short through rounding.
    if (params.start_s + k * interval < now.seconds()) k += 1.0;
  }
  const double t = params.start_s + k * interval;
  if (t >= params.stop_s) return std::nullopt;
  return sim::SimTime::FromSeconds(t);
}

UdpCbrSource::UdpCbrSource(sim::Simulator& sim, sim::EntityId id, net::FlowId flow,
                           net::NodeId self, net::NodeId peer, UdpCbrParams params,
                           SendFn send)
    : sim_(sim),
      id_(id),
      flow_(flow),
      self_(self),
      peer_(peer),
      params_(params),
      send_(std::move(send)) {
  Validate(params_);
}

void UdpCbrSource::Start() { ScheduleEmission(0); }

void UdpCbrSource::ScheduleEmission(std::uint64_t k) {
  const double t = params_.start_s + static_cast<double>(k) * CbrInterval(params_);
  if (t >= params_.stop_s) return;
  const auto kind = k == 0 ? sim::EventKind::kSourceStart : sim::EventKind::kPacketArrival;
  sim_.Schedule(sim::SimTime::FromSeconds(t), id_, kind, [this, k] {
    net::Packet p;
    p.packet_id = (static_cast<std::uint64_t>(flow_ + 1) << 40) | k;
    p.flow_id = flow_;
    p.kind = net::PacketKind::kUdp;
    p.size_bytes = params_.pkt_bytes;
    p.seq = static_cast<std::int64_t>(k);
    p.sent_at = sim_.Now();
    p.src = self_;
    p.dst = peer_;
    ++sent_;
    send_(std::move(p));
    ScheduleEmission(k + 1);
  });
}

}  // namespace sls::traffic
