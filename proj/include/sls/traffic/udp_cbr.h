#pragma once

#include <cstdint>
#include <functional>
#include <optional>

#include "sls/net/packet.h"
#include "sls/sim/simulator.h"

namespace sls::traffic {

struct UdpCbrParams {
  double rate_bps = 10e6;
  std::uint32_t pkt_bytes = 1000;
  double start_s = 1.0;
  double stop_s = 5.0;
};

// Throws ConfigError on a nonpositive rate or size, or stop before start.
void Validate(const UdpCbrParams& params);

// Exact inter-packet gap: pkt_bytes * 8 / rate_bps.
double CbrInterval(const UdpCbrParams& params);

// First emission instant at or after `now` on the grid start + k * interval,
// or nullopt once the grid reaches stop_s.
std::optional<sim::SimTime> UdpNextEmission(const UdpCbrParams& params, sim::SimTime now);

// Unresponsive constant-bit-rate source. Emission k happens at exactly
// start + k * interval, so no drift accumulates.
class UdpCbrSource {
 public:
  using SendFn = std::function<void(net::Packet)>;

  UdpCbrSource(sim::Simulator& sim, sim::EntityId id, net::FlowId flow, net::NodeId self,
               net::NodeId peer, UdpCbrParams params, SendFn send);

  // Schedules the first emission.
  void Start();

  std::uint64_t packets_sent() const { return sent_; }
  const UdpCbrParams& params() const { return params_; }

 private:
  void ScheduleEmission(std::uint64_t k);

  sim::Simulator& sim_;
  sim::EntityId id_;
  net::FlowId flow_;
  net::NodeId self_;
  net::NodeId peer_;
  UdpCbrParams params_;
  SendFn send_;
  std::uint64_t sent_ = 0;
};

// Counts what arrives.
class UdpSink {
 public:
  void OnPacket(const net::Packet& p) {
    ++packets_;
    bytes_ += p.size_bytes;
  }
  std::uint64_t packets() const { return packets_; }
  std::uint64_t bytes() const { return bytes_; }

 private:
  std::uint64_t packets_ = 0;
  std::uint64_t bytes_ = 0;
};

}  // namespace sls::traffic
