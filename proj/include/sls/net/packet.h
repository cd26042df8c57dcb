#pragma once

#include <cstdint>
#include <string_view>

#include "sls/sim/sim_time.h"

namespace sls::net {

using NodeId = std::uint32_t;
using FlowId = std::int32_t;

enum class PacketKind { kData, kAck, kUdp };

std::string_view ToString(PacketKind kind);

struct Packet {
  std::uint64_t packet_id = 0;
  FlowId flow_id = 0;
  PacketKind kind = PacketKind::kData;
  std::uint32_t size_bytes = 1000;
  // Data: sequence number in packets. Ack: cumulative ack, i.e. the next
  // sequence number the receiver expects.
  std::int64_t seq = 0;
  sim::SimTime sent_at;
  bool is_retransmit = false;
  NodeId src = 0;
  NodeId dst = 0;

  // Ack only: the data packet that triggered this ack, and whether that
  // packet was a retransmission.
  std::int64_t echo_seq = -1;
  bool echo_retransmit = false;

  // Bottleneck occupancy left behind when this data packet began service on
  // the instrumented bottleneck port; -1 when it never crossed one. Echoed
  // back on the ack.
  std::int32_t bottleneck_backlog = -1;
};

}  // namespace sls::net
