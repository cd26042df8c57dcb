#pragma once

#include <cstdint>
#include <functional>
#include <set>

#include "sls/net/packet.h"

namespace sls::tcp {

// Receiver half: one 40-byte cumulative ack per data packet, out-of-order
// packets buffered until the hole fills.
class TcpReceiver {
 public:
  using SendFn = std::function<void(net::Packet)>;

  TcpReceiver(net::FlowId flow, net::NodeId self, net::NodeId peer, std::uint32_t ack_bytes,
              SendFn send);

  void OnData(const net::Packet& data);

  // Next expected sequence number; everything below was delivered in order.
  std::int64_t cumack() const { return cumack_; }
  std::int64_t delivered_packets() const { return cumack_; }
  std::uint64_t duplicates() const { return duplicates_; }
  std::uint64_t acks_sent() const { return acks_sent_; }
  std::size_t out_of_order() const { return out_of_order_.size(); }

 private:
  net::FlowId flow_;
  net::NodeId self_;
  net::NodeId peer_;
  std::uint32_t ack_bytes_;
  SendFn send_;
  std::int64_t cumack_ = 0;
  std::set<std::int64_t> out_of_order_;
  std::uint64_t duplicates_ = 0;
  std::uint64_t acks_sent_ = 0;
  std::uint64_t next_packet_id_ = 0;
};

}  // namespace sls::tcp
