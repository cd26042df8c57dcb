#include "sls/tcp/receiver.h"

#include <utility>

namespace sls::tcp {

TcpReceiver::TcpReceiver(net::FlowId flow, net::NodeId self, net::NodeId peer,
                         std::uint32_t ack_bytes, SendFn send)
    : flow_(flow), self_(self), peer_(peer), ack_bytes_(ack_bytes), send_(std::move(send)) {}

void TcpReceiver::OnData(const net::Packet& data) {
  if (data.seq < cumack_ || out_of_order_.count(data.seq) > 0) {
    ++duplicates_;
  } else if (data.seq == cumack_) {
    ++cumack_;
    while (!out_of_order_.empty() && *out_of_order_.begin() == cumack_) {
      out_of_order_.erase(out_of_order_.begin());
      ++cumack_;
    }
  } else {
    out_of_order_.insert(data.seq);
  }

  net::Packet ack;
  ack.packet_id = (static_cast<std::uint64_t>(flow_ + 1) << 40) | (1ULL << 39) | next_packet_id_++;
  ack.flow_id = flow_;
  ack.kind = net::PacketKind::kAck;
  ack.size_bytes = ack_bytes_;
  ack.seq = cumack_;
  ack.sent_at = data.sent_at;
  ack.src = self_;
  ack.dst = peer_;
  ack.echo_seq = data.seq;
  ack.echo_retransmit = data.is_retransmit;
  ack.bottleneck_backlog = data.bottleneck_backlog;
  ++acks_sent_;
  send_(std::move(ack));
}

}  // namespace sls::tcp
