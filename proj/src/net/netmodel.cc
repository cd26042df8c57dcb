#include <cmath>
#include <string>
#include <utility>

#include "sls/config_error.h"
#include "sls/net/droptail_queue.h"
#include "sls/net/link.h"
#include "sls/net/node.h"
#include "sls/net/packet.h"
#include "sls/net/port.h"
#include "sls/net/topology.h"

namespace sls::net {

std::string_view ToString(PacketKind kind) {
  switch (kind) {
    case PacketKind::kData:
      return "data";
    case PacketKind::kAck:
      return "ack";
    case PacketKind::kUdp:
      return "udp";
  }
  return "unknown";
}

Link::Link(double bandwidth_bps, double prop_delay_s)
    : bandwidth_bps_(bandwidth_bps), prop_delay_s_(prop_delay_s) {
  if (!(bandwidth_bps > 0.0) || !std::isfinite(bandwidth_bps)) {
    throw ConfigError("link bandwidth must be positive");
  }
  if (!(prop_delay_s >= 0.0) || !std::isfinite(prop_delay_s)) {
    throw ConfigError("link propagation delay must be nonnegative");
  }
}

sim::SimTime Link::Transmit(std::uint32_t size_bytes, sim::SimTime now) {
  const sim::SimTime start = std::max(now, busy_until_);
  busy_until_ = start + SerializationTime(size_bytes);
  return busy_until_ + prop_delay_s_;
}

DropTailQueue::DropTailQueue(std::size_t capacity_pkts) : capacity_(capacity_pkts) {
  if (capacity_pkts == 0) throw ConfigError("queue capacity must be at least one packet");
}

EnqueueResult DropTailQueue::Enqueue(const Packet& p) {
  ++arrivals_;
  if (buffer_.size() >= capacity_) {
    ++drops_;
    return EnqueueResult::kDropped;
  }
  buffer_.push_back(p);
  return EnqueueResult::kAccepted;
}

std::optional<Packet> DropTailQueue::Dequeue() {
  if (buffer_.empty()) return std::nullopt;
  Packet p = std::move(buffer_.front());
  buffer_.pop_front();
  ++departures_;
  return p;
}

Port::Port(sim::Simulator& sim, sim::EntityId id, std::string name, Link link,
           std::size_t capacity_pkts, DeliverFn deliver)
    : sim_(sim),
      id_(id),
      name_(std::move(name)),
      link_(link),
      queue_(capacity_pkts),
      deliver_(std::move(deliver)) {}

EnqueueResult Port::Send(Packet p) {
  if (!transmitting_) {
    queue_.RecordBypass();
    StartTransmission(std::move(p));
    return EnqueueResult::kAccepted;
  }
  const EnqueueResult r = queue_.Enqueue(p);
  if (r == EnqueueResult::kDropped && on_drop_) on_drop_(p);
  return r;
}

void Port::StartTransmission(Packet p) {
  transmitting_ = true;
  if (stamp_backlog_ && p.kind == PacketKind::kData) {
    p.bottleneck_backlog = static_cast<std::int32_t>(queue_.occupancy());
  }
  bytes_sent_ += p.size_bytes;
  const sim::SimTime arrival = link_.Transmit(p.size_bytes, sim_.Now());
  sim_.Schedule(link_.busy_until(), id_, sim::EventKind::kTransmissionComplete,
                [this] { OnTransmissionComplete(); });
  sim_.Schedule(arrival, id_, sim::EventKind::kPacketArrival,
                [this, pkt = std::move(p)]() mutable { deliver_(std::move(pkt)); });
}

void Port::OnTransmissionComplete() {
  transmitting_ = false;
  if (auto next = queue_.Dequeue()) StartTransmission(std::move(*next));
}

void Node::Receive(Packet p) {
  if (p.dst == id_) {
    auto it = agents_.find(p.flow_id);
    if (it != agents_.end()) it->second(p);
    return;
  }
  auto it = routes_.find(p.dst);
  Port* port = it != routes_.end() ? it->second : default_route_;
  if (port == nullptr) {
    throw sim::SimulationError("node " + name_ + " has no route to node " +
                               std::to_string(p.dst));
  }
  port->Send(std::move(p));
}

void Validate(const DumbbellParams& params) {
  auto positive = [](double v, const char* field) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw ConfigError(std::string(field) + " must be positive");
    }
  };
  positive(params.bottleneck_bw_bps, "bottleneck_bw_bps");
  positive(params.bottleneck_delay_s, "bottleneck_oneway_delay_s");
  positive(params.side_bw_bps, "side_bw_bps");
  positive(params.side_delay_s, "side_delay_s");
  if (params.buffer_pkts == 0) throw ConfigError("buffer_pkts must be positive");
  if (params.host_queue_pkts == 0) throw ConfigError("host_queue_pkts must be positive");
  if (params.host_pairs == 0) throw ConfigError("at least one flow is required");
  if (params.pkt_bytes == 0) throw ConfigError("pkt_bytes must be positive");
}

double BdpPackets(double bw_bps, double oneway_delay_s, std::uint32_t pkt_bytes) {
  return bw_bps * 2.0 * oneway_delay_s / (8.0 * pkt_bytes);
}

Dumbbell::Dumbbell(sim::Simulator& sim, const DumbbellParams& params)
    : sim_(sim), params_(params) {
  Validate(params);
  nodes_.push_back(std::make_unique<Node>(0, "routerA"));
  nodes_.push_back(std::make_unique<Node>(1, "routerB"));
  for (std::size_t i = 0; i < params.host_pairs; ++i) {
    source_index_.push_back(nodes_.size());
    nodes_.push_back(std::make_unique<Node>(static_cast<NodeId>(nodes_.size()),
                                            "src" + std::to_string(i)));
    sink_index_.push_back(nodes_.size());
    nodes_.push_back(std::make_unique<Node>(static_cast<NodeId>(nodes_.size()),
                                            "dst" + std::to_string(i)));
  }

  Node& a = router_a();
  Node& b = router_b();
  bottleneck_fwd_ = AddPort("A->B", params.bottleneck_bw_bps, params.bottleneck_delay_s,
                            params.buffer_pkts, b);
  bottleneck_rev_ = AddPort("B->A", params.bottleneck_bw_bps, params.bottleneck_delay_s,
                            params.buffer_pkts, a);
  bottleneck_fwd_->set_stamp_backlog(true);
  a.SetDefaultRoute(bottleneck_fwd_);
  b.SetDefaultRoute(bottleneck_rev_);

  for (std::size_t i = 0; i < params.host_pairs; ++i) {
    Node& src = source(i);
    Node& dst = sink(i);
    Port* up = AddPort(src.name() + "->A", params.side_bw_bps, params.side_delay_s,
                       params.host_queue_pkts, a);
    Port* down = AddPort("B->" + dst.name(), params.side_bw_bps, params.side_delay_s,
                         params.buffer_pkts, dst);
    Port* ack_up = AddPort(dst.name() + "->B", params.side_bw_bps, params.side_delay_s,
                           params.host_queue_pkts, b);
    Port* ack_down = AddPort("A->" + src.name(), params.side_bw_bps, params.side_delay_s,
                             params.buffer_pkts, src);
    forward_side_links_ += 2;
    reverse_side_links_ += 2;
    src.SetDefaultRoute(up);
    dst.SetDefaultRoute(ack_up);
    b.AddRoute(dst.id(), down);
    a.AddRoute(src.id(), ack_down);
  }
}

Port* Dumbbell::AddPort(const std::string& name, double bw, double delay,
                        std::size_t capacity, Node& to) {
  const auto id = static_cast<sim::EntityId>(1000 + ports_.size());
  ports_.push_back(std::make_unique<Port>(sim_, id, name, Link(bw, delay), capacity,
                                          [&to](Packet p) { to.Receive(std::move(p)); }));
  return ports_.back().get();
}

double Dumbbell::bdp_packets() const {
  return BdpPackets(params_.bottleneck_bw_bps, params_.bottleneck_delay_s, params_.pkt_bytes);
}

}  // namespace sls::net
