#pragma once

#include <cstdint>
#include <functional>
#include <string>

#include "sls/net/droptail_queue.h"
#include "sls/net/link.h"
#include "sls/net/packet.h"
#include "sls/sim/simulator.h"

namespace sls::net {

// An egress interface: a droptail queue feeding one link. The packet in
// service is held outside the queue.
class Port {
 public:
  using DeliverFn = std::function<void(Packet)>;
  using DropFn = std::function<void(const Packet&)>;

  Port(sim::Simulator& sim, sim::EntityId id, std::string name, Link link,
       std::size_t capacity_pkts, DeliverFn deliver);

  EnqueueResult Send(Packet p);

  // Stamp Packet::bottleneck_backlog on data packets as they start service.
  void set_stamp_backlog(bool on) { stamp_backlog_ = on; }
  void set_on_drop(DropFn fn) { on_drop_ = std::move(fn); }

  const DropTailQueue& queue() const { return queue_; }
  const Link& link() const { return link_; }
  const std::string& name() const { return name_; }
  bool transmitting() const { return transmitting_; }
  std::uint64_t bytes_sent() const { return bytes_sent_; }

 private:
  void StartTransmission(Packet p);
  void OnTransmissionComplete();

  sim::Simulator& sim_;
  sim::EntityId id_;
  std::string name_;
  Link link_;
  DropTailQueue queue_;
  DeliverFn deliver_;
  DropFn on_drop_;
  bool transmitting_ = false;
  bool stamp_backlog_ = false;
  std::uint64_t bytes_sent_ = 0;
};

}  // namespace sls::net
