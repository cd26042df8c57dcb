#pragma once

#include <cstddef>
#include <memory>
#include <vector>

#include "sls/net/node.h"
#include "sls/net/port.h"
#include "sls/sim/simulator.h"

namespace sls::net {

struct DumbbellParams {
  double bottleneck_bw_bps = 40e6;
  double bottleneck_delay_s = 0.050;
  double side_bw_bps = 500e6;
  double side_delay_s = 0.0001;
  std::size_t buffer_pkts = 250;
  // Host interface queues. Hosts release at most a window at a time and are
  // never the loss point in these scenarios.
  std::size_t host_queue_pkts = 1'000'000;
  std::size_t host_pairs = 1;
  std::uint32_t pkt_bytes = 1000;
};

// Throws ConfigError naming the first offending field.
void Validate(const DumbbellParams& params);

// Bottleneck bandwidth times two-way bottleneck propagation delay, in
// packets of params.pkt_bytes.
double BdpPackets(double bw_bps, double oneway_delay_s, std::uint32_t pkt_bytes);

// Source hosts -> router A -> bottleneck -> router B -> sink hosts, with the
// mirror path for acks. Host pair i is source(i)/sink(i).
class Dumbbell {
 public:
  Dumbbell(sim::Simulator& sim, const DumbbellParams& params);

  Dumbbell(const Dumbbell&) = delete;
  Dumbbell& operator=(const Dumbbell&) = delete;

  Node& source(std::size_t i) { return *nodes_.at(source_index_.at(i)); }
  Node& sink(std::size_t i) { return *nodes_.at(sink_index_.at(i)); }
  Node& router_a() { return *nodes_.at(0); }
  Node& router_b() { return *nodes_.at(1); }

  Port& bottleneck_forward() { return *bottleneck_fwd_; }
  Port& bottleneck_reverse() { return *bottleneck_rev_; }
  const Port& bottleneck_forward() const { return *bottleneck_fwd_; }

  std::size_t host_pairs() const { return source_index_.size(); }
  const std::vector<std::unique_ptr<Port>>& ports() const { return ports_; }
  // Side links carrying traffic away from sources (source->A and B->sink).
  std::size_t forward_side_links() const { return forward_side_links_; }
  std::size_t reverse_side_links() const { return reverse_side_links_; }

  double bdp_packets() const;
  const DumbbellParams& params() const { return params_; }

 private:
  Port* AddPort(const std::string& name, double bw, double delay, std::size_t capacity,
                Node& to);

  sim::Simulator& sim_;
  DumbbellParams params_;
  std::vector<std::unique_ptr<Node>> nodes_;
  std::vector<std::unique_ptr<Port>> ports_;
  std::vector<std::size_t> source_index_;
  std::vector<std::size_t> sink_index_;
  Port* bottleneck_fwd_ = nullptr;
  Port* bottleneck_rev_ = nullptr;
  std::size_t forward_side_links_ = 0;
  std::size_t reverse_side_links_ = 0;
};

}  // namespace sls::net
