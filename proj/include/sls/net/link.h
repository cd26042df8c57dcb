#pragma once

#include <cstdint>

#include "sls/sim/sim_time.h"

namespace sls::net {

// A unidirectional point-to-point link. Packets serialize one at a time in
// the order they start; propagation delay is added after serialization.
class Link {
 public:
  Link(double bandwidth_bps, double prop_delay_s);

  double SerializationTime(std::uint32_t size_bytes) const {
    return static_cast<double>(size_bytes) * 8.0 / bandwidth_bps_;
  }

  // Starts a transmission at max(now, busy_until) and returns the arrival
  // time at the far end.
  sim::SimTime Transmit(std::uint32_t size_bytes, sim::SimTime now);

  double bandwidth_bps() const { return bandwidth_bps_; }
  double prop_delay_s() const { return prop_delay_s_; }
  sim::SimTime busy_until() const { return busy_until_; }

 private:
  double bandwidth_bps_;
  double prop_delay_s_;
  sim::SimTime busy_until_;
};

}  // namespace sls::net
