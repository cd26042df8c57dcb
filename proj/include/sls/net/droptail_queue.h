#pragma once

#include <cstddef>
#include <cstdint>
#include <deque>
#include <optional>

#include "sls/net/packet.h"

namespace sls::net {

enum class EnqueueResult { kAccepted, kDropped };

// FIFO buffer counted in packets. Arrivals that find it full are discarded.
class DropTailQueue {
 public:
  explicit DropTailQueue(std::size_t capacity_pkts);

  EnqueueResult Enqueue(const Packet& p);
  std::optional<Packet> Dequeue();

  // Records a packet that went straight into service on an idle link. It
  // counts as an arrival and a departure but never holds a slot.
  void RecordBypass() {
    ++arrivals_;
    ++departures_;
  }

  std::size_t capacity() const { return capacity_; }
  std::size_t occupancy() const { return buffer_.size(); }
  bool empty() const { return buffer_.empty(); }

  std::uint64_t arrivals() const { return arrivals_; }
  std::uint64_t departures() const { return departures_; }
  std::uint64_t drops() const { return drops_; }

  // arrivals == departures + drops + occupancy
  bool Conserved() const { return arrivals_ == departures_ + drops_ + buffer_.size(); }

 private:
  std::size_t capacity_;
  std::deque<Packet> buffer_;
  std::uint64_t arrivals_ = 0;
  std::uint64_t departures_ = 0;
  std::uint64_t drops_ = 0;
};

}  // namespace sls::net
