#pragma once

#include <cstdint>
#include <functional>
#include <string_view>

#include "sls/sim/sim_time.h"

namespace sls::sim {

using EntityId = std::uint32_t;

enum class EventKind {
  kPacketArrival,
  kTransmissionComplete,
  kTimerExpiry,
  kSourceStart,
  kSourceStop,
};

std::string_view ToString(EventKind kind);

struct Event {
  SimTime fire_at;
  std::uint64_t insertion_index = 0;
  EntityId target = 0;
  EventKind kind = EventKind::kTimerExpiry;
  std::function<void()> action;
};

// Strict ordering key: earlier time first, then scheduling order.
inline bool FiresBefore(const Event& a, const Event& b) {
  if (a.fire_at != b.fire_at) return a.fire_at < b.fire_at;
  return a.insertion_index < b.insertion_index;
}

}  // namespace sls::sim
