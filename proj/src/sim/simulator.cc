#include "sls/sim/simulator.h"

#include <string>
#include <utility>

namespace sls::sim {

std::string_view ToString(EventKind kind) {
  switch (kind) {
    case EventKind::kPacketArrival:
      return "packet-arrival";
    case EventKind::kTransmissionComplete:
      return "transmission-complete";
    case EventKind::kTimerExpiry:
      return "timer-expiry";
    case EventKind::kSourceStart:
      return "source-start";
    case EventKind::kSourceStop:
      return "source-stop";
  }
  return "unknown";
}

std::uint64_t RngStream::NextBelow(std::uint64_t bound) {
  // Rejection sampling keeps the result unbiased.
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t v;
  do {
    v = NextU64();
  } while (v >= limit);
  return v % bound;
}

std::uint64_t Simulator::Schedule(SimTime at, EntityId target, EventKind kind,
                                  std::function<void()> action) {
  if (at < clock_) {
    throw SimulationError("event scheduled in the past: t=" + std::to_string(at.seconds()) +
                          " < clock=" + std::to_string(clock_.seconds()) + " (" +
                          std::string(ToString(kind)) + ", target " + std::to_string(target) +
                          ")");
  }
  const std::uint64_t index = next_index_++;
  queue_.push(Event{at, index, target, kind, std::move(action)});
  return index;
}

std::uint64_t Simulator::ScheduleIn(double delay_s, EntityId target, EventKind kind,
                                    std::function<void()> action) {
  if (!(delay_s >= 0.0)) {
    throw SimulationError("negative scheduling delay " + std::to_string(delay_s));
  }
  return Schedule(clock_ + delay_s, target, kind, std::move(action));
}

std::optional<Event> Simulator::PopNext() {
  if (queue_.empty()) return std::nullopt;
  if (horizon_ && queue_.top().fire_at > *horizon_) return std::nullopt;
  // priority_queue::top is const; the event is moved out before pop.
  Event ev = std::move(const_cast<Event&>(queue_.top()));
  queue_.pop();
  clock_ = ev.fire_at;
  return ev;
}

RunStats Simulator::RunUntil(SimTime horizon) {
  horizon_ = horizon;
  while (auto ev = PopNext()) {
    ++events_processed_;
    if (ev->action) ev->action();
  }
  return RunStats{events_processed_, clock_};
}

}  // namespace sls::sim
