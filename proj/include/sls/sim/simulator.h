#pragma once

#include <cstdint>
#include <optional>
#include <queue>
#include <stdexcept>
#include <vector>

#include "sls/sim/event.h"
#include "sls/sim/rng.h"

namespace sls::sim {

// Raised when a handler or caller violates an engine precondition. The run
// cannot continue after one of these.
class SimulationError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct RunStats {
  std::uint64_t events_processed = 0;
  SimTime final_clock;

  friend bool operator==(const RunStats&, const RunStats&) = default;
};

// Single-threaded discrete-event engine. Events fire in (time, insertion
// order); the clock never moves backwards; anything scheduled beyond the
// horizon is discarded when reached.
class Simulator {
 public:
  explicit Simulator(std::uint64_t seed = 1) : rng_(seed) {}

  Simulator(const Simulator&) = delete;
  Simulator& operator=(const Simulator&) = delete;

  SimTime Now() const { return clock_; }

  // Returns the insertion index assigned to the event.
  std::uint64_t Schedule(SimTime at, EntityId target, EventKind kind,
                         std::function<void()> action);
  std::uint64_t ScheduleIn(double delay_s, EntityId target, EventKind kind,
                           std::function<void()> action);

  // Removes and returns the next event, advancing the clock to it. Returns
  // nullopt when the queue is empty or the next event lies past the horizon.
  std::optional<Event> PopNext();

  RunStats RunUntil(SimTime horizon);

  void set_horizon(SimTime horizon) { horizon_ = horizon; }
  std::optional<SimTime> horizon() const { return horizon_; }
  std::size_t pending() const { return queue_.size(); }
  std::uint64_t events_processed() const { return events_processed_; }

  RngStream& rng() { return rng_; }

 private:
  struct Later {
    bool operator()(const Event& a, const Event& b) const { return FiresBefore(b, a); }
  };

  std::priority_queue<Event, std::vector<Event>, Later> queue_;
  SimTime clock_;
  std::optional<SimTime> horizon_;
  std::uint64_t next_index_ = 0;
  std::uint64_t events_processed_ = 0;
  RngStream rng_;
};

}  // namespace sls::sim
