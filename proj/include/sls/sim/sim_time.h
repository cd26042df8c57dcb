#pragma once

#include <cmath>
#include <compare>
#include <stdexcept>
#include <string>

namespace sls::sim {

// A point on the simulated time axis, in seconds. Always finite and
// nonnegative.
class SimTime {
 public:
  constexpr SimTime() = default;

  static SimTime FromSeconds(double seconds) {
    if (!std::isfinite(seconds) || seconds < 0.0) {
      throw std::invalid_argument("SimTime must be finite and nonnegative, got " +
                                  std::to_string(seconds));
    }
    return SimTime(seconds);
  }
  static constexpr SimTime Zero() { return SimTime(); }

  constexpr double seconds() const { return seconds_; }

  friend constexpr auto operator<=>(SimTime, SimTime) = default;

  friend SimTime operator+(SimTime t, double dt) { return FromSeconds(t.seconds_ + dt); }
  friend constexpr double operator-(SimTime a, SimTime b) { return a.seconds_ - b.seconds_; }

 private:
  constexpr explicit SimTime(double s) : seconds_(s) {}
  double seconds_ = 0.0;
};

}  // namespace sls::sim
