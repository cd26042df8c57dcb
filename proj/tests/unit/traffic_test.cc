#include <doctest.h>

#include <cmath>
#include <vector>

#include "sls/config_error.h"
#include "sls/sim/simulator.h"
#include "sls/traffic/udp_cbr.h"

using namespace sls;
using sim::SimTime;

TEST_CASE("cbr interval") {
  traffic::UdpCbrParams p{10e6, 1000, 1.0, 5.0};
  CHECK(traffic::CbrInterval(p) == doctest::Approx(0.0008));
}

TEST_CASE("next emission before start, inside and after stop") {
  traffic::UdpCbrParams p{10e6, 1000, 1.0, 5.0};
  const auto first = traffic::UdpNextEmission(p, SimTime::FromSeconds(0.5));
  REQUIRE(first.has_value());
  CHECK(first->seconds() == doctest::Approx(1.0));
  const auto mid = traffic::UdpNextEmission(p, SimTime::FromSeconds(1.0005));
  REQUIRE(mid.has_value());
  CHECK(mid->seconds() == doctest::Approx(1.0008));
  CHECK_FALSE(traffic::UdpNextEmission(p, SimTime::FromSeconds(5.1)).has_value());
}

TEST_CASE("invalid cbr parameters") {
  CHECK_THROWS_AS(traffic::Validate({0.0, 1000, 1.0, 5.0}), ConfigError);
  CHECK_THROWS_AS(traffic::Validate({10e6, 0, 1.0, 5.0}), ConfigError);
  CHECK_THROWS_AS(traffic::Validate({10e6, 1000, 5.0, 1.0}), ConfigError);
}

TEST_CASE("source emits on the grid and only inside its active interval") {
  sim::Simulator sim;
  std::vector<double> at;
  traffic::UdpCbrParams p{10e6, 1000, 1.0, 5.0};
  traffic::UdpCbrSource src(sim, 1, 9, 0, 1, p, [&](net::Packet pkt) {
    CHECK(pkt.kind == net::PacketKind::kUdp);
    at.push_back(sim.Now().seconds());
  });
  src.Start();
  sim.RunUntil(SimTime::FromSeconds(10.0));
  const double expected = std::floor((p.stop_s - p.start_s) / traffic::CbrInterval(p));
  CHECK(static_cast<double>(at.size()) >= expected - 1);
  CHECK(static_cast<double>(at.size()) <= expected + 1);
  CHECK(src.packets_sent() == at.size());
  REQUIRE_FALSE(at.empty());
  CHECK(at.front() == doctest::Approx(1.0));
  CHECK(at.back() < 5.0);
  CHECK(at[1000] == doctest::Approx(1.0 + 1000 * 0.0008).epsilon(1e-12));
}
