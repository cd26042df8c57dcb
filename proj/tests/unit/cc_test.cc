#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "sls/cc/backlog.h"
#include "sls/cc/controllers.h"
#include "sls/sim/rng.h"

using namespace sls::cc;

namespace {

ControllerView ViewOf(double cwnd, double base, double rtt, double ssthresh = kUnboundedSsthresh) {
  ControllerView v;
  v.cwnd = cwnd;
  v.ssthresh = ssthresh;
  v.base_rtt_s = base;
  v.last_rtt_s = rtt;
  v.acked_packets = 1;
  v.fresh_rtt_sample = true;
  return v;
}

// RTT at which a window of cwnd holds n packets in the queue over base.
double RttForBacklog(double cwnd, double base, double n) { return base * cwnd / (cwnd - n); }

}  // namespace

TEST_CASE("backlog estimate") {
  CHECK(EstimateBacklog(100, 0.1, 0.1) == doctest::Approx(0.0));
  CHECK(EstimateBacklog(100, 0.1, 0.125) == doctest::Approx(20.0));
  CHECK(EstimateBacklog(500, 0.1, 0.15) == doctest::Approx(166.6667).epsilon(1e-5));
  CHECK(EstimateBacklog(100, 0.1, 0.09) == doctest::Approx(0.0));
  CHECK_THROWS_AS(EstimateBacklog(100, 0.1, 0.0), std::domain_error);
  CHECK_THROWS_AS(EstimateBacklog(100, -0.1, 0.1), std::domain_error);
}

TEST_CASE("rtt quantization to a clock tick") {
  CHECK(QuantizeRtt(0.1004, 0.0) == doctest::Approx(0.1004));
  CHECK(QuantizeRtt(0.1004, 0.01) == doctest::Approx(0.10));
  CHECK(QuantizeRtt(0.1051, 0.01) == doctest::Approx(0.11));
  CHECK(QuantizeRtt(0.001, 0.01) == doctest::Approx(0.01));
}

TEST_CASE("ssthreshless linear mode above beta") {
  BacklogProbe probe;
  probe.beta = 3.0;
  const double inc = SsthreshlessIncrement(probe, ViewOf(200, 0.1, RttForBacklog(200, 0.1, 5)));
  CHECK(probe.n_est == doctest::Approx(5.0));
  CHECK(inc == doctest::Approx(0.005));
  CHECK(probe.congestive_status);
  CHECK(probe.congestion_event_no == 0);
}

TEST_CASE("ssthreshless doubles with an empty queue and no events") {
  BacklogProbe probe;
  probe.beta = 3.0;
  CHECK(SsthreshlessIncrement(probe, ViewOf(10, 0.1, 0.1)) == doctest::Approx(1.0));
}

TEST_CASE("ssthreshless halves its increment after each congestive episode") {
  BacklogProbe probe;
  probe.beta = 3.0;
  probe.congestive_status = true;
  probe.congestion_event_no = 1;
  const double inc = SsthreshlessIncrement(probe, ViewOf(100, 0.1, RttForBacklog(100, 0.1, 1)));
  CHECK(probe.congestion_event_no == 2);
  CHECK_FALSE(probe.congestive_status);
  CHECK(inc == doctest::Approx(0.25));
  // No further event while the status stays low.
  SsthreshlessIncrement(probe, ViewOf(100, 0.1, RttForBacklog(100, 0.1, 1)));
  CHECK(probe.congestion_event_no == 2);
}

TEST_CASE("ssthreshless increment never drops below linear") {
  BacklogProbe probe;
  probe.beta = 3.0;
  probe.congestion_event_no = 20;
  CHECK(SsthreshlessIncrement(probe, ViewOf(50, 0.1, 0.1)) == doctest::Approx(1.0 / 50));
}

TEST_CASE("ssthreshless increment stays within bounds for arbitrary inputs") {
  sls::sim::RngStream rng(3);
  BacklogProbe probe;
  probe.beta = 3.0;
  std::int64_t events = 0;
  for (int i = 0; i < 5000; ++i) {
    const double cwnd = 1.0 + 999.0 * rng.NextUniform();
    const double base = 0.01 + 0.2 * rng.NextUniform();
    const double rtt = base * (1.0 + rng.NextUniform());
    const double inc = SsthreshlessIncrement(probe, ViewOf(cwnd, base, rtt));
    CHECK(inc >= 1.0 / cwnd - 1e-12);
    CHECK(inc <= 1.0 + 1e-12);
    CHECK(probe.congestion_event_no >= events);
    events = probe.congestion_event_no;
  }
}

TEST_CASE("ssthreshless controller leaves for good on the first fast recovery") {
  Ssthreshless c(3.0);
  ControllerView v = ViewOf(400, 0.1, 0.1);
  CHECK(c.InStartup(v));
  const double ss = c.OnFastRecoveryEntry(v);
  CHECK(ss == doctest::Approx(200.0));
  v.cwnd = 200;
  v.ssthresh = 200;
  CHECK_FALSE(c.InStartup(v));
  const auto u = c.OnPacketAcked(v);
  CHECK(u.cwnd == doctest::Approx(200.0 + 1.0 / 200));
}

TEST_CASE("ssthreshless rejects bad parameters") {
  CHECK_THROWS_AS(Ssthreshless(0.0), std::invalid_argument);
  CHECK_THROWS_AS(Ssthreshless(3.0, false, -0.01), std::invalid_argument);
}

TEST_CASE("slow start below and at ssthresh") {
  SlowStart ss(500);
  CHECK(ss.OnPacketAcked(ViewOf(4, 0.1, 0.1, 500)).cwnd == doctest::Approx(5.0));
  CHECK(ss.OnPacketAcked(ViewOf(500, 0.1, 0.1, 500)).cwnd == doctest::Approx(500.0 + 1.0 / 500));
  SlowStart small(32);
  CHECK(small.InitialSsthresh() == 32);
  CHECK_FALSE(small.InStartup(ViewOf(32, 0.1, 0.1, 32)));
  CHECK(small.OnPacketAcked(ViewOf(32, 0.1, 0.1, 32)).cwnd == doctest::Approx(32.0 + 1.0 / 32));
}

TEST_CASE("limited slow start") {
  CHECK(LimitedSlowStartIncrement(ViewOf(50, 0.1, 0.1), 100) == doctest::Approx(1.0));
  CHECK(LimitedSlowStartIncrement(ViewOf(100, 0.1, 0.1), 100) == doctest::Approx(1.0));
  CHECK(LimitedSlowStartIncrement(ViewOf(200, 0.1, 0.1), 100) == doctest::Approx(0.25));
}

TEST_CASE("limited slow start adds about max_ssthresh/2 per round when large") {
  double cwnd = 1000;
  const double start = cwnd;
  for (int i = 0; i < 1000; ++i) cwnd += LimitedSlowStartIncrement(ViewOf(cwnd, 0.1, 0.1), 100);
  CHECK(cwnd - start == doctest::Approx(50.0).epsilon(0.1));
}

TEST_CASE("hoe packet pair estimate") {
  const auto e = HoeInitialSsthresh(0.0002, 0.1004, 1000);
  REQUIRE(e.has_value());
  CHECK(e->bw_est_bps == doctest::Approx(40e6));
  CHECK(e->ssthresh_est == doctest::Approx(502.0));
  CHECK_FALSE(HoeInitialSsthresh(0.0, 0.1004, 1000).has_value());
  CHECK_FALSE(HoeInitialSsthresh(-1e-4, 0.1004, 1000).has_value());
  // A pair spaced only by a 500 Mbps side link overshoots the pipe.
  const auto side = HoeInitialSsthresh(16e-6, 0.1004, 1000);
  REQUIRE(side.has_value());
  CHECK(side->ssthresh_est > 500.0);
}

namespace {

// Feeds acks in order, with the window fully outstanding, until a round
// boundary passes.
double VegasRound(Vegas& v, double cwnd, std::int64_t& seq, double base, double rtt) {
  const std::int64_t rounds = v.rounds_completed();
  while (v.rounds_completed() == rounds) {
    ControllerView view = ViewOf(cwnd, base, rtt);
    view.acked_seq = seq;
    view.snd_una = seq;
    view.snd_nxt = seq + static_cast<std::int64_t>(cwnd);
    cwnd = v.OnPacketAcked(view).cwnd;
    ++seq;
  }
  return cwnd;
}

}  // namespace

TEST_CASE("vegas doubles on growth rounds and freezes on measurement rounds") {
  Vegas v(VegasParams{});
  std::int64_t seq = 0;
  CHECK(v.growth_round());
  double cwnd = VegasRound(v, 8, seq, 0.1, 0.1);
  CHECK(cwnd == doctest::Approx(16.0));
  CHECK_FALSE(v.growth_round());
  cwnd = VegasRound(v, cwnd, seq, 0.1, 0.1);
  CHECK(cwnd == doctest::Approx(16.0));
  CHECK(v.growth_round());
  CHECK(v.rounds_completed() == 2);
}

TEST_CASE("vegas leaves startup once the round excess exceeds gamma") {
  CHECK(VegasDiff(15, 0.1, 0.1 / 0.9) == doctest::Approx(1.5));
  Vegas v(VegasParams{1.0, 1.0, 3.0});
  ControllerView view = ViewOf(15, 0.1, 0.1 / 0.9);
  view.acked_seq = 14;
  view.snd_nxt = 15;
  CHECK(v.InStartup(view));
  v.OnPacketAcked(view);
  CHECK_FALSE(v.InStartup(view));
}

TEST_CASE("newreno increment") {
  CHECK(NewRenoIncrement(ViewOf(10, 0.1, 0.1, 20)) == doctest::Approx(1.0));
  CHECK(NewRenoIncrement(ViewOf(40, 0.1, 0.1, 20)) == doctest::Approx(1.0 / 40));
}
