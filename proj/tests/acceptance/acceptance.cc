// Acceptance checks for the startup-algorithm experiments. Prints one
// PASS/FAIL line per criterion and exits nonzero if any criterion fails.
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "sls/exp/csv.h"
#include "sls/exp/runner.h"
#include "sls/exp/scenario.h"
#include "sls/exp/sweep.h"
#include "sls/sim/simulator.h"

using namespace sls;
using namespace sls::exp;

namespace {

struct Verdict {
  bool pass = true;
  std::string detail;

  void Require(bool ok, const std::string& what) {
    if (!ok) pass = false;
    if (!detail.empty()) detail += "; ";
    detail += (ok ? "" : "!") + what;
  }
};

std::string Fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

const RunResult& ByLabel(const std::vector<RunResult>& runs, const std::string& label) {
  for (const auto& r : runs) {
    if (r.flows.size() == 1 && r.flows[0].label == label) return r;
  }
  std::fprintf(stderr, "missing run %s\n", label.c_str());
  std::abort();
}

double Util(const RunResult& r) { return r.windows.front().utilization; }
double Thr(const RunResult& r) { return r.windows.front().flow_throughput_bps.front(); }

double Ratio(double a, double b) {
  return b > 0.0 ? a / b : std::numeric_limits<double>::infinity();
}

std::optional<double> FirstLossTime(const FlowResult& f) {
  for (const auto& e : f.events) {
    if (e.kind == tcp::SenderEventKind::kFastRecoveryEnter ||
        e.kind == tcp::SenderEventKind::kTimeout) {
      return e.at.seconds();
    }
  }
  return std::nullopt;
}

// Blind ssthresh: a threshold near the BDP beats both a far too large and a
// far too small one.
Verdict BlindSsthresh() {
  const auto runs = RunExperiment(Preset("table1"));
  const double a = Util(ByLabel(runs, "SS(A)"));
  const double l = Util(ByLabel(runs, "SS(L)"));
  const double s = Util(ByLabel(runs, "SS(S)"));
  Verdict v;
  v.Require(a >= 0.78 && a <= 0.95, "SS(A)=" + Fmt("%.3f", a) + " in [0.78,0.95]");
  v.Require(l <= 0.25, "SS(L)=" + Fmt("%.3f", l) + " <= 0.25");
  v.Require(s <= 0.15, "SS(S)=" + Fmt("%.3f", s) + " <= 0.15");
  v.Require(a > l && l > s, "order SS(A) > SS(L) > SS(S)");
  return v;
}

// Temporal queue buildup: with a small buffer, slow start toward an exact
// BDP threshold still overflows, recovery fails, and a timeout follows.
Verdict QueueBuildup() {
  const auto runs = RunExperiment(Preset("fig3"));
  const RunResult& r = runs.front();
  const FlowResult& f = r.flows.front();
  Verdict v;

  std::optional<double> startup_drop;
  for (const auto& d : r.drops) {
    if (d.kind == net::PacketKind::kData && d.flow_phase == cc::Phase::kStartup) {
      startup_drop = d.time_s;
      break;
    }
  }
  v.Require(startup_drop.has_value(),
            "buffer-full drop during exponential growth" +
                (startup_drop ? " at " + Fmt("%.3fs", *startup_drop) : std::string()));

  std::optional<double> fr_at;
  for (const auto& e : f.events) {
    if (e.kind == tcp::SenderEventKind::kFastRecoveryEnter &&
        (!startup_drop || e.at.seconds() >= *startup_drop)) {
      fr_at = e.at.seconds();
      break;
    }
  }
  v.Require(fr_at.has_value(), "fast recovery after the drop" +
                                   (fr_at ? " at " + Fmt("%.3fs", *fr_at) : std::string()));

  const tcp::SenderEvent* timeout = nullptr;
  for (const auto& e : f.events) {
    if (e.kind == tcp::SenderEventKind::kTimeout && fr_at && e.at.seconds() > *fr_at) {
      timeout = &e;
      break;
    }
  }
  v.Require(timeout != nullptr, "timeout after recovery" +
                                    (timeout ? " at " + Fmt("%.3fs", timeout->at.seconds())
                                             : std::string()));
  if (timeout) {
    v.Require(timeout->cwnd == 1.0, "cwnd reset to " + Fmt("%g", timeout->cwnd));
    v.Require(timeout->ssthresh < 250.0,
              "post-timeout ssthresh=" + Fmt("%.1f", timeout->ssthresh) + " < 250");
  }
  return v;
}

Verdict BetaInsensitivity() {
  const auto runs = RunExperiment(Preset("table2_beta"));
  std::vector<double> u;
  for (const auto& r : runs) u.push_back(Util(r));
  Verdict v;
  for (std::size_t i = 0; i < u.size(); ++i) {
    v.Require(u[i] >= 0.75 && u[i] <= 0.92,
              runs[i].flows[0].label + "=" + Fmt("%.3f", u[i]) + " in [0.75,0.92]");
  }
  const auto [lo, hi] = std::minmax_element(u.begin(), u.end());
  v.Require(*hi - *lo <= 0.07, "spread=" + Fmt("%.3f", *hi - *lo) + " <= 0.07");
  v.Require(std::is_sorted(u.begin(), u.end()), "nondecreasing in beta");
  return v;
}

Verdict RampUp() {
  const auto runs = RunExperiment(Preset("table3"));
  const double sls = Util(ByLabel(runs, "SLS"));
  const double ssa = Util(ByLabel(runs, "SS(A)"));
  const double vegas = Util(ByLabel(runs, "Vegas"));
  Verdict v;
  v.Require(sls >= 0.70, "SLS=" + Fmt("%.3f", sls) + " >= 0.70");
  v.Require(ssa <= 0.40, "SS(A)=" + Fmt("%.3f", ssa) + " <= 0.40");
  v.Require(vegas <= 0.35, "Vegas=" + Fmt("%.3f", vegas) + " <= 0.35");
  v.Require(sls >= 2.0 * ssa && sls >= 2.0 * vegas, "SLS >= 2x both");
  return v;
}

Verdict SmallBuffer() {
  const auto runs = RunExperiment(Preset("table4"));
  const RunResult& sls = ByLabel(runs, "SLS");
  const double lss = Ratio(Thr(sls), Thr(ByLabel(runs, "LSS")));
  const double hc = Ratio(Thr(sls), Thr(ByLabel(runs, "HC")));
  Verdict v;
  v.Require(Util(sls) >= 0.65, "SLS=" + Fmt("%.3f", Util(sls)) + " >= 0.65");
  v.Require(lss >= 4.0, "SLS/LSS=" + Fmt("%.2f", lss) + " >= 4");
  v.Require(hc >= 3.0, "SLS/HC=" + Fmt("%.2f", hc) + " >= 3");
  return v;
}

Verdict LongDelay() {
  const auto runs = RunExperiment(Preset("table5"));
  const RunResult& sls = ByLabel(runs, "SLS");
  const double u = Util(sls);
  const double hc = Util(ByLabel(runs, "HC"));
  const double ssl = Ratio(Thr(sls), Thr(ByLabel(runs, "SS(L)")));
  Verdict v;
  v.Require(u >= 0.75, "SLS=" + Fmt("%.3f", u) + " >= 0.75");
  v.Require(std::abs(hc - u) <= 0.15, "HC=" + Fmt("%.3f", hc) + " within 0.15 of SLS");
  v.Require(ssl >= 8.0, "SLS/SS(L)=" + Fmt("%.2f", ssl) + " >= 8");

  const std::vector<double> delays_ms = {10, 25, 50, 75, 100};
  SweepOptions opts;
  opts.threads = 1;
  const auto sweep = Sweep(SweepAxis::kDelay, delays_ms, {"sls", "ss_s"}, opts);
  std::vector<double> sls_u, sss_u;
  for (double d : delays_ms) {
    sls_u.push_back(sweep.at({d, "sls"}).report.utilization);
    sss_u.push_back(sweep.at({d, "ss_s"}).report.utilization);
  }
  const auto [lo, hi] = std::minmax_element(sls_u.begin(), sls_u.end());
  v.Require(*hi - *lo <= 0.15, "SLS sweep range=" + Fmt("%.3f", *hi - *lo) + " <= 0.15");
  v.Require(std::is_sorted(sss_u.rbegin(), sss_u.rend()), "SS(S) nonincreasing in delay");
  return v;
}

Verdict HighBandwidth() {
  const auto runs = RunExperiment(Preset("table6"));
  const RunResult& sls = ByLabel(runs, "SLS");
  const double ssl = Ratio(Thr(sls), Thr(ByLabel(runs, "SS(L)")));
  Verdict v;
  v.Require(Util(sls) >= 0.75, "SLS=" + Fmt("%.3f", Util(sls)) + " >= 0.75");
  v.Require(ssl >= 15.0, "SLS/SS(L)=" + Fmt("%.2f", ssl) + " >= 15");
  return v;
}

Verdict CrossTraffic() {
  RunOptions ro;
  ro.collect_acks = true;
  const auto runs = RunExperiment(Preset("table7_udp"), ro);
  const RunResult& sls = ByLabel(runs, "SLS");
  const double ratio = Ratio(Thr(sls), Thr(ByLabel(runs, "SS(S)")));
  const auto& udp = *sls.config.cross_traffic;
  Verdict v;
  v.Require(ratio >= 1.8, "SLS/SS(S) throughput=" + Fmt("%.2f", ratio) + " >= 1.8");

  // A completed congestive episode halves the adjustive step.
  int halvings = 0;
  std::int64_t prev_events = -1;
  std::optional<double> resumed_at;
  const auto loss = FirstLossTime(sls.flows[0]);
  for (const auto& a : sls.flows[0].acks) {
    const double t = a.at.seconds();
    if (loss && t >= *loss) break;
    if (prev_events >= 0 && a.diag.congestion_event_no > prev_events && t >= udp.start_s &&
        t < udp.stop_s) {
      ++halvings;
    }
    prev_events = a.diag.congestion_event_no;
    if (!resumed_at && t >= udp.stop_s && !a.diag.linear_mode &&
        a.diag.increment > 1.0 / a.cwnd_before) {
      resumed_at = t;
    }
  }
  v.Require(halvings >= 1, "growth-rate halvings while UDP active=" + Fmt("%g", halvings));
  v.Require(resumed_at && *resumed_at <= udp.stop_s + 2.0,
            "adjustive (super-linear) increments resume " +
                (resumed_at ? Fmt("%.3fs", *resumed_at - udp.stop_s) + " after UDP stop"
                            : std::string("never")));
  return v;
}

Verdict Friendliness() {
  const auto runs = RunExperiment(Preset("fig9_fairness"));
  const RunResult& r = runs.front();
  auto window = [&](double a, double b) -> const WindowSummary& {
    for (const auto& w : r.windows) {
      if (w.window.start_s == a && w.window.end_s == b) return w;
    }
    std::abort();
  };
  const WindowSummary& last = window(50, 60);
  Verdict v;
  v.Require(last.jain >= 0.95, "Jain(last 10s)=" + Fmt("%.4f", last.jain) + " >= 0.95");

  const auto& cw = last.flow_mean_cwnd;
  const double mean = std::accumulate(cw.begin(), cw.end(), 0.0) / static_cast<double>(cw.size());
  double worst = 0.0;
  for (double c : cw) worst = std::max(worst, std::abs(c - mean) / mean);
  v.Require(worst <= 0.25, "max mean-cwnd deviation=" + Fmt("%.3f", worst) +
                               " of global mean " + Fmt("%.1f", mean) + " <= 0.25");

  const WindowSummary& pre = window(25, 30);
  const WindowSummary& post = window(30, 35);
  const double shift = 4.0 / 5.0;  // four equal shares become five
  double worst_keep = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < r.flows.size(); ++i) {
    const double expected = pre.flow_throughput_bps[i] * shift;
    if (expected > 0.0) worst_keep = std::min(worst_keep, post.flow_throughput_bps[i] / expected);
  }
  v.Require(worst_keep >= 0.65,
            "worst post/pre throughput after fair-share shift=" + Fmt("%.3f", worst_keep) +
                " >= 0.65");
  return v;
}

// The backlog estimate tracks the real occupancy of the bottleneck buffer.
Verdict BacklogEstimate() {
  ScenarioConfig cfg = DefaultScenario();
  cfg.id = "backlog_fidelity";
  cfg.horizon_s = 10.0;
  RunOptions ro;
  ro.collect_acks = true;
  const RunResult r = RunScenario(cfg, ro);
  const auto& f = r.flows.front();
  const auto loss = FirstLossTime(f);
  const double base = cfg.bottleneck_oneway_delay_s * 2.0;

  std::size_t total = 0, good = 0;
  std::size_t lag = 0;  // index of the ack one base RTT back
  for (std::size_t i = 0; i < f.acks.size(); ++i) {
    const auto& a = f.acks[i];
    if (loss && a.at.seconds() >= *loss) break;
    if (!a.rtt_sampled || !a.diag.n_est || a.echoed_backlog < 0) continue;
    while (lag < i && f.acks[lag].at.seconds() < a.at.seconds() - base) ++lag;
    const double per_rtt_increment = a.cwnd_after - f.acks[lag].cwnd_before;
    ++total;
    if (std::abs(*a.diag.n_est - a.echoed_backlog) <= per_rtt_increment + 5.0) ++good;
  }
  const double frac = total ? static_cast<double>(good) / static_cast<double>(total) : 0.0;
  Verdict v;
  v.Require(total > 0 && frac >= 0.90, "within bound for " + Fmt("%.1f%%", 100.0 * frac) +
                                           " of " + Fmt("%g", static_cast<double>(total)) +
                                           " pre-loss acks (need 90%)");
  return v;
}

bool EventOrderHolds(std::uint64_t seed, int events) {
  sim::Simulator s(seed);
  sim::RngStream draw(seed ^ 0x5eedULL);
  struct Fired {
    double t;
    int order;
  };
  std::vector<Fired> fired;
  fired.reserve(static_cast<std::size_t>(events));
  for (int i = 0; i < events; ++i) {
    // Coarse times force many exact ties.
    const double t = static_cast<double>(draw.NextBelow(1000)) * 1e-3;
    s.Schedule(sim::SimTime::FromSeconds(t), 0, sim::EventKind::kTimerExpiry,
               [&fired, &s, i] { fired.push_back({s.Now().seconds(), i}); });
  }
  s.RunUntil(sim::SimTime::FromSeconds(2.0));
  if (fired.size() != static_cast<std::size_t>(events)) return false;
  for (std::size_t i = 1; i < fired.size(); ++i) {
    const auto& a = fired[i - 1];
    const auto& b = fired[i];
    if (a.t > b.t || (a.t == b.t && a.order >= b.order)) return false;
  }
  return true;
}

std::string TraceBytes(const RunResult& r) {
  std::string s;
  for (const auto& t : r.trace) s += FormatTraceRecord(t) + '\n';
  return s;
}

Verdict Properties() {
  Verdict v;
  v.Require(EventOrderHolds(42, 100000), "total event order over 1e5 random schedules");

  bool conserved = true, deterministic = true, bounded = true;
  std::size_t sls_acks = 0;
  for (const auto& name : PresetNames()) {
    RunOptions ro;
    ro.collect_acks = true;
    const auto first = RunExperiment(Preset(name), ro);
    const auto second = RunExperiment(Preset(name), ro);
    for (std::size_t i = 0; i < first.size(); ++i) {
      conserved = conserved && first[i].conservation_ok && second[i].conservation_ok;
      deterministic = deterministic && TraceBytes(first[i]) == TraceBytes(second[i]);
      for (std::size_t k = 0; k < first[i].flows.size(); ++k) {
        const auto& fl = first[i].flows[k];
        if (first[i].config.flows[k].controller != "ssthreshless") continue;
        const auto loss = FirstLossTime(fl);
        for (const auto& a : fl.acks) {
          if (loss && a.at.seconds() >= *loss) break;
          ++sls_acks;
          const double inc = a.diag.increment;
          if (inc < 1.0 / a.cwnd_before - 1e-12 || inc > 1.0 + 1e-12) bounded = false;
        }
      }
    }
  }
  v.Require(conserved, "packet conservation on every preset");
  v.Require(deterministic, "byte-identical traces on repeat runs of every preset");
  v.Require(bounded && sls_acks > 0,
            "SLS increments in [1/cwnd, 1] over " + Fmt("%g", static_cast<double>(sls_acks)) +
                " pre-loss acks");

  // beta = infinity never sees a congestive event, so it is slow start.
  ScenarioConfig cfg = DefaultScenario();
  cfg.horizon_s = 3.0;
  cfg.flows[0].params.beta = std::numeric_limits<double>::infinity();
  RunOptions ro;
  ro.collect_acks = true;
  const RunResult inf = RunScenario(cfg, ro);
  cfg.flows[0] = Variant("ss_l", cfg);
  cfg.flows[0].params.ssthresh = cc::kUnboundedSsthresh;
  const RunResult ss = RunScenario(cfg, ro);
  const auto loss = FirstLossTime(inf.flows[0]);
  bool same = FirstLossTime(ss.flows[0]) == loss;
  std::size_t compared = 0;
  const auto& ia = inf.flows[0].acks;
  const auto& sa = ss.flows[0].acks;
  for (std::size_t i = 0; i < ia.size() && i < sa.size(); ++i) {
    if (loss && ia[i].at.seconds() >= *loss) break;
    ++compared;
    same = same && ia[i].diag.increment == 1.0 && sa[i].diag.increment == 1.0 &&
           ia[i].cwnd_after == sa[i].cwnd_after && ia[i].at == sa[i].at;
  }
  v.Require(same && compared > 0, "beta=inf matches slow start on " +
                                      Fmt("%g", static_cast<double>(compared)) + " pre-loss acks");
  return v;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    Verdict (*check)();
  };
  const Criterion criteria[] = {
      {"C1 blind-ssthresh demonstration", BlindSsthresh},
      {"C2 temporal queue buildup", QueueBuildup},
      {"C3 beta insensitivity", BetaInsensitivity},
      {"C4 ramp-up comparison", RampUp},
      {"C5 small-buffer point", SmallBuffer},
      {"C6 long-delay point and delay sweep", LongDelay},
      {"C7 high-bandwidth point", HighBandwidth},
      {"C8 UDP cross traffic", CrossTraffic},
      {"C9 five-flow friendliness", Friendliness},
      {"C10 backlog estimate fidelity", BacklogEstimate},
      {"C11 property suites", Properties},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const Verdict v = c.check();
    std::printf("%s %-38s %s\n", v.pass ? "PASS" : "FAIL", c.name, v.detail.c_str());
    std::fflush(stdout);
    if (!v.pass) ++failed;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(std::size(criteria)) - failed,
              std::size(criteria));
  return failed == 0 ? 0 : 1;
}
