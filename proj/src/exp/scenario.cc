#include "sls/exp/scenario.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sls/cc/controllers.h"
#include "sls/config_error.h"
#include "sls/net/topology.h"

namespace sls::exp {

namespace {

void RequirePositive(double v, const std::string& field) {
  if (!(v > 0.0) || !std::isfinite(v)) throw ConfigError(field + " must be positive");
}

ScenarioConfig SingleFlow(ScenarioConfig base, const std::string& variant,
                          const std::string& id_prefix) {
  base.flows = {Variant(variant, base)};
  base.id = id_prefix + "/" + variant;
  return base;
}

std::size_t HalfBdp(const ScenarioConfig& cfg) {
  return static_cast<std::size_t>(std::lround(BdpPackets(cfg) / 2.0));
}

}  // namespace

void Validate(const ScenarioConfig& cfg) {
  net::DumbbellParams p;
  p.bottleneck_bw_bps = cfg.bottleneck_bw_bps;
  p.bottleneck_delay_s = cfg.bottleneck_oneway_delay_s;
  p.side_bw_bps = cfg.side_bw_bps;
  p.side_delay_s = cfg.side_delay_s;
  p.buffer_pkts = cfg.buffer_pkts;
  p.pkt_bytes = cfg.pkt_bytes;
  p.host_pairs = std::max<std::size_t>(cfg.flows.size(), 1);
  net::Validate(p);
  if (cfg.flows.empty()) throw ConfigError("flows: at least one flow is required");
  if (cfg.ack_bytes == 0) throw ConfigError("ack_bytes must be positive");
  if (!(cfg.horizon_s >= 0.0) || !std::isfinite(cfg.horizon_s)) {
    throw ConfigError("horizon_s must be finite and nonnegative");
  }
  RequirePositive(cfg.trace_interval_s, "trace_interval_s");
  RequirePositive(cfg.tcp.initial_cwnd, "tcp.initial_cwnd");
  if (cfg.tcp.initial_cwnd < 1.0) throw ConfigError("tcp.initial_cwnd must be at least 1");
  RequirePositive(cfg.tcp.min_rto_s, "tcp.min_rto_s");
  RequirePositive(cfg.tcp.initial_rto_s, "tcp.initial_rto_s");
  RequirePositive(cfg.tcp.max_rto_s, "tcp.max_rto_s");
  if (cfg.tcp.max_rto_s < cfg.tcp.min_rto_s) {
    throw ConfigError("tcp.max_rto_s must be at least tcp.min_rto_s");
  }
  for (std::size_t i = 0; i < cfg.flows.size(); ++i) {
    const FlowConfig& f = cfg.flows[i];
    const std::string field = "flows[" + std::to_string(i) + "]";
    if (!IsKnownController(f.controller)) {
      throw ConfigError(field + ".controller: unknown controller '" + f.controller + "'");
    }
    if (!(f.start_s >= 0.0) || !std::isfinite(f.start_s)) {
      throw ConfigError(field + ".start_s must be finite and nonnegative");
    }
    if (f.params.ssthresh) RequirePositive(*f.params.ssthresh, field + ".params.ssthresh");
    RequirePositive(f.params.max_ssthresh, field + ".params.max_ssthresh");
    if (!(f.params.beta > 0.0)) throw ConfigError(field + ".params.beta must be positive");
    if (!(f.params.rtt_tick_s >= 0.0) || !std::isfinite(f.params.rtt_tick_s)) {
      throw ConfigError(field + ".params.rtt_tick_s must be finite and >= 0");
    }
    RequirePositive(f.params.gamma, field + ".params.gamma");
    if (!(f.params.vegas_alpha >= 0.0) || f.params.vegas_beta < f.params.vegas_alpha) {
      throw ConfigError(field + ".params: need 0 <= vegas_alpha <= vegas_beta");
    }
  }
  if (cfg.cross_traffic) traffic::Validate(*cfg.cross_traffic);
  for (std::size_t i = 0; i < cfg.windows.size(); ++i) {
    const MeasurementWindow& w = cfg.windows[i];
    const std::string field = "windows[" + std::to_string(i) + "]";
    if (!(w.start_s >= 0.0) || !(w.end_s >= w.start_s)) {
      throw ConfigError(field + ": need 0 <= start_s <= end_s");
    }
    if (w.end_s > cfg.horizon_s) throw ConfigError(field + " extends past horizon_s");
  }
}

std::vector<MeasurementWindow> EffectiveWindows(const ScenarioConfig& cfg) {
  if (!cfg.windows.empty()) return cfg.windows;
  return {MeasurementWindow{0.0, cfg.horizon_s}};
}

double BdpPackets(const ScenarioConfig& cfg) {
  return net::BdpPackets(cfg.bottleneck_bw_bps, cfg.bottleneck_oneway_delay_s, cfg.pkt_bytes);
}

bool IsKnownController(const std::string& name) {
  return name == "slowstart" || name == "lss" || name == "vegas" || name == "hoe" ||
         name == "ssthreshless";
}

std::unique_ptr<cc::CongestionController> MakeController(const FlowConfig& flow,
                                                         const ScenarioConfig& cfg) {
  const ControllerParams& p = flow.params;
  const double ssthresh = p.ssthresh.value_or(cc::kUnboundedSsthresh);
  if (flow.controller == "slowstart") return std::make_unique<cc::SlowStart>(ssthresh);
  if (flow.controller == "lss") {
    return std::make_unique<cc::LimitedSlowStart>(ssthresh, p.max_ssthresh);
  }
  if (flow.controller == "hoe") {
    return std::make_unique<cc::HoeChange>(ssthresh, cfg.tcp.initial_cwnd, cfg.pkt_bytes);
  }
  if (flow.controller == "vegas") {
    return std::make_unique<cc::Vegas>(cc::VegasParams{p.gamma, p.vegas_alpha, p.vegas_beta});
  }
  if (flow.controller == "ssthreshless") {
    return std::make_unique<cc::Ssthreshless>(p.beta, p.preserve_counters_on_timeout,
                                               p.rtt_tick_s);
  }
  throw ConfigError("unknown controller '" + flow.controller + "'");
}

const std::vector<std::string>& VariantNames() {
  static const std::vector<std::string> names = {"sls",  "hc",   "lss",  "ss_s",
                                                 "ss_a", "ss_l", "vegas"};
  return names;
}

bool IsKnownVariant(const std::string& name) {
  const auto& n = VariantNames();
  return std::find(n.begin(), n.end(), name) != n.end();
}

FlowConfig Variant(const std::string& name, const ScenarioConfig& cfg) {
  FlowConfig f;
  if (name == "sls") {
    f.label = "SLS";
    f.controller = "ssthreshless";
  } else if (name == "hc") {
    f.label = "HC";
    f.controller = "hoe";
  } else if (name == "lss") {
    f.label = "LSS";
    f.controller = "lss";
  } else if (name == "ss_s") {
    f.label = "SS(S)";
    f.controller = "slowstart";
    f.params.ssthresh = 32.0;
  } else if (name == "ss_a") {
    f.label = "SS(A)";
    f.controller = "slowstart";
    f.params.ssthresh = std::round(BdpPackets(cfg));
  } else if (name == "ss_l") {
    f.label = "SS(L)";
    f.controller = "slowstart";
    f.params.ssthresh = 5000.0;
  } else if (name == "vegas") {
    f.label = "Vegas";
    f.controller = "vegas";
  } else {
    throw ConfigError("unknown variant '" + name + "'");
  }
  return f;
}

ScenarioConfig DefaultScenario() {
  ScenarioConfig cfg;
  cfg.flows = {Variant("sls", cfg)};
  return cfg;
}

const std::vector<std::string>& PresetNames() {
  static const std::vector<std::string> names = {
      "table1", "fig3",   "table2_beta", "table3",        "table4",
      "table5", "table6", "table7_udp",  "fig9_fairness",
  };
  return names;
}

Experiment Preset(const std::string& name) {
  Experiment e;
  e.name = name;
  ScenarioConfig base = DefaultScenario();

  if (name == "table1") {
    e.description = "blind ssthresh: slow start with ssthresh 5000/500/32, first 10 s";
    base.horizon_s = 10.0;
    for (const char* v : {"ss_l", "ss_a", "ss_s"}) e.runs.push_back(SingleFlow(base, v, name));
  } else if (name == "fig3") {
    e.description = "temporal queue buildup: slow start ssthresh 500, buffer BDP/5";
    base.horizon_s = 10.0;
    base.buffer_pkts = 100;
    e.runs.push_back(SingleFlow(base, "ss_a", name));
  } else if (name == "table2_beta") {
    e.description = "SSthreshless beta sensitivity, buffer 2/5 BDP, first 10 s";
    base.horizon_s = 10.0;
    base.buffer_pkts = 200;
    for (double beta : {3.0, 10.0, 20.0}) {
      ScenarioConfig c = SingleFlow(base, "sls", name);
      c.flows[0].params.beta = beta;
      c.flows[0].label = "SLS(beta=" + std::to_string(static_cast<int>(beta)) + ")";
      c.id = name + "/beta" + std::to_string(static_cast<int>(beta));
      e.runs.push_back(c);
    }
  } else if (name == "table3") {
    e.description = "ramp-up comparison, buffer 2/5 BDP, first 10 s";
    base.horizon_s = 10.0;
    base.buffer_pkts = 200;
    for (const char* v : {"sls", "ss_a", "vegas"}) e.runs.push_back(SingleFlow(base, v, name));
  } else if (name == "table4") {
    e.description = "small buffer (BDP/5), 40 Mbps / 50 ms, first 20 s";
    base.horizon_s = 20.0;
    base.buffer_pkts = 100;
    for (const auto& v : VariantNames()) e.runs.push_back(SingleFlow(base, v, name));
  } else if (name == "table5") {
    e.description = "long delay: 100 ms one-way, 40 Mbps, buffer BDP/2, first 20 s";
    base.horizon_s = 20.0;
    base.bottleneck_oneway_delay_s = 0.100;
    base.buffer_pkts = HalfBdp(base);
    for (const char* v : {"sls", "hc", "lss", "ss_s", "ss_l", "vegas"}) {
      e.runs.push_back(SingleFlow(base, v, name));
    }
  } else if (name == "table6") {
    e.description = "high bandwidth: 150 Mbps, 50 ms, buffer BDP/2, first 20 s";
    base.horizon_s = 20.0;
    base.bottleneck_bw_bps = 150e6;
    base.buffer_pkts = HalfBdp(base);
    for (const char* v : {"sls", "hc", "lss", "ss_s", "ss_l", "vegas"}) {
      e.runs.push_back(SingleFlow(base, v, name));
    }
  } else if (name == "table7_udp") {
    e.description = "10 Mbps UDP cross traffic during [1 s, 5 s), first 10 s";
    base.horizon_s = 10.0;
    base.cross_traffic = traffic::UdpCbrParams{10e6, 1000, 1.0, 5.0};
    for (const char* v : {"sls", "ss_s", "vegas"}) e.runs.push_back(SingleFlow(base, v, name));
  } else if (name == "fig9_fairness") {
    e.description = "2x slow start (ssthresh 32) + 3x SSthreshless, flow 5 joins at 30 s";
    base.id = name;
    base.horizon_s = 60.0;
    base.flows.clear();
    for (int i = 0; i < 5; ++i) {
      FlowConfig f = Variant(i < 2 ? "ss_s" : "sls", base);
      f.label = f.label + "#" + std::to_string(i + 1);
      if (i == 4) f.start_s = 30.0;
      base.flows.push_back(f);
    }
    base.windows = {{0.0, 60.0}, {50.0, 60.0}, {25.0, 30.0}, {30.0, 35.0}};
    e.runs.push_back(base);
  } else {
    throw ConfigError("unknown preset '" + name + "'");
  }
  return e;
}

}  // namespace sls::exp
