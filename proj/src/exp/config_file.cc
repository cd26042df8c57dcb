#include "sls/exp/config_file.h"

#include <yaml-cpp/yaml.h>

#include <fstream>
#include <initializer_list>
#include <sstream>

#include "sls/config_error.h"

namespace sls::exp {

namespace {

void RejectUnknown(const YAML::Node& node, const std::string& path,
                   std::initializer_list<const char*> allowed) {
  if (!node.IsMap()) throw ConfigError(path + ": expected a mapping");
  for (const auto& kv : node) {
    const auto key = kv.first.as<std::string>();
    bool ok = false;
    for (const char* a : allowed) ok = ok || key == a;
    if (!ok) throw ConfigError(path + ": unknown key '" + key + "'");
  }
}

template <typename T>
void Read(const YAML::Node& node, const char* key, const std::string& path, T& out) {
  const YAML::Node v = node[key];
  if (!v) return;
  try {
    out = v.as<T>();
  } catch (const YAML::Exception&) {
    throw ConfigError(path + "." + key + ": wrong type");
  }
}

template <typename T>
void ReadOptional(const YAML::Node& node, const char* key, const std::string& path,
                  std::optional<T>& out) {
  if (!node[key]) return;
  T tmp{};
  Read(node, key, path, tmp);
  out = tmp;
}

std::size_t ReadCount(const YAML::Node& node, const char* key, const std::string& path,
                      std::size_t fallback) {
  long long v = static_cast<long long>(fallback);
  Read(node, key, path, v);
  if (v < 0) throw ConfigError(path + "." + key + ": must be non-negative");
  return static_cast<std::size_t>(v);
}

FlowConfig ParseFlow(const YAML::Node& node, const std::string& path) {
  RejectUnknown(node, path, {"label", "controller", "start_s", "data_limit_pkts", "params"});
  FlowConfig f;
  Read(node, "label", path, f.label);
  Read(node, "controller", path, f.controller);
  Read(node, "start_s", path, f.start_s);
  Read(node, "data_limit_pkts", path, f.data_limit_pkts);
  if (const YAML::Node p = node["params"]) {
    const std::string pp = path + ".params";
    RejectUnknown(p, pp,
                  {"ssthresh", "max_ssthresh", "beta", "preserve_counters_on_timeout", "rtt_tick_s",
                   "gamma", "vegas_alpha", "vegas_beta"});
    ReadOptional(p, "ssthresh", pp, f.params.ssthresh);
    Read(p, "max_ssthresh", pp, f.params.max_ssthresh);
    Read(p, "beta", pp, f.params.beta);
    Read(p, "preserve_counters_on_timeout", pp, f.params.preserve_counters_on_timeout);
    Read(p, "rtt_tick_s", pp, f.params.rtt_tick_s);
    Read(p, "gamma", pp, f.params.gamma);
    Read(p, "vegas_alpha", pp, f.params.vegas_alpha);
    Read(p, "vegas_beta", pp, f.params.vegas_beta);
  }
  return f;
}

}  // namespace

ScenarioConfig ParseScenarioYaml(const std::string& text) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::Exception& e) {
    throw ConfigError(std::string("YAML parse error: ") + e.what());
  }
  RejectUnknown(root, "scenario",
                {"id", "seed", "horizon_s", "topology", "tcp", "flows", "cross_traffic",
                 "measurement"});
  ScenarioConfig cfg = DefaultScenario();
  cfg.flows.clear();
  Read(root, "id", "scenario", cfg.id);
  Read(root, "seed", "scenario", cfg.seed);
  Read(root, "horizon_s", "scenario", cfg.horizon_s);

  if (const YAML::Node t = root["topology"]) {
    RejectUnknown(t, "topology",
                  {"bottleneck_bw_bps", "bottleneck_oneway_delay_s", "side_bw_bps",
                   "side_delay_s", "buffer_pkts", "pkt_bytes", "ack_bytes"});
    Read(t, "bottleneck_bw_bps", "topology", cfg.bottleneck_bw_bps);
    Read(t, "bottleneck_oneway_delay_s", "topology", cfg.bottleneck_oneway_delay_s);
    Read(t, "side_bw_bps", "topology", cfg.side_bw_bps);
    Read(t, "side_delay_s", "topology", cfg.side_delay_s);
    cfg.buffer_pkts = ReadCount(t, "buffer_pkts", "topology", cfg.buffer_pkts);
    Read(t, "pkt_bytes", "topology", cfg.pkt_bytes);
    Read(t, "ack_bytes", "topology", cfg.ack_bytes);
  }
  if (const YAML::Node t = root["tcp"]) {
    RejectUnknown(t, "tcp", {"initial_cwnd", "min_rto_s", "initial_rto_s", "max_rto_s"});
    Read(t, "initial_cwnd", "tcp", cfg.tcp.initial_cwnd);
    Read(t, "min_rto_s", "tcp", cfg.tcp.min_rto_s);
    Read(t, "initial_rto_s", "tcp", cfg.tcp.initial_rto_s);
    Read(t, "max_rto_s", "tcp", cfg.tcp.max_rto_s);
  }
  if (const YAML::Node fl = root["flows"]) {
    if (!fl.IsSequence()) throw ConfigError("flows: expected a list");
    for (std::size_t i = 0; i < fl.size(); ++i) {
      cfg.flows.push_back(ParseFlow(fl[i], "flows[" + std::to_string(i) + "]"));
    }
  }
  if (const YAML::Node c = root["cross_traffic"]) {
    RejectUnknown(c, "cross_traffic", {"rate_bps", "pkt_bytes", "start_s", "stop_s"});
    traffic::UdpCbrParams u;
    Read(c, "rate_bps", "cross_traffic", u.rate_bps);
    Read(c, "pkt_bytes", "cross_traffic", u.pkt_bytes);
    Read(c, "start_s", "cross_traffic", u.start_s);
    Read(c, "stop_s", "cross_traffic", u.stop_s);
    cfg.cross_traffic = u;
  }
  if (const YAML::Node m = root["measurement"]) {
    RejectUnknown(m, "measurement", {"windows", "trace_interval_s"});
    Read(m, "trace_interval_s", "measurement", cfg.trace_interval_s);
    if (const YAML::Node w = m["windows"]) {
      if (!w.IsSequence()) throw ConfigError("measurement.windows: expected a list");
      for (std::size_t i = 0; i < w.size(); ++i) {
        const std::string wp = "measurement.windows[" + std::to_string(i) + "]";
        if (!w[i].IsSequence() || w[i].size() != 2) {
          throw ConfigError(wp + ": expected [start_s, end_s]");
        }
        MeasurementWindow mw;
        try {
          mw.start_s = w[i][0].as<double>();
          mw.end_s = w[i][1].as<double>();
        } catch (const YAML::Exception&) {
          throw ConfigError(wp + ": wrong type");
        }
        cfg.windows.push_back(mw);
      }
    }
  }
  Validate(cfg);
  return cfg;
}

ScenarioConfig LoadScenarioFile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read scenario file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ParseScenarioYaml(ss.str());
}

std::string DumpScenarioYaml(const ScenarioConfig& cfg) {
  YAML::Emitter out;
  out.SetDoublePrecision(17);
  out << YAML::BeginMap;
  out << YAML::Key << "id" << YAML::Value << cfg.id;
  out << YAML::Key << "seed" << YAML::Value << cfg.seed;
  out << YAML::Key << "horizon_s" << YAML::Value << cfg.horizon_s;
  out << YAML::Key << "topology" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "bottleneck_bw_bps" << YAML::Value << cfg.bottleneck_bw_bps;
  out << YAML::Key << "bottleneck_oneway_delay_s" << YAML::Value << cfg.bottleneck_oneway_delay_s;
  out << YAML::Key << "side_bw_bps" << YAML::Value << cfg.side_bw_bps;
  out << YAML::Key << "side_delay_s" << YAML::Value << cfg.side_delay_s;
  out << YAML::Key << "buffer_pkts" << YAML::Value << cfg.buffer_pkts;
  out << YAML::Key << "pkt_bytes" << YAML::Value << cfg.pkt_bytes;
  out << YAML::Key << "ack_bytes" << YAML::Value << cfg.ack_bytes;
  out << YAML::EndMap;
  out << YAML::Key << "tcp" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "initial_cwnd" << YAML::Value << cfg.tcp.initial_cwnd;
  out << YAML::Key << "min_rto_s" << YAML::Value << cfg.tcp.min_rto_s;
  out << YAML::Key << "initial_rto_s" << YAML::Value << cfg.tcp.initial_rto_s;
  out << YAML::Key << "max_rto_s" << YAML::Value << cfg.tcp.max_rto_s;
  out << YAML::EndMap;
  out << YAML::Key << "flows" << YAML::Value << YAML::BeginSeq;
  for (const auto& f : cfg.flows) {
    out << YAML::BeginMap;
    out << YAML::Key << "label" << YAML::Value << f.label;
    out << YAML::Key << "controller" << YAML::Value << f.controller;
    out << YAML::Key << "start_s" << YAML::Value << f.start_s;
    out << YAML::Key << "data_limit_pkts" << YAML::Value << f.data_limit_pkts;
    out << YAML::Key << "params" << YAML::Value << YAML::BeginMap;
    if (f.params.ssthresh) out << YAML::Key << "ssthresh" << YAML::Value << *f.params.ssthresh;
    out << YAML::Key << "max_ssthresh" << YAML::Value << f.params.max_ssthresh;
    out << YAML::Key << "beta" << YAML::Value << f.params.beta;
    out << YAML::Key << "preserve_counters_on_timeout" << YAML::Value
        << f.params.preserve_counters_on_timeout;
    out << YAML::Key << "rtt_tick_s" << YAML::Value << f.params.rtt_tick_s;
    out << YAML::Key << "gamma" << YAML::Value << f.params.gamma;
    out << YAML::Key << "vegas_alpha" << YAML::Value << f.params.vegas_alpha;
    out << YAML::Key << "vegas_beta" << YAML::Value << f.params.vegas_beta;
    out << YAML::EndMap << YAML::EndMap;
  }
  out << YAML::EndSeq;
  if (cfg.cross_traffic) {
    const auto& u = *cfg.cross_traffic;
    out << YAML::Key << "cross_traffic" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "rate_bps" << YAML::Value << u.rate_bps;
    out << YAML::Key << "pkt_bytes" << YAML::Value << u.pkt_bytes;
    out << YAML::Key << "start_s" << YAML::Value << u.start_s;
    out << YAML::Key << "stop_s" << YAML::Value << u.stop_s;
    out << YAML::EndMap;
  }
  out << YAML::Key << "measurement" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "trace_interval_s" << YAML::Value << cfg.trace_interval_s;
  out << YAML::Key << "windows" << YAML::Value << YAML::BeginSeq;
  for (const auto& w : cfg.windows) {
    out << YAML::Flow << YAML::BeginSeq << w.start_s << w.end_s << YAML::EndSeq;
  }
  out << YAML::EndSeq << YAML::EndMap;
  out << YAML::EndMap;
  return std::string(out.c_str()) + "\n";
}

}  // namespace sls::exp
