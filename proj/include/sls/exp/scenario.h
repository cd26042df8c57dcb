#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sls/cc/controller.h"
#include "sls/traffic/udp_cbr.h"

namespace sls::exp {

struct ControllerParams {
  // Slow start / LSS / Hoe initial threshold. Unset means unbounded for
  // slowstart and lss, and "until estimated" for hoe.
  std::optional<double> ssthresh;
  double max_ssthresh = 100.0;
  double beta = 3.0;
  bool preserve_counters_on_timeout = false;
  // Clock granularity of the RTT samples behind the backlog estimate
  // (ssthreshless only). 0 reads the exact sample.
  double rtt_tick_s = 0.01;
  double gamma = 1.0;
  double vegas_alpha = 1.0;
  double vegas_beta = 3.0;
};

struct FlowConfig {
  std::string label;
  // One of: slowstart, lss, vegas, hoe, ssthreshless.
  std::string controller = "ssthreshless";
  ControllerParams params;
  double start_s = 0.0;
  std::int64_t data_limit_pkts = -1;
};

struct TcpOptions {
  double initial_cwnd = 1.0;
  double min_rto_s = 0.2;
  double initial_rto_s = 1.0;
  double max_rto_s = 60.0;
};

struct MeasurementWindow {
  double start_s = 0.0;
  double end_s = 0.0;
  friend bool operator==(const MeasurementWindow&, const MeasurementWindow&) = default;
};

struct ScenarioConfig {
  std::string id = "custom";
  double bottleneck_bw_bps = 40e6;
  double bottleneck_oneway_delay_s = 0.050;
  double side_bw_bps = 500e6;
  double side_delay_s = 0.0001;
  std::size_t buffer_pkts = 250;
  std::uint32_t pkt_bytes = 1000;
  std::uint32_t ack_bytes = 40;
  double horizon_s = 10.0;
  std::vector<FlowConfig> flows;
  std::optional<traffic::UdpCbrParams> cross_traffic;
  std::uint64_t seed = 1;
  // Empty means a single window covering [0, horizon].
  std::vector<MeasurementWindow> windows;
  double trace_interval_s = 0.01;
  TcpOptions tcp;
};

// Throws ConfigError naming the offending field.
void Validate(const ScenarioConfig& cfg);

std::vector<MeasurementWindow> EffectiveWindows(const ScenarioConfig& cfg);

double BdpPackets(const ScenarioConfig& cfg);

std::unique_ptr<cc::CongestionController> MakeController(const FlowConfig& flow,
                                                         const ScenarioConfig& cfg);

bool IsKnownController(const std::string& name);

// Named startup variants compared throughout the experiments.
//   sls   SSthreshless Start, beta 3
//   hc    Hoe's change
//   lss   limited slow start, max_ssthresh 100
//   ss_s  slow start, ssthresh 32
//   ss_a  slow start, ssthresh = BDP of the scenario
//   ss_l  slow start, ssthresh 5000
//   vegas TCP Vegas
FlowConfig Variant(const std::string& name, const ScenarioConfig& cfg);
const std::vector<std::string>& VariantNames();
bool IsKnownVariant(const std::string& name);

// The default dumbbell: 40 Mbps / 50 ms bottleneck, 500 Mbps / 0.1 ms
// side links, 250 packet buffer, 1000 B data, 40 B acks.
ScenarioConfig DefaultScenario();

// A preset is a group of runs sharing one setup, one per compared variant.
struct Experiment {
  std::string name;
  std::string description;
  std::vector<ScenarioConfig> runs;
};

const std::vector<std::string>& PresetNames();
// Throws ConfigError for an unknown name.
Experiment Preset(const std::string& name);

}  // namespace sls::exp
