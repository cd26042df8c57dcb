#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sls/cc/controller.h"
#include "sls/exp/metrics.h"
#include "sls/exp/scenario.h"
#include "sls/net/packet.h"
#include "sls/sim/simulator.h"
#include "sls/tcp/sender.h"

namespace sls::exp {

struct TraceRecord {
  double time_s = 0.0;
  int flow_id = 0;
  double cwnd = 0.0;
  double ssthresh = 0.0;
  cc::Phase phase = cc::Phase::kStartup;
  std::int64_t highest_seq_sent = -1;
  std::int64_t highest_acked = 0;
  std::int64_t queue_pkts = 0;
  std::optional<double> n_est;
};

struct DropRecord {
  double time_s;
  int flow_id;
  net::PacketKind kind;
  // Phase of the owning TCP flow at the drop; startup for UDP.
  cc::Phase flow_phase;
};

struct FlowResult {
  int flow_id = 0;
  std::string label;
  std::string controller;
  std::int64_t highest_seq_sent = -1;
  std::int64_t delivered_pkts = 0;
  std::uint64_t timeouts = 0;
  std::uint64_t retransmissions = 0;
  std::vector<tcp::SenderEvent> events;
  std::vector<tcp::AckRecord> acks;  // only with RunOptions::collect_acks
};

struct WindowSummary {
  MeasurementWindow window;
  // All TCP flows together.
  double utilization = 0.0;
  double jain = 1.0;
  std::vector<double> flow_throughput_bps;
  std::vector<double> flow_mean_cwnd;
  double udp_throughput_bps = 0.0;
  std::uint64_t drops = 0;
};

struct RunResult {
  ScenarioConfig config;
  sim::RunStats stats;
  std::vector<TraceRecord> trace;
  std::vector<FlowResult> flows;
  std::vector<WindowSummary> windows;
  std::vector<MetricsReport> metrics;
  std::vector<DropRecord> drops;
  std::uint64_t bottleneck_drops = 0;
  std::uint64_t udp_sent = 0;
  std::uint64_t udp_received = 0;
  // Every queue satisfied arrivals == departures + drops + occupancy at
  // every trace sample and at the end.
  bool conservation_ok = true;
  double bdp_pkts = 0.0;
};

struct RunOptions {
  bool collect_acks = false;
  bool collect_drops = true;
};

// Deterministic run of one scenario to its horizon. Throws ConfigError for
// an invalid configuration.
RunResult RunScenario(const ScenarioConfig& cfg, const RunOptions& options = {});

// Runs every scenario of a preset in order. For single-flow runs, each
// metrics row's throughput_ratio is the SSthreshless run's throughput over
// the row's throughput in the same window, when the preset has such a run.
std::vector<RunResult> RunExperiment(const Experiment& experiment, const RunOptions& options = {});

}  // namespace sls::exp
