#include "sls/exp/runner.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>

#include "sls/net/topology.h"
#include "sls/tcp/receiver.h"
#include "sls/traffic/udp_cbr.h"

namespace sls::exp {

namespace {

constexpr sim::EntityId kSenderIdBase = 100;
constexpr sim::EntityId kUdpId = 300;
constexpr sim::EntityId kHarnessId = 400;

struct Snapshot {
  std::vector<std::int64_t> delivered;
  std::vector<std::int64_t> highest_seq_sent;
  std::uint64_t udp_bytes = 0;
  std::uint64_t drops = 0;
};

class ScenarioRun {
 public:
  ScenarioRun(const ScenarioConfig& cfg, const RunOptions& options)
      : cfg_(cfg), options_(options), sim_(cfg.seed) {
    net::DumbbellParams p;
    p.bottleneck_bw_bps = cfg.bottleneck_bw_bps;
    p.bottleneck_delay_s = cfg.bottleneck_oneway_delay_s;
    p.side_bw_bps = cfg.side_bw_bps;
    p.side_delay_s = cfg.side_delay_s;
    p.buffer_pkts = cfg.buffer_pkts;
    p.pkt_bytes = cfg.pkt_bytes;
    p.host_pairs = cfg.flows.size() + (cfg.cross_traffic ? 1 : 0);
    topo_ = std::make_unique<net::Dumbbell>(sim_, p);
    result_.config = cfg;
    result_.bdp_pkts = topo_->bdp_packets();
    BuildFlows();
    BuildCrossTraffic();
    topo_->bottleneck_forward().set_on_drop([this](const net::Packet& pkt) { OnDrop(pkt); });
  }

  RunResult Run() {
    const auto windows = EffectiveWindows(cfg_);
    snapshots_.assign(windows.size(), {});
    cwnd_sums_.assign(windows.size(), std::vector<double>(senders_.size(), 0.0));
    cwnd_counts_.assign(windows.size(), 0);
    for (std::size_t w = 0; w < windows.size(); ++w) {
      sim_.Schedule(sim::SimTime::FromSeconds(windows[w].start_s), kHarnessId,
                    sim::EventKind::kTimerExpiry,
                    [this, w] { snapshots_[w].first = TakeSnapshot(); });
    }
    if (cfg_.horizon_s > 0.0) ScheduleSample(0);

    const sim::SimTime horizon = sim::SimTime::FromSeconds(cfg_.horizon_s);
    // Window ends are captured after every event at that instant has run.
    std::vector<std::pair<double, std::size_t>> ends;
    for (std::size_t w = 0; w < windows.size(); ++w) ends.emplace_back(windows[w].end_s, w);
    std::sort(ends.begin(), ends.end());
    std::size_t next_end = 0;
    sim_.set_horizon(horizon);
    while (true) {
      auto ev = sim_.PopNext();
      const double t = ev ? ev->fire_at.seconds() : std::numeric_limits<double>::infinity();
      while (next_end < ends.size() && ends[next_end].first < t) {
        snapshots_[ends[next_end].second].second = TakeSnapshot();
        ++next_end;
      }
      if (!ev) break;
      ++processed_;
      if (ev->action) ev->action();
    }
    result_.stats = sim::RunStats{processed_, sim_.Now()};
    CheckConservation();
    Finish(windows);
    return std::move(result_);
  }

 private:
  void BuildFlows() {
    const tcp::RtoParams rto{cfg_.tcp.initial_rto_s, cfg_.tcp.min_rto_s, cfg_.tcp.max_rto_s};
    for (std::size_t i = 0; i < cfg_.flows.size(); ++i) {
      const FlowConfig& f = cfg_.flows[i];
      const auto flow_id = static_cast<net::FlowId>(i);
      net::Node& src = topo_->source(i);
      net::Node& dst = topo_->sink(i);
      tcp::TcpConfig tc;
      tc.initial_cwnd = cfg_.tcp.initial_cwnd;
      tc.rto = rto;
      tc.pkt_bytes = cfg_.pkt_bytes;
      tc.data_limit_pkts = f.data_limit_pkts;
      auto sender = std::make_unique<tcp::TcpSender>(
          sim_, kSenderIdBase + static_cast<sim::EntityId>(i), flow_id, src.id(), dst.id(), tc,
          MakeController(f, cfg_), [&src](net::Packet pkt) { src.Receive(std::move(pkt)); });
      auto receiver = std::make_unique<tcp::TcpReceiver>(
          flow_id, dst.id(), src.id(), cfg_.ack_bytes,
          [&dst](net::Packet pkt) { dst.Receive(std::move(pkt)); });
      tcp::TcpSender* s = sender.get();
      tcp::TcpReceiver* r = receiver.get();
      src.AttachAgent(flow_id, [s](const net::Packet& pkt) { s->OnAck(pkt); });
      dst.AttachAgent(flow_id, [r](const net::Packet& pkt) { r->OnData(pkt); });

      FlowResult fr;
      fr.flow_id = static_cast<int>(i);
      fr.label = f.label.empty() ? f.controller : f.label;
      fr.controller = f.controller;
      result_.flows.push_back(fr);

      s->set_event_observer([this, i](const tcp::SenderEvent& e) { OnSenderEvent(i, e); });
      if (options_.collect_acks) {
        s->set_ack_observer(
            [this, i](const tcp::AckRecord& a) { result_.flows[i].acks.push_back(a); });
      }
      sim_.Schedule(sim::SimTime::FromSeconds(f.start_s),
                    kSenderIdBase + static_cast<sim::EntityId>(i), sim::EventKind::kSourceStart,
                    [s] { s->Start(); });
      senders_.push_back(std::move(sender));
      receivers_.push_back(std::move(receiver));
      started_at_.push_back(f.start_s);
    }
  }

  void BuildCrossTraffic() {
    if (!cfg_.cross_traffic) return;
    const std::size_t pair = cfg_.flows.size();
    net::Node& src = topo_->source(pair);
    net::Node& dst = topo_->sink(pair);
    const auto flow_id = static_cast<net::FlowId>(pair);
    udp_ = std::make_unique<traffic::UdpCbrSource>(
        sim_, kUdpId, flow_id, src.id(), dst.id(), *cfg_.cross_traffic,
        [&src](net::Packet pkt) { src.Receive(std::move(pkt)); });
    udp_sink_ = std::make_unique<traffic::UdpSink>();
    traffic::UdpSink* sink = udp_sink_.get();
    dst.AttachAgent(flow_id, [sink](const net::Packet& pkt) { sink->OnPacket(pkt); });
    udp_->Start();
  }

  void OnDrop(const net::Packet& pkt) {
    if (!options_.collect_drops) return;
    cc::Phase phase = cc::Phase::kStartup;
    if (pkt.kind != net::PacketKind::kUdp &&
        static_cast<std::size_t>(pkt.flow_id) < senders_.size()) {
      phase = senders_[static_cast<std::size_t>(pkt.flow_id)]->state().phase;
    }
    result_.drops.push_back(DropRecord{sim_.Now().seconds(), pkt.flow_id, pkt.kind, phase});
  }

  void OnSenderEvent(std::size_t i, const tcp::SenderEvent& e) {
    result_.flows[i].events.push_back(e);
    result_.trace.push_back(Record(i));
  }

  TraceRecord Record(std::size_t i) const {
    const tcp::TcpSender& s = *senders_[i];
    TraceRecord r;
    r.time_s = sim_.Now().seconds();
    r.flow_id = static_cast<int>(i);
    r.cwnd = s.state().cwnd;
    r.ssthresh = s.state().ssthresh;
    r.phase = s.state().phase;
    r.highest_seq_sent = s.state().highest_seq_sent();
    r.highest_acked = s.state().highest_acked;
    r.queue_pkts = static_cast<std::int64_t>(topo_->bottleneck_forward().queue().occupancy());
    if (s.controller().Name() == "ssthreshless" && s.state().phase == cc::Phase::kStartup) {
      r.n_est = s.controller().LastDiagnostics().n_est;
    }
    return r;
  }

  void ScheduleSample(std::uint64_t k) {
    const double t = static_cast<double>(k) * cfg_.trace_interval_s;
    if (t > cfg_.horizon_s) return;
    sim_.Schedule(sim::SimTime::FromSeconds(t), kHarnessId, sim::EventKind::kTimerExpiry,
                  [this, k, t] {
                    const auto windows = EffectiveWindows(cfg_);
                    for (std::size_t i = 0; i < senders_.size(); ++i) {
                      if (t < started_at_[i]) continue;
                      result_.trace.push_back(Record(i));
                    }
                    for (std::size_t w = 0; w < windows.size(); ++w) {
                      if (t < windows[w].start_s || t >= windows[w].end_s) continue;
                      for (std::size_t i = 0; i < senders_.size(); ++i) {
                        cwnd_sums_[w][i] += senders_[i]->state().cwnd;
                      }
                      ++cwnd_counts_[w];
                    }
                    CheckConservation();
                    ScheduleSample(k + 1);
                  });
  }

  Snapshot TakeSnapshot() const {
    Snapshot s;
    for (std::size_t i = 0; i < senders_.size(); ++i) {
      s.delivered.push_back(receivers_[i]->delivered_packets());
      s.highest_seq_sent.push_back(senders_[i]->state().highest_seq_sent());
    }
    s.udp_bytes = udp_sink_ ? udp_sink_->bytes() : 0;
    s.drops = topo_->bottleneck_forward().queue().drops();
    return s;
  }

  void CheckConservation() {
    for (const auto& port : topo_->ports()) {
      if (!port->queue().Conserved()) result_.conservation_ok = false;
    }
  }

  void Finish(const std::vector<MeasurementWindow>& windows) {
    for (std::size_t i = 0; i < senders_.size(); ++i) {
      FlowResult& fr = result_.flows[i];
      fr.highest_seq_sent = senders_[i]->state().highest_seq_sent();
      fr.delivered_pkts = receivers_[i]->delivered_packets();
      fr.timeouts = senders_[i]->timeouts();
      fr.retransmissions = senders_[i]->retransmissions();
    }
    result_.bottleneck_drops = topo_->bottleneck_forward().queue().drops();
    result_.udp_sent = udp_ ? udp_->packets_sent() : 0;
    result_.udp_received = udp_sink_ ? udp_sink_->packets() : 0;

    const double bits_per_pkt = 8.0 * cfg_.pkt_bytes;
    for (std::size_t w = 0; w < windows.size(); ++w) {
      const MeasurementWindow& win = windows[w];
      const double len = win.end_s - win.start_s;
      const Snapshot& a = snapshots_[w].first;
      const Snapshot& b = snapshots_[w].second;
      WindowSummary ws;
      ws.window = win;
      double total_bits = 0.0;
      for (std::size_t i = 0; i < senders_.size(); ++i) {
        const double bits =
            static_cast<double>(Delta(b.delivered, a.delivered, i)) * bits_per_pkt;
        total_bits += bits;
        ws.flow_throughput_bps.push_back(len > 0.0 ? bits / len : 0.0);
        ws.flow_mean_cwnd.push_back(cwnd_counts_[w] > 0 ? cwnd_sums_[w][i] / cwnd_counts_[w]
                                                        : 0.0);
      }
      ws.utilization = ComputeLinkUtilization(total_bits, cfg_.bottleneck_bw_bps, len);
      ws.jain = JainFairness(ws.flow_throughput_bps);
      ws.udp_throughput_bps =
          len > 0.0 ? 8.0 * static_cast<double>(b.udp_bytes - a.udp_bytes) / len : 0.0;
      ws.drops = b.drops - a.drops;
      for (std::size_t i = 0; i < senders_.size(); ++i) {
        MetricsReport m;
        m.scenario_id = cfg_.id;
        m.controller = result_.flows[i].label;
        m.window_start_s = win.start_s;
        m.window_end_s = win.end_s;
        m.utilization = ComputeLinkUtilization(ws.flow_throughput_bps[i] * len,
                                               cfg_.bottleneck_bw_bps, len);
        m.highest_seq_sent = i < b.highest_seq_sent.size() ? b.highest_seq_sent[i] : -1;
        m.throughput_bps = ws.flow_throughput_bps[i];
        m.jain = ws.jain;
        m.drops = ws.drops;
        result_.metrics.push_back(m);
      }
      result_.windows.push_back(std::move(ws));
    }
  }

  static std::int64_t Delta(const std::vector<std::int64_t>& b,
                            const std::vector<std::int64_t>& a, std::size_t i) {
    const std::int64_t hi = i < b.size() ? b[i] : 0;
    const std::int64_t lo = i < a.size() ? a[i] : 0;
    return hi - lo;
  }

  const ScenarioConfig& cfg_;
  RunOptions options_;
  sim::Simulator sim_;
  std::unique_ptr<net::Dumbbell> topo_;
  std::vector<std::unique_ptr<tcp::TcpSender>> senders_;
  std::vector<std::unique_ptr<tcp::TcpReceiver>> receivers_;
  std::vector<double> started_at_;
  std::unique_ptr<traffic::UdpCbrSource> udp_;
  std::unique_ptr<traffic::UdpSink> udp_sink_;
  std::vector<std::pair<Snapshot, Snapshot>> snapshots_;
  std::vector<std::vector<double>> cwnd_sums_;
  std::vector<std::uint64_t> cwnd_counts_;
  std::uint64_t processed_ = 0;
  RunResult result_;
};

}  // namespace

RunResult RunScenario(const ScenarioConfig& cfg, const RunOptions& options) {
  Validate(cfg);
  ScenarioRun run(cfg, options);
  return run.Run();
}

std::vector<RunResult> RunExperiment(const Experiment& experiment, const RunOptions& options) {
  std::vector<RunResult> results;
  results.reserve(experiment.runs.size());
  for (const auto& cfg : experiment.runs) results.push_back(RunScenario(cfg, options));

  const RunResult* reference = nullptr;
  for (const auto& r : results) {
    if (r.flows.size() == 1 && r.config.flows[0].controller == "ssthreshless") {
      reference = &r;
      break;
    }
  }
  if (reference == nullptr) return results;
  for (auto& r : results) {
    if (r.flows.size() != 1) continue;
    for (std::size_t w = 0; w < r.metrics.size() && w < reference->metrics.size(); ++w) {
      const double mine = r.metrics[w].throughput_bps;
      const double ref = reference->metrics[w].throughput_bps;
      r.metrics[w].throughput_ratio =
          mine > 0.0 ? ref / mine : std::numeric_limits<double>::infinity();
    }
  }
  return results;
}

}  // namespace sls::exp
