#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>

#include "sls/cc/controller.h"
#include "sls/net/packet.h"
#include "sls/sim/simulator.h"
#include "sls/tcp/rtt_estimator.h"

namespace sls::tcp {

struct TcpConfig {
  double initial_cwnd = 1.0;
  RtoParams rto;
  std::uint32_t pkt_bytes = 1000;
  // Packets the application has to send; negative means unlimited.
  std::int64_t data_limit_pkts = -1;
  int dupack_threshold = 3;
};

struct SenderState {
  // Next sequence number to transmit. Drops back to highest_acked after a
  // timeout (go-back-N).
  std::int64_t next_seq = 0;
  // One past the highest sequence number ever sent.
  std::int64_t max_sent = 0;
  // Cumulative ack point: every seq below it is acknowledged.
  std::int64_t highest_acked = 0;
  int dup_ack_count = 0;
  double cwnd = 1.0;
  double ssthresh = cc::kUnboundedSsthresh;
  cc::Phase phase = cc::Phase::kStartup;
  // Highest sequence outstanding when the last recovery began; -1 before
  // any loss.
  std::int64_t recover_point = -1;
  std::int64_t inflight() const { return next_seq - highest_acked; }
  // -1 before anything is sent.
  std::int64_t highest_seq_sent() const { return max_sent - 1; }
};

enum class SenderEventKind {
  kFastRecoveryEnter,
  kFastRecoveryExit,
  kTimeout,
  kPhaseChange,
};

struct SenderEvent {
  sim::SimTime at;
  SenderEventKind kind;
  double cwnd;
  double ssthresh;
  cc::Phase phase;
};

// One controller invocation, i.e. one newly acked packet outside recovery.
struct AckRecord {
  sim::SimTime at;
  std::int64_t acked_seq;
  double cwnd_before;
  double cwnd_after;
  cc::Phase phase_before;
  bool in_startup;
  cc::AckDiagnostics diag;
  // Bottleneck occupancy echoed by the ack that carried this packet; -1 if
  // unknown.
  std::int32_t echoed_backlog;
  bool rtt_sampled;
};

// Sender half of a TCP connection: window accounting, cumulative-ack
// processing, NewReno fast retransmit / fast recovery and the
// retransmission timer. Window growth is delegated to a controller.
class TcpSender {
 public:
  using SendFn = std::function<void(net::Packet)>;

  TcpSender(sim::Simulator& sim, sim::EntityId id, net::FlowId flow, net::NodeId self,
            net::NodeId peer, TcpConfig config,
            std::unique_ptr<cc::CongestionController> controller, SendFn send);

  void Start();
  void OnAck(const net::Packet& ack);
  std::int64_t TrySend();
  void EnterFastRecovery();
  void OnTimeout();

  const SenderState& state() const { return state_; }
  const RttEstimator& rtt() const { return rtt_; }
  const cc::CongestionController& controller() const { return *controller_; }
  bool timer_armed() const { return timer_armed_; }
  std::uint64_t retransmissions() const { return retransmissions_; }
  std::uint64_t timeouts() const { return timeouts_; }

  void set_event_observer(std::function<void(const SenderEvent&)> fn) {
    on_event_ = std::move(fn);
  }
  void set_ack_observer(std::function<void(const AckRecord&)> fn) { on_ack_ = std::move(fn); }

 private:
  cc::ControllerView View(std::int64_t acked_packets, std::int64_t acked_seq,
                          bool fresh_sample) const;
  bool HasData(std::int64_t seq) const;
  void Transmit(std::int64_t seq);
  void ArmTimer();
  void RestartTimer();
  void StopTimer() { timer_armed_ = false; }
  void UpdatePhase();
  void Emit(SenderEventKind kind);

  sim::Simulator& sim_;
  sim::EntityId id_;
  net::FlowId flow_;
  net::NodeId self_;
  net::NodeId peer_;
  TcpConfig config_;
  std::unique_ptr<cc::CongestionController> controller_;
  SendFn send_;
  SenderState state_;
  RttEstimator rtt_;
  bool started_ = false;
  bool timer_armed_ = false;
  bool seen_partial_ack_ = false;
  std::uint64_t timer_generation_ = 0;
  std::uint64_t next_packet_id_ = 0;
  std::uint64_t retransmissions_ = 0;
  std::uint64_t timeouts_ = 0;
  std::function<void(const SenderEvent&)> on_event_;
  std::function<void(const AckRecord&)> on_ack_;
};

}  // namespace sls::tcp
