#include "sls/tcp/sender.h"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

namespace sls::tcp {

TcpSender::TcpSender(sim::Simulator& sim, sim::EntityId id, net::FlowId flow, net::NodeId self,
                     net::NodeId peer, TcpConfig config,
                     std::unique_ptr<cc::CongestionController> controller, SendFn send)
    : sim_(sim),
      id_(id),
      flow_(flow),
      self_(self),
      peer_(peer),
      config_(config),
      controller_(std::move(controller)),
      send_(std::move(send)),
      rtt_(config.rto) {
  state_.cwnd = std::max(config_.initial_cwnd, 1.0);
  state_.ssthresh = controller_->InitialSsthresh();
  state_.phase = controller_->InStartup(View(0, -1, false)) ? cc::Phase::kStartup
                                                            : cc::Phase::kCongestionAvoidance;
}

void TcpSender::Start() {
  started_ = true;
  TrySend();
}

cc::ControllerView TcpSender::View(std::int64_t acked_packets, std::int64_t acked_seq,
                                   bool fresh_sample) const {
  cc::ControllerView v;
  v.cwnd = state_.cwnd;
  v.ssthresh = state_.ssthresh;
  v.base_rtt_s = rtt_.base_rtt_s();
  v.last_rtt_s = rtt_.last_rtt_s();
  v.phase = state_.phase;
  v.acked_packets = acked_packets;
  v.acked_seq = acked_seq;
  v.snd_una = state_.highest_acked;
  v.snd_nxt = state_.next_seq;
  v.fresh_rtt_sample = fresh_sample;
  v.now = sim_.Now();
  return v;
}

bool TcpSender::HasData(std::int64_t seq) const {
  return config_.data_limit_pkts < 0 || seq < config_.data_limit_pkts;
}

void TcpSender::Transmit(std::int64_t seq) {
  const bool retransmit = seq < state_.max_sent;
  net::Packet p;
  p.packet_id = (static_cast<std::uint64_t>(flow_ + 1) << 40) | next_packet_id_++;
  p.flow_id = flow_;
  p.kind = net::PacketKind::kData;
  p.size_bytes = config_.pkt_bytes;
  p.seq = seq;
  p.sent_at = sim_.Now();
  p.is_retransmit = retransmit;
  p.src = self_;
  p.dst = peer_;
  rtt_.OnSend(seq, sim_.Now(), retransmit);
  if (retransmit) ++retransmissions_;
  state_.max_sent = std::max(state_.max_sent, seq + 1);
  send_(std::move(p));
  ArmTimer();
}

std::int64_t TcpSender::TrySend() {
  if (!started_) return 0;
  const auto window = static_cast<std::int64_t>(std::floor(state_.cwnd));
  std::int64_t released = 0;
  while (state_.inflight() < window && HasData(state_.next_seq)) {
    Transmit(state_.next_seq);
    ++state_.next_seq;
    ++released;
  }
  return released;
}

void TcpSender::ArmTimer() {
  if (timer_armed_) return;
  RestartTimer();
}

void TcpSender::RestartTimer() {
  timer_armed_ = true;
  const std::uint64_t generation = ++timer_generation_;
  sim_.ScheduleIn(rtt_.rto_s(), id_, sim::EventKind::kTimerExpiry, [this, generation] {
    if (timer_armed_ && generation == timer_generation_) OnTimeout();
  });
}

void TcpSender::OnAck(const net::Packet& ack) {
  if (ack.seq > state_.max_sent) {
    throw sim::SimulationError("flow " + std::to_string(flow_) + ": ack " +
                               std::to_string(ack.seq) + " for data never sent (max " +
                               std::to_string(state_.max_sent) + ")");
  }

  if (ack.seq > state_.highest_acked) {
    const std::int64_t newly = ack.seq - state_.highest_acked;
    const std::int64_t last_acked = ack.seq - 1;
    // Sample only when this ack was generated by the packet it newly covers;
    // a hole fill would otherwise time an old original transmission.
    std::optional<double> sample;
    if (ack.echo_seq == last_acked && !ack.echo_retransmit) {
      sample = rtt_.Sample(last_acked, sim_.Now());
    }
    const std::int64_t prev_una = state_.highest_acked;
    state_.highest_acked = ack.seq;
    state_.next_seq = std::max(state_.next_seq, state_.highest_acked);
    rtt_.Forget(state_.highest_acked);

    if (state_.phase == cc::Phase::kFastRecovery) {
      if (ack.seq > state_.recover_point) {
        state_.cwnd = std::max(state_.ssthresh, 1.0);
        state_.dup_ack_count = 0;
        UpdatePhase();
        Emit(SenderEventKind::kFastRecoveryExit);
      } else {
        // Partial ack: repair the next hole, deflate by what was acked and
        // stay in recovery. Only the first partial ack restarts the timer, so
        // a window with many holes falls back to a timeout.
        Transmit(state_.highest_acked);
        state_.cwnd = std::max(state_.cwnd - static_cast<double>(newly) + 1.0, 1.0);
        if (!seen_partial_ack_) RestartTimer();
        seen_partial_ack_ = true;
      }
    } else {
      state_.dup_ack_count = 0;
      for (std::int64_t seq = prev_una; seq < ack.seq; ++seq) {
        const cc::ControllerView view = View(newly, seq, sample.has_value());
        const cc::WindowUpdate u = controller_->OnPacketAcked(view);
        const double before = state_.cwnd;
        state_.cwnd = std::max(u.cwnd, 1.0);
        state_.ssthresh = std::max(u.ssthresh, 1.0);
        if (on_ack_) {
          on_ack_(AckRecord{sim_.Now(), seq, before, state_.cwnd, state_.phase,
                            controller_->InStartup(view), controller_->LastDiagnostics(),
                            ack.bottleneck_backlog, sample.has_value()});
        }
      }
      UpdatePhase();
    }

    if (state_.highest_acked >= state_.max_sent) {
      StopTimer();
    } else if (state_.phase != cc::Phase::kFastRecovery) {
      RestartTimer();
    }
    TrySend();
    return;
  }

  if (ack.seq == state_.highest_acked && state_.highest_acked < state_.max_sent) {
    ++state_.dup_ack_count;
    if (state_.phase == cc::Phase::kFastRecovery) {
      state_.cwnd += 1.0;
      TrySend();
    } else if (state_.dup_ack_count == config_.dupack_threshold) {
      // No second recovery for losses from a window already being repaired.
      if (state_.highest_acked > state_.recover_point) EnterFastRecovery();
    }
  }
}

void TcpSender::EnterFastRecovery() {
  if (state_.phase == cc::Phase::kFastRecovery) return;
  const cc::ControllerView view = View(0, -1, false);
  state_.ssthresh = std::max(controller_->OnFastRecoveryEntry(view), 2.0);
  state_.cwnd = state_.ssthresh + 3.0;
  state_.recover_point = state_.max_sent - 1;
  state_.phase = cc::Phase::kFastRecovery;
  seen_partial_ack_ = false;
  Emit(SenderEventKind::kFastRecoveryEnter);
  Transmit(state_.highest_acked);
  RestartTimer();
  TrySend();
}

void TcpSender::OnTimeout() {
  timer_armed_ = false;
  if (state_.highest_acked >= state_.max_sent) return;
  ++timeouts_;
  const std::int64_t inflight = state_.inflight();
  state_.ssthresh = std::max(static_cast<double>(inflight) / 2.0, 2.0);
  state_.cwnd = 1.0;
  state_.dup_ack_count = 0;
  state_.recover_point = state_.max_sent - 1;
  state_.next_seq = state_.highest_acked;
  state_.phase = cc::Phase::kStartup;
  controller_->OnTimeout(View(0, -1, false));
  UpdatePhase();
  rtt_.Backoff();
  Emit(SenderEventKind::kTimeout);
  TrySend();
  if (!timer_armed_) RestartTimer();
}

void TcpSender::UpdatePhase() {
  const cc::Phase next = controller_->InStartup(View(0, -1, false))
                             ? cc::Phase::kStartup
                             : cc::Phase::kCongestionAvoidance;
  if (next != state_.phase) {
    state_.phase = next;
    Emit(SenderEventKind::kPhaseChange);
  }
}

void TcpSender::Emit(SenderEventKind kind) {
  if (on_event_) {
    on_event_(SenderEvent{sim_.Now(), kind, state_.cwnd, state_.ssthresh, state_.phase});
  }
}

}  // namespace sls::tcp
