#include "abrasim/sim.hpp"

#include <algorithm>
#include <cctype>
#include <cstdarg>
#include <cstdio>
#include <stdexcept>

namespace abrasim {

BackoffPolicy policy_for(cc::Variant v) {
  return v == cc::Variant::kAbraNewReno ? BackoffPolicy::kAbra
                                        : BackoffPolicy::kExponential;
}

void validate(const SimConfig& cfg) {
  cc::validate(cfg.cc);
  validate(cfg.route);
  (void)RttEstimator(cfg.est);  // bounds checked in the constructor
  if (cfg.receiver_window < cfg.cc.mss)
    throw std::invalid_argument("receiver_window below one mss");
  if (cfg.transfer_bytes < 1)
    throw std::invalid_argument("transfer_bytes must be positive");
  if (!(cfg.t_end > 0)) throw std::invalid_argument("t_end must be positive");
}

std::string scenario_id(const Scenario& sc) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "%s-%s-seed%llu", sc.label.c_str(),
                cc::variant_name(sc.config.cc.variant),
                static_cast<unsigned long long>(sc.config.seed));
  std::string id(buf);
  for (char& c : id)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '-' && c != '_' && c != '.')
      c = '_';
  return id;
}

Simulation::Simulation(const SimConfig& cfg)
    : cfg_(cfg),
      t_end_us_(to_time_us(cfg.t_end)),
      route_(cfg.route, cfg.seed),
      est_(cfg.est),
      policy_(policy_for(cfg.cc.variant)) {
  validate(cfg_);
  cc_ = cc::initial_state(cfg_.cc);
}

void Simulation::tracef(const char* fmt, ...) {
  if (!cfg_.trace) return;
  char buf[256];
  va_list ap;
  va_start(ap, fmt);
  std::vsnprintf(buf, sizeof buf, fmt, ap);
  va_end(ap);
  trace_ += buf;
  trace_ += '\n';
}

Bytes Simulation::seg_len(SeqNo seq) const {
  return std::min<Bytes>(cfg_.cc.mss, cfg_.transfer_bytes - seq);
}

Bytes Simulation::effective_window() const {
  return std::min(cc_.cwnd + cc_.partial_ack_credit, cfg_.receiver_window);
}

void Simulation::arm_timer() {
  timer_generation_ += 1;
  timer_armed_ = true;
  SimEvent ev;
  ev.time = engine_.now() + to_time_us(est_.rto());
  ev.kind = EventKind::kRtoExpiry;
  ev.generation = timer_generation_;
  engine_.schedule(ev);
}

void Simulation::cancel_timer() {
  timer_armed_ = false;
  timer_generation_ += 1;
}

void Simulation::transmit_segment(SeqNo seq, Bytes len, SendCause cause) {
  const TimeUs now = engine_.now();
  bool rexmit = cause != SendCause::kNew;
  const char* cause_name = "new";
  switch (cause) {
    case SendCause::kNew: break;
    case SendCause::kRtoRetransmit:
      cause_name = "rto";
      metrics_.rto_retransmits += 1;
      break;
    case SendCause::kFastRetransmit:
      cause_name = "fastrtx";
      metrics_.fast_retransmits += 1;
      break;
    case SendCause::kPartialRetransmit:
      cause_name = "partial";
      metrics_.partial_ack_retransmits += 1;
      break;
    case SendCause::kResend:
      cause_name = "resend";
      metrics_.rto_retransmits += 1;
      break;
  }
  metrics_.segments_sent += 1;
  if (rexmit) metrics_.segments_retransmitted += 1;

  auto [it, inserted] = in_flight_.try_emplace(seq, SegmentInfo{len, now, rexmit});
  if (!inserted) {
    it->second.retransmitted = true;
  }
  if (seq >= max_sent_seq_) {
    metrics_.unique_segments_sent += 1;
    max_sent_seq_ = seq + len;
  }

  tracef("%lld SegmentSent seq=%lld len=%lld cause=%s",
         static_cast<long long>(now), static_cast<long long>(seq),
         static_cast<long long>(len), cause_name);

  LinkDecision d = route_.transmit(now, false, seq, data_attempts_[seq]++);
  if (d.kind == LinkDecision::kDeliver) {
    SimEvent ev;
    ev.time = d.deliver_at;
    ev.kind = EventKind::kSegmentArrival;
    ev.seq = seq;
    ev.len = len;
    ev.retransmitted = it->second.retransmitted;
    engine_.schedule(ev);
  } else {
    bool route_down = d.kind == LinkDecision::kDropRouteDown;
    if (route_down) metrics_.segments_dropped_route += 1;
    else metrics_.segments_dropped_random += 1;
    tracef("%lld SegmentDrop seq=%lld len=%lld reason=%s",
           static_cast<long long>(now), static_cast<long long>(seq),
           static_cast<long long>(len), route_down ? "route_down" : "random");
  }
  if (!timer_armed_) arm_timer();
}

void Simulation::try_send(SendCause rexmit_cause) {
  while (send_next_ < cfg_.transfer_bytes) {
    Bytes len = seg_len(send_next_);
    if (outstanding() + len > effective_window()) break;
    SendCause cause = send_next_ < max_sent_seq_ ? rexmit_cause : SendCause::kNew;
    SeqNo seq = send_next_;
    send_next_ += len;
    transmit_segment(seq, len, cause);
  }
}

void Simulation::execute_retransmit(SendCause cause) {
  // Retransmissions bypass the window gate.
  auto it = in_flight_.find(snd_una_);
  Bytes len = it != in_flight_.end() ? it->second.len : seg_len(snd_una_);
  transmit_segment(snd_una_, len, cause);
}

void Simulation::send_ack(SeqNo ack, bool dup) {
  const TimeUs now = engine_.now();
  metrics_.acks_sent += 1;
  tracef("%lld AckSent ack=%lld dup=%d", static_cast<long long>(now),
         static_cast<long long>(ack), dup ? 1 : 0);
  LinkDecision d = route_.transmit(now, true, ack, ack_attempts_[ack]++);
  if (d.kind == LinkDecision::kDeliver) {
    SimEvent ev;
    ev.time = d.deliver_at;
    ev.kind = EventKind::kAckArrival;
    ev.seq = ack;
    engine_.schedule(ev);
  } else {
    metrics_.acks_lost += 1;
    tracef("%lld AckDrop ack=%lld reason=%s", static_cast<long long>(now),
           static_cast<long long>(ack),
           d.kind == LinkDecision::kDropRouteDown ? "route_down" : "random");
  }
}

void Simulation::handle_segment_arrival(const SimEvent& ev) {
  metrics_.segments_delivered += 1;
  tracef("%lld SegmentArrival seq=%lld len=%lld", static_cast<long long>(ev.time),
         static_cast<long long>(ev.seq), static_cast<long long>(ev.len));

  bool first_copy = ev.seq >= next_expected_ && !ooo_buffer_.count(ev.seq);
  if (first_copy) {
    metrics_.segments_received += 1;
    metrics_.bytes_delivered += ev.len;
  }

  bool advanced = false;
  if (ev.seq == next_expected_) {
    next_expected_ += ev.len;
    advanced = true;
    for (auto it = ooo_buffer_.begin();
         it != ooo_buffer_.end() && it->first == next_expected_;
         it = ooo_buffer_.erase(it)) {
      next_expected_ += it->second;
    }
  } else if (ev.seq > next_expected_) {
    ooo_buffer_.emplace(ev.seq, ev.len);
  }
  // One cumulative ACK per data segment, duplicate when nothing advanced.
  send_ack(next_expected_, !advanced);
}

void Simulation::trace_ack_arrival(SeqNo ack, const char* kind) {
  if (!cfg_.trace) return;
  long long srtt_us = est_.has_sample()
                          ? static_cast<long long>(to_time_us(est_.srtt()))
                          : -1;
  tracef("%lld AckArrival ack=%lld kind=%s cwnd=%lld ssthresh=%lld mode=%s rto_us=%lld srtt_us=%lld",
         static_cast<long long>(engine_.now()), static_cast<long long>(ack), kind,
         static_cast<long long>(cc_.cwnd), static_cast<long long>(cc_.ssthresh),
         cc::mode_name(cc_.mode), static_cast<long long>(to_time_us(est_.rto())),
         srtt_us);
}

void Simulation::handle_ack_arrival(const SimEvent& ev) {
  const SeqNo ack = ev.seq;
  metrics_.acks_delivered += 1;

  if (ack > snd_una_) {
    const Bytes newly = ack - snd_una_;

    // RTT sample from the oldest newly acked segment, unless it was ever
    // retransmitted (retransmission makes the measurement ambiguous).
    auto oldest = in_flight_.find(snd_una_);
    if (oldest != in_flight_.end() && !oldest->second.retransmitted) {
      est_.record_sample(to_seconds(engine_.now() - oldest->second.first_send_time));
    }

    auto snapshot = est_.reset_backoff_on_ack();
    if (snapshot && cfg_.restore_ssthresh_on_ack) {
      cc_.ssthresh = std::max(snapshot->ssthresh, 2 * cfg_.cc.mss);
    }

    const char* kind = "new";
    cc::Transition t;
    if (cc_.mode == cc::Mode::kFastRecovery) {
      if (ack >= cc_.recover_seq) {
        kind = "full";
        t = cc::on_full_ack(cc_, cfg_.cc);
      } else {
        kind = "partial";
        metrics_.partial_acks += 1;
        t = cc::on_partial_ack(cc_, cfg_.cc, newly);
      }
    } else {
      t = cc::on_new_ack(cc_, cfg_.cc);
    }
    apply_cc(t);

    snd_una_ = ack;
    send_next_ = std::max(send_next_, snd_una_);
    in_flight_.erase(in_flight_.begin(), in_flight_.lower_bound(ack));
    metrics_.bytes_acked = snd_una_;

    trace_ack_arrival(ack, kind);

    if (t.action.kind == cc::ActionKind::kRetransmitNextUnacked) {
      execute_retransmit(SendCause::kPartialRetransmit);
    }

    if (snd_una_ >= cfg_.transfer_bytes) {
      done_ = true;
      cancel_timer();
      return;
    }
    arm_timer();  // restart for the new oldest outstanding segment
    try_send(SendCause::kResend);
    return;
  }

  if (ack == snd_una_ && send_next_ > snd_una_) {
    metrics_.dupacks += 1;
    cc::Transition t = cc::on_dup_ack(cc_, cfg_.cc, max_sent_seq_, ack);
    apply_cc(t);
    trace_ack_arrival(ack, "dup");
    if (t.action.kind == cc::ActionKind::kRetransmitOldest) {
      execute_retransmit(SendCause::kFastRetransmit);
    } else if (t.action.kind == cc::ActionKind::kSendAllowed) {
      try_send(SendCause::kResend);
    }
    return;
  }

  trace_ack_arrival(ack, "stale");
}

void Simulation::handle_rto_expiry(const SimEvent& ev) {
  if (!timer_armed_ || ev.generation != timer_generation_) return;  // cancelled
  timer_armed_ = false;
  if (snd_una_ >= cfg_.transfer_bytes || outstanding() == 0) return;  // raced

  metrics_.timeouts += 1;
  const double multiplier = est_.backoff_multiplier(policy_);
  est_.on_timer_expiry(policy_, cc_.cwnd, cc_.ssthresh);
  apply_cc(cc::on_timeout(cc_, cfg_.cc, max_sent_seq_));

  // Outstanding data beyond the retransmission is resent as the window
  // reopens; the receiver's cumulative ACKs skip whatever survived.
  send_next_ = snd_una_;
  in_flight_.clear();

  const TimeUs armed = to_time_us(est_.rto());
  backoff_log_.push_back({engine_.now(), multiplier, armed});
  metrics_.backoff_wait_us += armed;

  tracef("%lld RtoExpiry seq=%lld rto_us=%lld cwnd=%lld ssthresh=%lld mode=%s",
         static_cast<long long>(engine_.now()), static_cast<long long>(snd_una_),
         static_cast<long long>(armed), static_cast<long long>(cc_.cwnd),
         static_cast<long long>(cc_.ssthresh), cc::mode_name(cc_.mode));

  try_send(SendCause::kRtoRetransmit);
}

bool Simulation::handle(const SimEvent& ev) {
  switch (ev.kind) {
    case EventKind::kAppDataReady:
      tracef("%lld AppDataReady total_bytes=%lld", static_cast<long long>(ev.time),
             static_cast<long long>(cfg_.transfer_bytes));
      try_send(SendCause::kNew);
      break;
    case EventKind::kSegmentArrival:
      handle_segment_arrival(ev);
      break;
    case EventKind::kAckArrival:
      handle_ack_arrival(ev);
      break;
    case EventKind::kRtoExpiry:
      handle_rto_expiry(ev);
      break;
    case EventKind::kRouteDown: {
      route_.set_down();
      tracef("%lld RouteDown", static_cast<long long>(ev.time));
      SimEvent up;
      up.time = route_.outage_end(ev.time);
      up.kind = EventKind::kRouteUp;
      engine_.schedule(up);
      break;
    }
    case EventKind::kRouteUp: {
      route_.set_up();
      tracef("%lld RouteUp", static_cast<long long>(ev.time));
      if (auto next = route_.next_outage_start(ev.time)) {
        SimEvent down;
        down.time = *next;
        down.kind = EventKind::kRouteDown;
        engine_.schedule(down);
      }
      break;
    }
    case EventKind::kRunEnd:
      break;
  }
  return !done_;
}

RunMetrics Simulation::run() {
  if (ran_) throw std::logic_error("Simulation::run called twice");
  ran_ = true;

  SimEvent start;
  start.time = 0;
  start.kind = EventKind::kAppDataReady;
  engine_.schedule(start);
  if (auto first_down = route_.first_outage_start()) {
    SimEvent down;
    down.time = *first_down;
    down.kind = EventKind::kRouteDown;
    engine_.schedule(down);
  }

  engine_.run_until(t_end_us_, [this](const SimEvent& ev) { return handle(ev); });

  metrics_.duration = to_seconds(engine_.now());
  for (const SimEvent& ev : engine_.pending()) {
    if (ev.kind == EventKind::kSegmentArrival) metrics_.segments_in_flight_at_end += 1;
    if (ev.kind == EventKind::kAckArrival) metrics_.acks_in_flight_at_end += 1;
  }
  tracef("%lld RunEnd bytes_acked=%lld", static_cast<long long>(engine_.now()),
         static_cast<long long>(metrics_.bytes_acked));
  return metrics_;
}

}  // namespace abrasim
