#include "abrasim/congestion.hpp"

#include <algorithm>
#include <stdexcept>

namespace abrasim::cc {

namespace {

constexpr int kDupackThreshold = 3;

Bytes effective_initial_cwnd(const Params& p) {
  return p.initial_cwnd > 0 ? p.initial_cwnd : default_initial_cwnd(p.mss);
}

Bytes effective_restart_cwnd(const Params& p) {
  return p.restart_cwnd > 0 ? p.restart_cwnd : p.mss;
}

Bytes halved_ssthresh(const State& s, const Params& p) {
  return std::max(s.cwnd / 2, 2 * p.mss);
}

// Linear-growth increment; floored at one byte so large windows still move.
Bytes ca_increment(Bytes cwnd, Bytes mss) {
  return std::max<Bytes>(1, mss * mss / cwnd);
}

Action make_action(ActionKind kind, const State& s) {
  return Action{kind, s.cwnd, s.ssthresh};
}

}  // namespace

const char* variant_name(Variant v) {
  switch (v) {
    case Variant::kReno: return "reno";
    case Variant::kNewReno: return "newreno";
    case Variant::kAbraNewReno: return "abra-newreno";
  }
  return "?";
}

bool variant_from_name(const std::string& name, Variant* out) {
  if (name == "reno") { *out = Variant::kReno; return true; }
  if (name == "newreno") { *out = Variant::kNewReno; return true; }
  if (name == "abra-newreno") { *out = Variant::kAbraNewReno; return true; }
  return false;
}

const char* mode_name(Mode m) {
  switch (m) {
    case Mode::kSlowStart: return "SS";
    case Mode::kCongestionAvoidance: return "CA";
    case Mode::kFastRecovery: return "FR";
  }
  return "?";
}

Bytes default_initial_cwnd(Bytes mss) {
  return std::min(4 * mss, std::max(2 * mss, Bytes{4380}));
}

void validate(const Params& p) {
  if (p.mss < 1) throw std::invalid_argument("mss must be >= 1 byte");
  if (p.initial_cwnd != 0) {
    if (p.initial_cwnd < p.mss)
      throw std::invalid_argument("initial_cwnd below one mss");
    if (p.initial_cwnd > default_initial_cwnd(p.mss))
      throw std::invalid_argument("initial_cwnd above min(4*mss, max(2*mss, 4380))");
  }
  if (p.restart_cwnd != 0 && p.restart_cwnd < p.mss)
    throw std::invalid_argument("restart_cwnd below one mss");
  if (p.initial_ssthresh < 1)
    throw std::invalid_argument("initial_ssthresh must be positive");
}

State initial_state(const Params& p) {
  validate(p);
  State s;
  s.cwnd = effective_initial_cwnd(p);
  s.ssthresh = std::max(p.initial_ssthresh, 2 * p.mss);
  s.mode = Mode::kSlowStart;
  return s;
}

Transition on_new_ack(const State& s, const Params& p) {
  if (s.mode == Mode::kFastRecovery)
    throw std::logic_error("on_new_ack called in fast recovery");
  State n = s;
  n.dupack_count = 0;
  if (n.mode == Mode::kSlowStart && n.cwnd < n.ssthresh) {
    n.cwnd += p.mss;
  } else {
    n.mode = Mode::kCongestionAvoidance;
    n.cwnd += ca_increment(n.cwnd, p.mss);
  }
  return {n, make_action(ActionKind::kSendAllowed, n)};
}

Transition on_dup_ack(const State& s, const Params& p, SeqNo highest_sent_seq,
                      SeqNo dup_ack_seq) {
  State n = s;
  n.dupack_count += 1;
  if (n.mode == Mode::kFastRecovery) {
    // Already recovering: each duplicate inflates the usable window.
    n.partial_ack_credit += p.mss;
    return {n, make_action(ActionKind::kSendAllowed, n)};
  }
  if (n.dupack_count == kDupackThreshold) {
    if (dup_ack_seq <= n.recover_seq) {
      // Duplicates for data inside the last recovered window (typically
      // acks of post-timeout resends); starting another recovery here would
      // halve the window again for the same loss event.
      n.dupack_count = 0;
      return {n, make_action(ActionKind::kNone, n)};
    }
    n.ssthresh = halved_ssthresh(s, p);
    n.cwnd = n.ssthresh;
    n.mode = Mode::kFastRecovery;
    n.recover_seq = highest_sent_seq;
    n.partial_ack_credit = 0;
    return {n, make_action(ActionKind::kRetransmitOldest, n)};
  }
  return {n, make_action(ActionKind::kNone, n)};
}

Transition on_partial_ack(const State& s, const Params& p, Bytes newly_acked) {
  if (s.mode != Mode::kFastRecovery)
    throw std::logic_error("on_partial_ack called outside fast recovery");
  if (newly_acked <= 0)
    throw std::logic_error("partial ack must advance the cumulative point");
  if (!newreno_recovery(p.variant)) {
    // Reno treats any advance as the end of recovery, even with data from the
    // recovery window still missing.
    return on_full_ack(s, p);
  }
  State n = s;
  n.partial_ack_credit = std::max<Bytes>(0, n.partial_ack_credit - newly_acked) + p.mss;
  n.dupack_count = 0;
  return {n, make_action(ActionKind::kRetransmitNextUnacked, n)};
}

Transition on_full_ack(const State& s, const Params& p) {
  (void)p;
  if (s.mode != Mode::kFastRecovery)
    throw std::logic_error("on_full_ack called outside fast recovery");
  State n = s;
  n.mode = Mode::kCongestionAvoidance;
  n.cwnd = n.ssthresh;
  n.dupack_count = 0;
  n.partial_ack_credit = 0;
  return {n, make_action(ActionKind::kSendAllowed, n)};
}

Transition on_timeout(const State& s, const Params& p, SeqNo highest_sent_seq) {
  State n = s;
  n.ssthresh = halved_ssthresh(s, p);
  n.cwnd = std::min(effective_initial_cwnd(p), effective_restart_cwnd(p));
  n.mode = Mode::kSlowStart;
  n.dupack_count = 0;
  n.partial_ack_credit = 0;
  n.recover_seq = std::max(n.recover_seq, highest_sent_seq);
  return {n, make_action(ActionKind::kRetransmitOldest, n)};
}

}  // namespace abrasim::cc
