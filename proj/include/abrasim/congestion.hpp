#ifndef ABRASIM_CONGESTION_HPP
#define ABRASIM_CONGESTION_HPP

#include <string>

#include "abrasim/units.hpp"

namespace abrasim::cc {

enum class Variant { kReno, kNewReno, kAbraNewReno };

// AbraNewReno shares NewReno's window logic; the two differ only in the
// timer backoff policy, which lives in the RTT estimator.
inline bool newreno_recovery(Variant v) { return v != Variant::kReno; }

const char* variant_name(Variant v);
bool variant_from_name(const std::string& name, Variant* out);

enum class Mode { kSlowStart, kCongestionAvoidance, kFastRecovery };

const char* mode_name(Mode m);

struct Params {
  Variant variant = Variant::kNewReno;
  Bytes mss = 512;
  // 0 selects min(4*mss, max(2*mss, 4380)).
  Bytes initial_cwnd = 0;
  // Window to restart from after a timeout; 0 selects one mss.
  Bytes restart_cwnd = 0;
  Bytes initial_ssthresh = 65535;
};

// min(4*mss, max(2*mss, 4380))
Bytes default_initial_cwnd(Bytes mss);

// Throws std::invalid_argument on an unusable configuration.
void validate(const Params& p);

struct State {
  Bytes cwnd = 0;
  Bytes ssthresh = 0;
  Mode mode = Mode::kSlowStart;
  // High-water mark of the last loss-recovery episode (fast recovery entry or
  // timeout).  Duplicate acks at or below it never start a new fast
  // recovery; without this guard, post-timeout resends of data the receiver
  // already holds would trigger a spurious recovery for the old window.
  SeqNo recover_seq = -1;
  int dupack_count = 0;
  Bytes partial_ack_credit = 0; // window inflation while in recovery
};

enum class ActionKind {
  kNone,
  kRetransmitOldest,
  kRetransmitNextUnacked,
  kSendAllowed,
};

struct Action {
  ActionKind kind = ActionKind::kNone;
  // Window after the transition.
  Bytes cwnd = 0;
  Bytes ssthresh = 0;
};

struct Transition {
  State state;
  Action action;
};

State initial_state(const Params& p);

// Cumulative ACK advancing the window outside fast recovery.
Transition on_new_ack(const State& s, const Params& p);

// ACK repeating the current cumulative point (dup_ack_seq is the duplicated
// cumulative value).  The third consecutive duplicate triggers fast
// retransmit, unless dup_ack_seq does not reach past recover_seq, in which
// case the count restarts; later duplicates inside recovery inflate the
// usable window.
Transition on_dup_ack(const State& s, const Params& p, SeqNo highest_sent_seq,
                      SeqNo dup_ack_seq);

// ACK advancing inside fast recovery without covering recover_seq.
Transition on_partial_ack(const State& s, const Params& p, Bytes newly_acked);

// ACK covering recover_seq; leaves fast recovery.
Transition on_full_ack(const State& s, const Params& p);

// Retransmission timer expiry.  highest_sent_seq becomes the new
// recover_seq, closing the fast-recovery guard until the cumulative ack
// passes the pre-timeout frontier.
Transition on_timeout(const State& s, const Params& p, SeqNo highest_sent_seq);

}  // namespace abrasim::cc

#endif  // ABRASIM_CONGESTION_HPP
