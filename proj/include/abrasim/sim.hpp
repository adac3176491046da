#ifndef ABRASIM_SIM_HPP
#define ABRASIM_SIM_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "abrasim/congestion.hpp"
#include "abrasim/events.hpp"
#include "abrasim/metrics.hpp"
#include "abrasim/route.hpp"
#include "abrasim/rto.hpp"
#include "abrasim/scenario.hpp"
#include "abrasim/units.hpp"

namespace abrasim {

// One timer interval armed in response to an expiry.
struct BackoffRecord {
  TimeUs time = 0;
  double multiplier = 0.0;
  TimeUs armed_rto_us = 0;
};

// Single bulk-transfer connection over one failure-prone path, driven to
// completion or t_end.  Strictly single-threaded; independent runs may
// execute concurrently.
class Simulation {
 public:
  explicit Simulation(const SimConfig& cfg);

  // Runs to completion or t_end; callable once.
  RunMetrics run();

  const std::string& trace_text() const { return trace_; }
  const std::vector<BackoffRecord>& backoff_log() const { return backoff_log_; }

  const cc::State& cc_state() const { return cc_; }
  const RttEstimator& estimator() const { return est_; }
  const RunMetrics& metrics() const { return metrics_; }

 private:
  enum class SendCause { kNew, kRtoRetransmit, kFastRetransmit, kPartialRetransmit, kResend };

  struct SegmentInfo {
    Bytes len = 0;
    TimeUs first_send_time = 0;
    bool retransmitted = false;
  };

  bool handle(const SimEvent& ev);
  void handle_segment_arrival(const SimEvent& ev);
  void handle_ack_arrival(const SimEvent& ev);
  void handle_rto_expiry(const SimEvent& ev);

  Bytes seg_len(SeqNo seq) const;
  Bytes outstanding() const { return send_next_ - snd_una_; }
  Bytes effective_window() const;

  // Window-gated transmission of whatever fits, starting at send_next_.
  // rexmit_cause classifies re-sends of previously transmitted data.
  void try_send(SendCause rexmit_cause);
  void transmit_segment(SeqNo seq, Bytes len, SendCause cause);
  void send_ack(SeqNo ack, bool dup);
  void apply_cc(const cc::Transition& t) { cc_ = t.state; }
  void execute_retransmit(SendCause cause);

  void arm_timer();
  void cancel_timer();

  void trace_ack_arrival(SeqNo ack, const char* kind);
  void tracef(const char* fmt, ...);

  SimConfig cfg_;
  TimeUs t_end_us_ = 0;
  EventEngine engine_;
  RouteModel route_;
  cc::State cc_;
  RttEstimator est_;
  BackoffPolicy policy_;

  // Sender.
  SeqNo snd_una_ = 0;
  SeqNo send_next_ = 0;
  SeqNo max_sent_seq_ = 0;  // high-water mark of first transmissions
  std::map<SeqNo, SegmentInfo> in_flight_;
  bool timer_armed_ = false;
  std::uint64_t timer_generation_ = 0;

  // Link draw keys: how many times each data seq / ack value went out.
  std::map<SeqNo, std::int64_t> data_attempts_;
  std::map<SeqNo, std::int64_t> ack_attempts_;

  // Receiver.
  SeqNo next_expected_ = 0;
  std::map<SeqNo, Bytes> ooo_buffer_;

  RunMetrics metrics_;
  std::vector<BackoffRecord> backoff_log_;
  std::string trace_;
  bool done_ = false;
  bool ran_ = false;
};

}  // namespace abrasim

#endif  // ABRASIM_SIM_HPP
