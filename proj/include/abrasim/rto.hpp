#ifndef ABRASIM_RTO_HPP
#define ABRASIM_RTO_HPP

#include <optional>
#include <string>

#include "abrasim/units.hpp"

namespace abrasim {

enum class BackoffPolicy { kExponential, kAbra };

const char* backoff_policy_name(BackoffPolicy p);
bool backoff_policy_from_name(const std::string& name, BackoffPolicy* out);

struct EstimatorConfig {
  double rto_floor = 0.2;
  double rto_ceiling = 60.0;
  double rto_initial = 3.0;
  double min_srtt_init = 0.1;
  double max_srtt_init = 0.6;
};

// Sender window values captured when the retransmission timer expires,
// together with the smoothed RTT at that moment.
struct CongestionSnapshot {
  Bytes cwnd = 0;
  Bytes ssthresh = 0;
  double srtt = 0.0;  // 0 when no sample had been taken yet
};

// Smoothed RTT / deviation / RTO chain with gains 1/8 and 1/4, plus the two
// timeout backoff policies: classical doubling, and the adaptive multiplier
// 1 + (last_srtt - min_srtt) / (max_srtt - min_srtt), bounded to [1, 2].
class RttEstimator {
 public:
  RttEstimator() : RttEstimator(EstimatorConfig{}) {}
  explicit RttEstimator(const EstimatorConfig& cfg);

  // Feed one measured RTT.  The caller must not feed samples for segments
  // that were ever retransmitted.  Throws std::invalid_argument on rtt <= 0.
  void record_sample(double rtt_seconds);

  // Clamped timeout; the configured initial value before any sample.
  double rto() const { return rto_; }

  // srtt + 4*rttd before clamping; the configured initial value before any
  // sample.  Does not include backoff applied since the last sample.
  double raw_rto() const;

  // Adaptive multiplier in [1, 2].  Without any sample, or with degenerate
  // bounds (max == min), there is no spread information and the policy falls
  // back to the conservative 2.
  double abra_backoff() const;

  double backoff_multiplier(BackoffPolicy policy) const;

  // Inflate the timeout after an expiry and capture the sender snapshot.
  void on_timer_expiry(BackoffPolicy policy, Bytes cwnd, Bytes ssthresh);

  // A window-advancing ACK ends the backoff episode.  Returns the snapshot
  // captured at the first expiry of the episode, if one was outstanding.
  std::optional<CongestionSnapshot> reset_backoff_on_ack();

  bool has_sample() const { return has_sample_; }
  double srtt() const { return srtt_; }
  double rttd() const { return rttd_; }
  double last_srtt() const { return last_srtt_; }
  double min_srtt() const { return min_srtt_; }
  double max_srtt() const { return max_srtt_; }
  int consecutive_backoffs() const { return consecutive_backoffs_; }
  const std::optional<CongestionSnapshot>& saved_snapshot() const { return saved_; }
  const EstimatorConfig& config() const { return cfg_; }

 private:
  double clamp_rto(double rto) const;

  EstimatorConfig cfg_;
  bool has_sample_ = false;
  double srtt_ = 0.0;
  double rttd_ = 0.0;
  double last_srtt_ = 0.0;
  double min_srtt_ = 0.0;
  double max_srtt_ = 0.0;
  double rto_ = 0.0;
  int consecutive_backoffs_ = 0;
  std::optional<CongestionSnapshot> saved_;
};

}  // namespace abrasim

#endif  // ABRASIM_RTO_HPP
