#include "abrasim/rto.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace abrasim {

namespace {
constexpr double kAlpha = 0.125;  // srtt gain
constexpr double kBeta = 0.25;    // rttd gain
}

const char* backoff_policy_name(BackoffPolicy p) {
  return p == BackoffPolicy::kExponential ? "exponential" : "abra";
}

bool backoff_policy_from_name(const std::string& name, BackoffPolicy* out) {
  if (name == "exponential") { *out = BackoffPolicy::kExponential; return true; }
  if (name == "abra") { *out = BackoffPolicy::kAbra; return true; }
  return false;
}

RttEstimator::RttEstimator(const EstimatorConfig& cfg) : cfg_(cfg) {
  if (!(cfg.rto_floor > 0) || !(cfg.rto_ceiling >= cfg.rto_floor))
    throw std::invalid_argument("rto bounds must satisfy 0 < floor <= ceiling");
  if (!(cfg.min_srtt_init <= cfg.max_srtt_init))
    throw std::invalid_argument("min_srtt_init above max_srtt_init");
  min_srtt_ = cfg.min_srtt_init;
  max_srtt_ = cfg.max_srtt_init;
  rto_ = clamp_rto(cfg.rto_initial);
}

double RttEstimator::clamp_rto(double rto) const {
  return std::min(cfg_.rto_ceiling, std::max(cfg_.rto_floor, rto));
}

void RttEstimator::record_sample(double rtt) {
  if (!(rtt > 0)) throw std::invalid_argument("rtt sample must be positive");
  if (!has_sample_) {
    srtt_ = rtt;
    rttd_ = rtt / 2;
    has_sample_ = true;
  } else {
    srtt_ = (1.0 - kAlpha) * srtt_ + kAlpha * rtt;
    rttd_ = (1.0 - kBeta) * rttd_ + kBeta * std::abs(srtt_ - rtt);
  }
  rto_ = clamp_rto(srtt_ + 4.0 * rttd_);
  last_srtt_ = srtt_;
  min_srtt_ = std::min(min_srtt_, srtt_);
  max_srtt_ = std::max(max_srtt_, srtt_);
  consecutive_backoffs_ = 0;
}

double RttEstimator::raw_rto() const {
  return has_sample_ ? srtt_ + 4.0 * rttd_ : cfg_.rto_initial;
}

double RttEstimator::abra_backoff() const {
  if (!has_sample_) return 2.0;
  if (max_srtt_ <= min_srtt_) return 2.0;
  double b = 1.0 + (last_srtt_ - min_srtt_) / (max_srtt_ - min_srtt_);
  return std::min(2.0, std::max(1.0, b));
}

double RttEstimator::backoff_multiplier(BackoffPolicy policy) const {
  return policy == BackoffPolicy::kExponential ? 2.0 : abra_backoff();
}

void RttEstimator::on_timer_expiry(BackoffPolicy policy, Bytes cwnd, Bytes ssthresh) {
  rto_ = clamp_rto(backoff_multiplier(policy) * rto_);
  consecutive_backoffs_ += 1;
  if (!saved_)
    saved_ = CongestionSnapshot{cwnd, ssthresh, has_sample_ ? srtt_ : 0.0};
}

std::optional<CongestionSnapshot> RttEstimator::reset_backoff_on_ack() {
  consecutive_backoffs_ = 0;
  std::optional<CongestionSnapshot> out;
  saved_.swap(out);
  return out;
}

}  // namespace abrasim
