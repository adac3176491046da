#include "abrasim/route.hpp"

#include <stdexcept>

namespace abrasim {

void validate(const RouteParams& p) {
  if (!(p.base_delay > 0)) throw std::invalid_argument("base_delay must be positive");
  if (p.delay_jitter < 0) throw std::invalid_argument("delay_jitter must be >= 0");
  if (p.random_loss_prob < 0 || p.random_loss_prob > 1)
    throw std::invalid_argument("random_loss_prob must be in [0, 1]");
  if (p.outage_rate < 0) throw std::invalid_argument("outage_rate must be >= 0");
  if (p.outage_rate > 0 || !p.scripted_outages.empty()) {
    if (!(p.outage_duration_min > 0) || p.outage_duration_max < p.outage_duration_min)
      throw std::invalid_argument("outage durations must satisfy 0 < min <= max");
  }
  double prev_end = -1.0;
  for (const auto& [start, dur] : p.scripted_outages) {
    if (start < 0 || !(dur > 0))
      throw std::invalid_argument("scripted outage must have start >= 0 and duration > 0");
    if (start < prev_end)
      throw std::invalid_argument("scripted outages must be sorted and non-overlapping");
    prev_end = start + dur;
  }
  std::int64_t prev_drop = 0;
  for (std::int64_t idx : p.scripted_drops) {
    if (idx <= prev_drop)
      throw std::invalid_argument("scripted_drops must be >= 1 and strictly increasing");
    prev_drop = idx;
  }
}

RouteModel::RouteModel(const RouteParams& params, std::uint64_t master_seed)
    : params_(params),
      loss_seed_(splitmix64(master_seed ^ (0x9E3779B97F4A7C15ull * (kLossStream + 1)))),
      jitter_seed_(splitmix64(master_seed ^ (0x9E3779B97F4A7C15ull * (kJitterStream + 1)))),
      outage_rng_(master_seed, kOutageStream) {
  validate(params_);
}

double RouteModel::keyed_uniform01(std::uint64_t stream_seed, bool ack_direction,
                                   SeqNo seq, std::int64_t attempt) const {
  std::uint64_t key = static_cast<std::uint64_t>(seq) * 0xD1B54A32D192ED03ull ^
                      static_cast<std::uint64_t>(attempt) << 1 ^
                      (ack_direction ? 1ull : 0ull);
  return static_cast<double>(splitmix64(stream_seed ^ splitmix64(key)) >> 11) *
         0x1.0p-53;
}

std::optional<TimeUs> RouteModel::first_outage_start() {
  if (!params_.scripted_outages.empty()) {
    next_scripted_outage_ = 0;
    return to_time_us(params_.scripted_outages[0].first);
  }
  if (params_.outage_rate <= 0) return std::nullopt;
  return to_time_us(outage_rng_.exponential(params_.outage_rate));
}

TimeUs RouteModel::outage_end(TimeUs now) {
  if (!params_.scripted_outages.empty()) {
    const auto& [start, dur] = params_.scripted_outages[next_scripted_outage_];
    (void)start;
    return now + to_time_us(dur);
  }
  double dur = params_.outage_duration_min == params_.outage_duration_max
                   ? params_.outage_duration_min
                   : outage_rng_.uniform(params_.outage_duration_min,
                                         params_.outage_duration_max);
  return now + to_time_us(dur);
}

std::optional<TimeUs> RouteModel::next_outage_start(TimeUs now) {
  if (!params_.scripted_outages.empty()) {
    next_scripted_outage_ += 1;
    if (next_scripted_outage_ >= params_.scripted_outages.size()) return std::nullopt;
    return to_time_us(params_.scripted_outages[next_scripted_outage_].first);
  }
  if (params_.outage_rate <= 0) return std::nullopt;
  return now + to_time_us(outage_rng_.exponential(params_.outage_rate));
}

LinkDecision RouteModel::transmit(TimeUs now, bool ack_direction, SeqNo seq,
                                  std::int64_t attempt) {
  transmissions_ += 1;
  if (!up_) return {LinkDecision::kDropRouteDown, 0};
  if (next_scripted_drop_ < params_.scripted_drops.size() &&
      params_.scripted_drops[next_scripted_drop_] == transmissions_) {
    next_scripted_drop_ += 1;
    return {LinkDecision::kDropRandom, 0};
  }
  if (params_.random_loss_prob > 0 &&
      keyed_uniform01(loss_seed_, ack_direction, seq, attempt) <
          params_.random_loss_prob) {
    return {LinkDecision::kDropRandom, 0};
  }
  TimeUs delay = to_time_us(params_.base_delay);
  if (params_.delay_jitter > 0)
    delay += to_time_us(params_.delay_jitter *
                        keyed_uniform01(jitter_seed_, ack_direction, seq, attempt));
  return {LinkDecision::kDeliver, now + delay};
}

}  // namespace abrasim
