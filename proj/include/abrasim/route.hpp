#ifndef ABRASIM_ROUTE_HPP
#define ABRASIM_ROUTE_HPP

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "abrasim/rng.hpp"
#include "abrasim/units.hpp"

namespace abrasim {

// Abstract single-path link subject to route outages: a two-state renewal
// process (exponential up intervals at outage_rate, uniform outage
// durations), plus independent random loss and delivery jitter.  Both
// directions of a connection share one path state.
struct RouteParams {
  double base_delay = 0.045;       // one-way, seconds
  double delay_jitter = 0.0;       // uniform [0, jitter) added per delivery
  double random_loss_prob = 0.0;
  double outage_rate = 0.0;        // mean outages per second of uptime; 0 = never
  double outage_duration_min = 0.5;
  double outage_duration_max = 2.0;

  // Deterministic overrides, mainly for scripted tests: explicit outage
  // windows (start, duration, seconds, sorted, non-overlapping) and 1-based
  // link-transmission indices to drop as random loss.  When scripted_outages
  // is set the renewal process is not used.
  std::vector<std::pair<double, double>> scripted_outages;
  std::vector<std::int64_t> scripted_drops;
};

void validate(const RouteParams& p);

struct LinkDecision {
  enum Kind { kDeliver, kDropRouteDown, kDropRandom };
  Kind kind = kDeliver;
  TimeUs deliver_at = 0;
};

class RouteModel {
 public:
  RouteModel(const RouteParams& params, std::uint64_t master_seed);

  // Outage schedule; the caller turns these into events.  Draws for the next
  // transition are consumed exactly when these are called.
  std::optional<TimeUs> first_outage_start();
  TimeUs outage_end(TimeUs now);                    // called at outage start
  std::optional<TimeUs> next_outage_start(TimeUs now);  // called at outage end

  void set_down() { up_ = false; }
  void set_up() { up_ = true; }
  bool up() const { return up_; }

  // One transmission offered to the link.  Loss and jitter are keyed draws:
  // the fate of the attempt-th transmission of seq in a given direction is a
  // pure function of (seed, direction, seq, attempt), never of draw order.
  // Runs that share a seed therefore see identical per-segment fates wherever
  // their transmission sets overlap, which keeps paired-policy comparisons
  // free of stream-position drift.
  LinkDecision transmit(TimeUs now, bool ack_direction, SeqNo seq,
                        std::int64_t attempt);

  std::int64_t transmissions_offered() const { return transmissions_; }

 private:
  double keyed_uniform01(std::uint64_t stream_seed, bool ack_direction,
                         SeqNo seq, std::int64_t attempt) const;

  RouteParams params_;
  std::uint64_t loss_seed_;
  std::uint64_t jitter_seed_;
  RandomStream outage_rng_;
  bool up_ = true;
  std::int64_t transmissions_ = 0;
  std::size_t next_scripted_outage_ = 0;
  std::size_t next_scripted_drop_ = 0;
};

}  // namespace abrasim

#endif  // ABRASIM_ROUTE_HPP
