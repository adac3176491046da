#ifndef ABRASIM_METRICS_HPP
#define ABRASIM_METRICS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "abrasim/units.hpp"

namespace abrasim {

struct Scenario;  // scenario.hpp

// Per-run counters.  "Delivered" counts physical arrivals at the receiver;
// "received" counts unique data segments, so retransmissions of already-held
// data inflate delivered but not received.
struct RunMetrics {
  std::int64_t segments_sent = 0;         // physical data transmissions
  std::int64_t unique_segments_sent = 0;  // distinct segments transmitted at least once
  std::int64_t segments_delivered = 0;
  std::int64_t segments_received = 0;     // unique segments at the receiver
  std::int64_t segments_dropped_route = 0;
  std::int64_t segments_dropped_random = 0;
  std::int64_t segments_in_flight_at_end = 0;
  std::int64_t segments_retransmitted = 0;
  std::int64_t rto_retransmits = 0;       // expiry retransmits + post-timeout resends
  std::int64_t fast_retransmits = 0;
  std::int64_t partial_ack_retransmits = 0;
  std::int64_t acks_sent = 0;
  std::int64_t acks_delivered = 0;
  std::int64_t acks_lost = 0;
  std::int64_t acks_in_flight_at_end = 0;
  std::int64_t timeouts = 0;
  std::int64_t partial_acks = 0;
  std::int64_t dupacks = 0;
  Bytes bytes_delivered = 0;              // unique data bytes at the receiver
  Bytes bytes_acked = 0;
  TimeUs backoff_wait_us = 0;             // sum of timer intervals armed after expiries
  double duration = 0.0;                  // seconds
};

// bytes_delivered / duration; empty when duration is not positive.
std::optional<double> throughput(const RunMetrics& m);

// Unique segments delivered over unique segments first-transmitted; empty
// when nothing was ever sent.
std::optional<double> packet_delivery_ratio(const RunMetrics& m);

// Fixed column order and fixed decimal formatting; emitting the same rows
// twice yields byte-identical text.  Undefined derived values print as NA.
std::string csv_header();
std::string csv_row(const Scenario& sc, const RunMetrics& m);
std::string emit_csv(const std::vector<std::pair<Scenario, RunMetrics>>& rows);

}  // namespace abrasim

#endif  // ABRASIM_METRICS_HPP
