#include "abrasim/metrics.hpp"

#include <cstdio>

#include "abrasim/scenario.hpp"

namespace abrasim {

std::optional<double> throughput(const RunMetrics& m) {
  if (!(m.duration > 0)) return std::nullopt;
  return static_cast<double>(m.bytes_delivered) / m.duration;
}

std::optional<double> packet_delivery_ratio(const RunMetrics& m) {
  if (m.unique_segments_sent <= 0) return std::nullopt;
  return static_cast<double>(m.segments_received) /
         static_cast<double>(m.unique_segments_sent);
}

std::string csv_header() {
  return "label,knob,level,variant,seed,outage_rate,outage_dur_min,outage_dur_max,"
         "loss_prob,base_delay,jitter,mss,transfer_bytes,t_end,"
         "segments_sent,unique_segments_sent,segments_delivered,segments_received,"
         "segments_dropped_route,segments_dropped_random,segments_in_flight_at_end,"
         "segments_retransmitted,rto_retransmits,fast_retransmits,partial_ack_retransmits,"
         "acks_sent,acks_delivered,acks_lost,acks_in_flight_at_end,"
         "timeouts,partial_acks,dupacks,bytes_delivered,bytes_acked,backoff_wait_us,"
         "duration_s,throughput_Bps,pdr\n";
}

std::string csv_row(const Scenario& sc, const RunMetrics& m) {
  const SimConfig& c = sc.config;
  char buf[1024];
  auto tput = throughput(m);
  auto pdr = packet_delivery_ratio(m);
  char tput_s[32] = "NA";
  char pdr_s[32] = "NA";
  if (tput) std::snprintf(tput_s, sizeof tput_s, "%.3f", *tput);
  if (pdr) std::snprintf(pdr_s, sizeof pdr_s, "%.6f", *pdr);
  std::snprintf(
      buf, sizeof buf,
      "%s,%s,%.4f,%s,%llu,%.6f,%.3f,%.3f,%.6f,%.6f,%.6f,%lld,%lld,%.3f,"
      "%lld,%lld,%lld,%lld,%lld,%lld,%lld,%lld,%lld,%lld,%lld,"
      "%lld,%lld,%lld,%lld,%lld,%lld,%lld,%lld,%lld,%lld,"
      "%.6f,%s,%s\n",
      sc.label.c_str(), sc.knob_label.c_str(), sc.level,
      cc::variant_name(c.cc.variant), static_cast<unsigned long long>(c.seed),
      c.route.outage_rate, c.route.outage_duration_min, c.route.outage_duration_max,
      c.route.random_loss_prob, c.route.base_delay, c.route.delay_jitter,
      static_cast<long long>(c.cc.mss), static_cast<long long>(c.transfer_bytes),
      c.t_end,
      static_cast<long long>(m.segments_sent),
      static_cast<long long>(m.unique_segments_sent),
      static_cast<long long>(m.segments_delivered),
      static_cast<long long>(m.segments_received),
      static_cast<long long>(m.segments_dropped_route),
      static_cast<long long>(m.segments_dropped_random),
      static_cast<long long>(m.segments_in_flight_at_end),
      static_cast<long long>(m.segments_retransmitted),
      static_cast<long long>(m.rto_retransmits),
      static_cast<long long>(m.fast_retransmits),
      static_cast<long long>(m.partial_ack_retransmits),
      static_cast<long long>(m.acks_sent),
      static_cast<long long>(m.acks_delivered),
      static_cast<long long>(m.acks_lost),
      static_cast<long long>(m.acks_in_flight_at_end),
      static_cast<long long>(m.timeouts),
      static_cast<long long>(m.partial_acks),
      static_cast<long long>(m.dupacks),
      static_cast<long long>(m.bytes_delivered),
      static_cast<long long>(m.bytes_acked),
      static_cast<long long>(m.backoff_wait_us),
      m.duration, tput_s, pdr_s);
  return buf;
}

std::string emit_csv(const std::vector<std::pair<Scenario, RunMetrics>>& rows) {
  std::string out = csv_header();
  for (const auto& [sc, m] : rows) out += csv_row(sc, m);
  return out;
}

}  // namespace abrasim
