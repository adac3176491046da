#ifndef ABRASIM_SCENARIO_HPP
#define ABRASIM_SCENARIO_HPP

#include <cstdint>
#include <string>

#include "abrasim/congestion.hpp"
#include "abrasim/route.hpp"
#include "abrasim/rto.hpp"
#include "abrasim/units.hpp"

namespace abrasim {

// Everything one deterministic run needs.
struct SimConfig {
  cc::Params cc;
  EstimatorConfig est;
  RouteParams route;
  Bytes receiver_window = 16384;
  Bytes transfer_bytes = 0;
  double t_end = 0.0;       // seconds
  std::uint64_t seed = 1;
  bool restore_ssthresh_on_ack = false;
  bool trace = false;
};

// The timer policy is part of the variant choice.
BackoffPolicy policy_for(cc::Variant v);

void validate(const SimConfig& cfg);

// One point of an experiment: a fully specified run plus the labels that
// identify it in result tables.
struct Scenario {
  std::string label = "run";
  std::string knob_label;   // which experiment axis this point represents
  double level = 0.0;       // axis level (0 when not part of a sweep)
  SimConfig config;
};

// File-name-safe identifier: label-variant-seed<NNN>.
std::string scenario_id(const Scenario& sc);

}  // namespace abrasim

#endif  // ABRASIM_SCENARIO_HPP
