#ifndef ABRASIM_EXPERIMENT_HPP
#define ABRASIM_EXPERIMENT_HPP

#include <optional>
#include <string>
#include <vector>

#include "abrasim/metrics.hpp"
#include "abrasim/scenario.hpp"

namespace abrasim {

// The study varies one knob at a time across the three variants.  The knobs
// of the original mobile setting have no direct analog on an abstract link,
// so each axis maps onto route parameters (see axis_level_route below); the
// mapping is interpretive, not canonical.
enum class SweepAxis { kSpeed, kNodes, kPause };

const char* sweep_axis_name(SweepAxis a);
bool sweep_axis_from_name(const std::string& name, SweepAxis* out);

struct SweepSpec {
  Scenario base;
  SweepAxis axis = SweepAxis::kSpeed;
  std::vector<double> levels;
  std::vector<cc::Variant> variants;
  std::vector<std::uint64_t> seeds;
};

// Proxy mapping from an axis level to route parameters, applied on top of the
// base scenario's route:
//   speed v (m/s):  outage_rate = v / 100
//   nodes n:        outage_rate = 0.10, loss = max(0.005, 0.11 - 0.002 n),
//                   outage_duration_max = max(min + 0.1, 3.5 - 0.05 n)
//   pause p (s):    outage_rate = 0.6 / p,
//                   outage_duration_max = min + 10 / p (capped at base max)
RouteParams axis_level_route(const RouteParams& base, SweepAxis axis, double level);

// Cartesian product levels x variants x seeds in that nesting order, all
// other fields from base.  Throws std::invalid_argument on an empty dimension.
std::vector<Scenario> build_sweep(const SweepSpec& spec);

struct RunResult {
  Scenario scenario;
  std::optional<RunMetrics> metrics;  // empty on failure
  std::string error;
  std::string trace;  // filled when the scenario asked for tracing
};

// Executes every scenario independently; results are in input order no matter
// the parallelism.  A failing scenario is recorded, not fatal.
std::vector<RunResult> run_sweep(const std::vector<Scenario>& scenarios, int jobs = 1);

}  // namespace abrasim

#endif  // ABRASIM_EXPERIMENT_HPP
