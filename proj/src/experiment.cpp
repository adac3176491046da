#include "abrasim/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <stdexcept>
#include <thread>

#include "abrasim/sim.hpp"

namespace abrasim {

const char* sweep_axis_name(SweepAxis a) {
  switch (a) {
    case SweepAxis::kSpeed: return "speed";
    case SweepAxis::kNodes: return "nodes";
    case SweepAxis::kPause: return "pause";
  }
  return "?";
}

bool sweep_axis_from_name(const std::string& name, SweepAxis* out) {
  if (name == "speed") { *out = SweepAxis::kSpeed; return true; }
  if (name == "nodes") { *out = SweepAxis::kNodes; return true; }
  if (name == "pause") { *out = SweepAxis::kPause; return true; }
  return false;
}

RouteParams axis_level_route(const RouteParams& base, SweepAxis axis, double level) {
  if (!(level > 0)) throw std::invalid_argument("axis level must be positive");
  RouteParams r = base;
  switch (axis) {
    case SweepAxis::kSpeed:
      // Faster nodes break routes more often.
      r.outage_rate = level / 100.0;
      break;
    case SweepAxis::kNodes:
      // Denser networks offer alternate paths: fewer stray losses and
      // shorter outages.
      r.outage_rate = 0.10;
      r.random_loss_prob = std::max(0.005, 0.11 - 0.002 * level);
      r.outage_duration_max =
          std::max(r.outage_duration_min + 0.1, 3.5 - 0.05 * level);
      break;
    case SweepAxis::kPause:
      // Longer dwell times mean fewer, shorter route breaks.
      r.outage_rate = 0.6 / level;
      r.outage_duration_max = std::min(base.outage_duration_max,
                                       r.outage_duration_min + 10.0 / level);
      break;
  }
  return r;
}

std::vector<Scenario> build_sweep(const SweepSpec& spec) {
  if (spec.levels.empty()) throw std::invalid_argument("sweep has no levels");
  if (spec.variants.empty()) throw std::invalid_argument("sweep has no variants");
  if (spec.seeds.empty()) throw std::invalid_argument("sweep has no seeds");
  std::vector<Scenario> out;
  out.reserve(spec.levels.size() * spec.variants.size() * spec.seeds.size());
  for (double level : spec.levels) {
    for (cc::Variant v : spec.variants) {
      for (std::uint64_t seed : spec.seeds) {
        Scenario sc = spec.base;
        sc.knob_label = sweep_axis_name(spec.axis);
        sc.level = level;
        sc.config.cc.variant = v;
        sc.config.seed = seed;
        sc.config.route = axis_level_route(spec.base.config.route, spec.axis, level);
        char label[96];
        std::snprintf(label, sizeof label, "%s-%s%g", spec.base.label.c_str(),
                      sweep_axis_name(spec.axis), level);
        sc.label = label;
        out.push_back(std::move(sc));
      }
    }
  }
  return out;
}

std::vector<RunResult> run_sweep(const std::vector<Scenario>& scenarios, int jobs) {
  if (jobs < 1) jobs = 1;
  std::vector<RunResult> results(scenarios.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= scenarios.size()) return;
      RunResult& r = results[i];
      r.scenario = scenarios[i];
      try {
        Simulation sim(scenarios[i].config);
        r.metrics = sim.run();
        if (scenarios[i].config.trace) r.trace = sim.trace_text();
      } catch (const std::exception& e) {
        r.error = e.what();
      }
    }
  };
  if (jobs == 1 || scenarios.size() <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    int n = std::min<int>(jobs, static_cast<int>(scenarios.size()));
    pool.reserve(n);
    for (int i = 0; i < n; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  return results;
}

}  // namespace abrasim
