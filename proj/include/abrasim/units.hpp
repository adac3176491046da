#ifndef ABRASIM_UNITS_HPP
#define ABRASIM_UNITS_HPP

#include <cmath>
#include <cstdint>

namespace abrasim {

// Simulation time is integer microseconds end to end.  Floating point appears
// only inside the RTT estimator and is converted at the timer-arming boundary,
// so the event queue never accumulates rounding drift.
using TimeUs = std::int64_t;
using Bytes = std::int64_t;
using SeqNo = std::int64_t;  // byte offset into the transfer stream

inline TimeUs to_time_us(double seconds) {
  return static_cast<TimeUs>(std::llround(seconds * 1e6));
}

inline double to_seconds(TimeUs t) { return static_cast<double>(t) * 1e-6; }

}  // namespace abrasim

#endif  // ABRASIM_UNITS_HPP
