#ifndef ABRASIM_TESTS_RTO_REFERENCE_HPP
#define ABRASIM_TESTS_RTO_REFERENCE_HPP

// High-precision oracle for the smoothed-RTT chain, evaluated in long double
// with the recurrences written out directly.

#include <cmath>

namespace rtoref {

struct Oracle {
  bool has = false;
  long double srtt = 0.0L;
  long double rttd = 0.0L;
  long double floor = 0.2L;
  long double ceiling = 60.0L;

  void sample(long double r) {
    if (!has) {
      srtt = r;
      rttd = r / 2.0L;
      has = true;
    } else {
      srtt = (1.0L - 1.0L / 8.0L) * srtt + (1.0L / 8.0L) * r;
      rttd = (1.0L - 1.0L / 4.0L) * rttd + (1.0L / 4.0L) * fabsl(srtt - r);
    }
  }

  long double raw_rto() const { return srtt + 4.0L * rttd; }

  long double rto() const {
    long double r = raw_rto();
    if (r < floor) return floor;
    if (r > ceiling) return ceiling;
    return r;
  }
};

inline long double rel_err(long double got, long double want) {
  long double denom = fabsl(want) > 1e-30L ? fabsl(want) : 1e-30L;
  return fabsl(got - want) / denom;
}

}  // namespace rtoref

#endif  // ABRASIM_TESTS_RTO_REFERENCE_HPP
