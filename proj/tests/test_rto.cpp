#include "abrasim/rto.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "rto_reference.hpp"

using namespace abrasim;

TEST_CASE("first sample pins srtt, rttd and rto") {
  RttEstimator est;
  est.record_sample(0.2);
  CHECK(est.srtt() == doctest::Approx(0.2).epsilon(1e-12));
  CHECK(est.rttd() == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(est.rto() == doctest::Approx(0.6).epsilon(1e-12));
  // Pre-clamp identity: srtt + 4 * (srtt / 2) == 3 * srtt, exactly.
  CHECK(est.raw_rto() == 3 * 0.2);
}

TEST_CASE("smoothing follows the 1/8 and 1/4 gains") {
  RttEstimator est;
  est.record_sample(0.2);
  est.record_sample(0.3);
  CHECK(est.srtt() == doctest::Approx(0.2125).epsilon(1e-12));
  CHECK(est.rttd() == doctest::Approx(0.096875).epsilon(1e-12));
  CHECK(est.rto() == doctest::Approx(0.6).epsilon(1e-12));
}

TEST_CASE("constant samples converge to the sample and the floor") {
  RttEstimator est;
  for (int i = 0; i < 400; ++i) est.record_sample(0.05);
  CHECK(est.srtt() == doctest::Approx(0.05).epsilon(1e-9));
  CHECK(est.rttd() < 1e-9);
  CHECK(est.rto() == est.config().rto_floor);  // clamped up to 0.2
}

TEST_CASE("rto before any sample is the configured initial") {
  RttEstimator est;
  CHECK(est.rto() == 3.0);
  EstimatorConfig cfg;
  cfg.rto_initial = 1.5;
  CHECK(RttEstimator(cfg).rto() == 1.5);
}

TEST_CASE("nonpositive samples are rejected") {
  RttEstimator est;
  CHECK_THROWS_AS(est.record_sample(0.0), std::invalid_argument);
  CHECK_THROWS_AS(est.record_sample(-0.1), std::invalid_argument);
}

TEST_CASE("abra backoff anchors and midpoint") {
  // Bounds start at 0.1 / 0.6 and only widen, so a single in-range sample
  // leaves them untouched.
  RttEstimator low;
  low.record_sample(0.1);
  CHECK(low.min_srtt() == 0.1);
  CHECK(low.max_srtt() == 0.6);
  CHECK(low.abra_backoff() == 1.0);

  RttEstimator high;
  high.record_sample(0.6);
  CHECK(high.abra_backoff() == 2.0);

  RttEstimator mid;
  mid.record_sample(0.35);
  CHECK(mid.abra_backoff() == doctest::Approx(1.5).epsilon(1e-12));
}

TEST_CASE("abra backoff degenerate cases fall back to doubling") {
  RttEstimator none;  // no sample yet
  CHECK(none.abra_backoff() == 2.0);

  EstimatorConfig cfg;
  cfg.min_srtt_init = 0.3;
  cfg.max_srtt_init = 0.3;
  RttEstimator degenerate(cfg);
  degenerate.record_sample(0.3);
  CHECK(degenerate.abra_backoff() == 2.0);
}

TEST_CASE("abra backoff stays within [1, 2] over random histories") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 2000; ++trial) {
    RttEstimator est;
    int n = 1 + static_cast<int>(rng() % 30);
    for (int i = 0; i < n; ++i) {
      double r = 0.001 + (rng() % 2000) / 1000.0;
      est.record_sample(r);
      double b = est.abra_backoff();
      CHECK(b >= 1.0);
      CHECK(b <= 2.0);
      CHECK(est.min_srtt() <= est.last_srtt());
      CHECK(est.last_srtt() <= est.max_srtt());
    }
  }
}

TEST_CASE("srtt bounds only widen") {
  std::mt19937_64 rng(12);
  RttEstimator est;
  double prev_min = est.min_srtt();
  double prev_max = est.max_srtt();
  for (int i = 0; i < 500; ++i) {
    est.record_sample(0.001 + (rng() % 3000) / 1000.0);
    CHECK(est.min_srtt() <= prev_min);
    CHECK(est.max_srtt() >= prev_max);
    prev_min = est.min_srtt();
    prev_max = est.max_srtt();
  }
}

TEST_CASE("expiry inflates rto per policy") {
  RttEstimator exp_est;
  exp_est.record_sample(0.2);  // rto 0.6
  exp_est.on_timer_expiry(BackoffPolicy::kExponential, 8192, 4096);
  CHECK(exp_est.rto() == doctest::Approx(1.2).epsilon(1e-12));
  exp_est.on_timer_expiry(BackoffPolicy::kExponential, 8192, 4096);
  CHECK(exp_est.rto() == doctest::Approx(2.4).epsilon(1e-12));
  CHECK(exp_est.consecutive_backoffs() == 2);

  // backoff 1.5 at the midpoint of the initial bounds: 0.6 * 1.5 = 0.9.
  RttEstimator abra;
  abra.record_sample(0.35);
  double rto0 = abra.rto();
  abra.on_timer_expiry(BackoffPolicy::kAbra, 1, 1);
  CHECK(abra.rto() == doctest::Approx(1.5 * rto0).epsilon(1e-12));

  // A multiplier of one leaves the timeout alone.
  RttEstimator flat;
  flat.record_sample(0.1);
  double before = flat.rto();
  flat.on_timer_expiry(BackoffPolicy::kAbra, 1, 1);
  CHECK(flat.rto() == before);
}

TEST_CASE("a fresh sample reclaims the timeout from backoff") {
  RttEstimator est;
  est.record_sample(0.2);  // rto 0.6
  est.on_timer_expiry(BackoffPolicy::kExponential, 1, 1);
  CHECK(est.rto() == doctest::Approx(1.2));
  // srtt stays 0.2, rttd decays to 0.075: rto = 0.2 + 0.3.
  est.record_sample(0.2);
  CHECK(est.rto() == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("expiry snapshots the sender state until the next ack") {
  RttEstimator est;
  est.record_sample(0.25);
  CHECK(!est.saved_snapshot().has_value());
  est.on_timer_expiry(BackoffPolicy::kExponential, 8192, 4096);
  REQUIRE(est.saved_snapshot().has_value());
  CHECK(est.saved_snapshot()->cwnd == 8192);
  CHECK(est.saved_snapshot()->ssthresh == 4096);
  CHECK(est.saved_snapshot()->srtt == doctest::Approx(0.25));

  // Later expiries of the same episode keep the first capture.
  est.on_timer_expiry(BackoffPolicy::kExponential, 512, 1024);
  CHECK(est.saved_snapshot()->cwnd == 8192);

  auto snap = est.reset_backoff_on_ack();
  REQUIRE(snap.has_value());
  CHECK(snap->cwnd == 8192);
  CHECK(est.consecutive_backoffs() == 0);
  CHECK(!est.saved_snapshot().has_value());

  // No outstanding backoff: reset is a no-op that returns nothing.
  CHECK(!est.reset_backoff_on_ack().has_value());
}

TEST_CASE("abra never waits longer than doubling across consecutive expiries") {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 500; ++trial) {
    RttEstimator a;
    RttEstimator e;
    int n = 1 + static_cast<int>(rng() % 20);
    bool any_small = false;
    for (int i = 0; i < n; ++i) {
      double r = 0.001 + (rng() % 2000) / 1000.0;
      a.record_sample(r);
      e.record_sample(r);
    }
    int expiries = 1 + static_cast<int>(rng() % 6);
    for (int k = 0; k < expiries; ++k) {
      if (a.abra_backoff() < 2.0) any_small = true;
      a.on_timer_expiry(BackoffPolicy::kAbra, 1, 1);
      e.on_timer_expiry(BackoffPolicy::kExponential, 1, 1);
      CHECK(a.rto() <= e.rto());
    }
    if (any_small && e.rto() < e.config().rto_ceiling) CHECK(a.rto() < e.rto());
  }
}

TEST_CASE("rto never leaves its bounds") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 300; ++trial) {
    RttEstimator est;
    for (int i = 0; i < 60; ++i) {
      if (rng() % 3 == 0) {
        est.on_timer_expiry(rng() % 2 ? BackoffPolicy::kAbra : BackoffPolicy::kExponential,
                            1, 1);
      } else {
        est.record_sample(1e-4 + (rng() % 100000) / 1000.0);
      }
      CHECK(est.rto() >= est.config().rto_floor);
      CHECK(est.rto() <= est.config().rto_ceiling);
    }
  }
}

TEST_CASE("estimator matches the high-precision oracle") {
  std::mt19937_64 rng(2024);
  for (int seq = 0; seq < 200; ++seq) {
    RttEstimator est;
    rtoref::Oracle oracle;
    int n = 1 + static_cast<int>(rng() % 100);
    for (int i = 0; i < n; ++i) {
      double r = 0.001 + (rng() % 1999000) * 1e-6;  // [1 ms, 2 s]
      est.record_sample(r);
      oracle.sample(r);
      CHECK(rtoref::rel_err(est.srtt(), oracle.srtt) <= 1e-9);
      CHECK(rtoref::rel_err(est.rttd(), oracle.rttd) <= 1e-9);
      CHECK(rtoref::rel_err(est.rto(), oracle.rto()) <= 1e-9);
    }
  }
}
