#include "abrasim/route.hpp"

#include <stdexcept>
#include <vector>

#include "doctest.h"

using namespace abrasim;

TEST_CASE("route down drops everything without consuming randomness") {
  RouteParams p;
  p.base_delay = 0.05;
  p.random_loss_prob = 0.5;
  RouteModel m(p, 1);
  m.set_down();
  for (int i = 0; i < 10; ++i)
    CHECK(m.transmit(0, false, i, 0).kind == LinkDecision::kDropRouteDown);
  m.set_up();
  // Loss fates are keyed by (direction, seq, attempt), so transmissions made
  // while the route was down change nothing for later ones.
  RouteModel fresh(p, 1);
  for (int i = 0; i < 200; ++i)
    CHECK(m.transmit(0, false, i, 1).kind == fresh.transmit(0, false, i, 1).kind);
}

TEST_CASE("loss probability extremes") {
  RouteParams p;
  p.base_delay = 0.05;
  p.random_loss_prob = 0.0;
  RouteModel none(p, 7);
  auto d = none.transmit(1000, false, 0, 0);
  CHECK(d.kind == LinkDecision::kDeliver);
  CHECK(d.deliver_at == 1000 + 50000);

  p.random_loss_prob = 1.0;
  RouteModel all(p, 7);
  for (int i = 0; i < 20; ++i)
    CHECK(all.transmit(0, false, i, 0).kind == LinkDecision::kDropRandom);
}

TEST_CASE("same seed gives the same outage sample path") {
  RouteParams p;
  p.outage_rate = 0.5;
  p.outage_duration_min = 0.2;
  p.outage_duration_max = 1.0;
  auto walk = [&p](std::uint64_t seed) {
    RouteModel m(p, seed);
    std::vector<TimeUs> times;
    auto t = m.first_outage_start();
    REQUIRE(t.has_value());
    for (int i = 0; i < 20 && t; ++i) {
      times.push_back(*t);
      TimeUs up = m.outage_end(*t);
      times.push_back(up);
      t = m.next_outage_start(up);
    }
    return times;
  };
  auto a = walk(42);
  auto b = walk(42);
  auto c = walk(43);
  CHECK(a == b);
  CHECK(a != c);
  for (std::size_t i = 1; i < a.size(); ++i) CHECK(a[i] > a[i - 1]);
}

TEST_CASE("zero outage rate never schedules an outage") {
  RouteParams p;
  RouteModel m(p, 5);
  CHECK(!m.first_outage_start().has_value());
}

TEST_CASE("scripted outages and drops are taken verbatim") {
  RouteParams p;
  p.scripted_outages = {{0.32, 0.95}, {5.0, 1.0}};
  p.scripted_drops = {2, 5};
  RouteModel m(p, 9);

  auto first = m.first_outage_start();
  REQUIRE(first.has_value());
  CHECK(*first == 320000);
  CHECK(m.outage_end(*first) == 320000 + 950000);
  auto second = m.next_outage_start(1270000);
  REQUIRE(second.has_value());
  CHECK(*second == 5000000);
  CHECK(!m.next_outage_start(6000000).has_value());

  CHECK(m.transmit(0, false, 0, 0).kind == LinkDecision::kDeliver);    // #1
  CHECK(m.transmit(0, false, 1, 0).kind == LinkDecision::kDropRandom); // #2
  CHECK(m.transmit(0, false, 2, 0).kind == LinkDecision::kDeliver);    // #3
  CHECK(m.transmit(0, false, 3, 0).kind == LinkDecision::kDeliver);    // #4
  CHECK(m.transmit(0, true, 0, 0).kind == LinkDecision::kDropRandom);  // #5
  CHECK(m.transmit(0, true, 1, 0).kind == LinkDecision::kDeliver);     // #6
}

TEST_CASE("jitter widens delivery times deterministically") {
  RouteParams p;
  p.base_delay = 0.05;
  p.delay_jitter = 0.01;
  RouteModel a(p, 3);
  RouteModel b(p, 3);
  for (int i = 0; i < 100; ++i) {
    auto da = a.transmit(0, false, i, 0);
    auto db = b.transmit(0, false, i, 0);
    CHECK(da.deliver_at == db.deliver_at);
    CHECK(da.deliver_at >= 50000);
    CHECK(da.deliver_at <= 60000);  // rounding can land exactly on the edge
  }
}

TEST_CASE("bad route parameters are rejected") {
  RouteParams p;
  p.base_delay = 0;
  CHECK_THROWS_AS(validate(p), std::invalid_argument);
  p = RouteParams{};
  p.random_loss_prob = 1.5;
  CHECK_THROWS_AS(validate(p), std::invalid_argument);
  p = RouteParams{};
  p.outage_rate = 0.1;
  p.outage_duration_min = 2.0;
  p.outage_duration_max = 1.0;
  CHECK_THROWS_AS(validate(p), std::invalid_argument);
  p = RouteParams{};
  p.scripted_outages = {{1.0, 1.0}, {1.5, 1.0}};  // overlap
  CHECK_THROWS_AS(validate(p), std::invalid_argument);
  p = RouteParams{};
  p.scripted_drops = {3, 3};
  CHECK_THROWS_AS(validate(p), std::invalid_argument);
}
