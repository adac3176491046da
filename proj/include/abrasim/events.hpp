#ifndef ABRASIM_EVENTS_HPP
#define ABRASIM_EVENTS_HPP

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "abrasim/units.hpp"

namespace abrasim {

enum class EventKind {
  kAppDataReady,
  kSegmentArrival,
  kAckArrival,
  kRtoExpiry,
  kRouteDown,
  kRouteUp,
  kRunEnd,
};

struct SimEvent {
  TimeUs time = 0;
  std::uint64_t order = 0;  // insertion counter; breaks equal-time ties
  EventKind kind = EventKind::kAppDataReady;
  SeqNo seq = 0;            // segment seq or cumulative ack value
  Bytes len = 0;
  bool retransmitted = false;
  std::uint64_t generation = 0;  // validity token for timer expiries
};

// Deterministic discrete-event engine: events dispatch in (time, order)
// lexicographic order, and the clock never moves backwards.  Built on a
// binary heap over a plain vector so the pending set stays inspectable.
class EventEngine {
 public:
  TimeUs now() const { return now_; }

  void schedule(SimEvent ev) {
    if (ev.time < now_) throw std::logic_error("event scheduled into the past");
    ev.order = next_order_++;
    heap_.push_back(ev);
    std::push_heap(heap_.begin(), heap_.end(), After{});
  }

  bool empty() const { return heap_.empty(); }

  // Dispatches every event with time <= t_end, in order, through fn.  fn
  // returning false stops the run at the current event's time; otherwise the
  // clock finishes at max(now, t_end).
  template <typename Fn>
  void run_until(TimeUs t_end, Fn&& fn) {
    if (t_end < now_) throw std::logic_error("run_until target in the past");
    while (!heap_.empty() && heap_.front().time <= t_end) {
      std::pop_heap(heap_.begin(), heap_.end(), After{});
      SimEvent ev = heap_.back();
      heap_.pop_back();
      now_ = ev.time;
      if (!fn(ev)) return;
    }
    now_ = std::max(now_, t_end);
  }

  // Events still pending; valid after a run for end-of-run accounting.
  const std::vector<SimEvent>& pending() const { return heap_; }

 private:
  struct After {
    bool operator()(const SimEvent& a, const SimEvent& b) const {
      if (a.time != b.time) return a.time > b.time;
      return a.order > b.order;
    }
  };

  std::vector<SimEvent> heap_;
  std::uint64_t next_order_ = 0;
  TimeUs now_ = 0;
};

}  // namespace abrasim

#endif  // ABRASIM_EVENTS_HPP
