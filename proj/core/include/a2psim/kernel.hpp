#pragma once

#include <cstdint>
#include <functional>
#include <queue>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "a2psim/sim_time.hpp"
#include "a2psim/trace.hpp"

namespace a2psim {

class EventHandle {
 public:
  constexpr EventHandle() = default;
  constexpr bool valid() const { return id_ != 0; }
  constexpr std::uint64_t id() const { return id_; }
  constexpr auto operator<=>(const EventHandle&) const = default;

 private:
  friend class Kernel;
  constexpr explicit EventHandle(std::uint64_t id) : id_(id) {}
  std::uint64_t id_ = 0;
};

// Single-threaded discrete-event engine. Events with equal fire times are
// delivered in insertion order.
class Kernel {
 public:
  using Action = std::function<void()>;

  SimTime now() const { return now_; }

  // Scheduling in the past is a programming error and throws std::logic_error.
  EventHandle schedule(SimTime fire_at, Action action, std::string_view kind = "event", NodeId node = kNoNode);
  EventHandle schedule_in(SimTime delay, Action action, std::string_view kind = "event", NodeId node = kNoNode) {
    return schedule(now_ + delay, std::move(action), kind, node);
  }

  // True if the event was still pending.
  bool cancel(EventHandle handle);
  bool pending(EventHandle handle) const { return handle.valid() && live_.contains(handle.id()); }

  // Delivers every event with fire_at <= t_end and leaves the clock at t_end.
  SimTime run_until(SimTime t_end);

  std::size_t pending_count() const { return live_.size(); }
  std::uint64_t delivered_count() const { return delivered_; }

  Trace& trace() { return trace_; }

 private:
  struct Entry {
    Action action;
    std::string_view kind;
    NodeId node;
  };
  struct Key {
    SimTime fire_at;
    std::uint64_t seq;
    bool operator>(const Key& o) const {
      return fire_at != o.fire_at ? fire_at > o.fire_at : seq > o.seq;
    }
  };

  SimTime now_{};
  std::uint64_t next_seq_ = 1;
  std::uint64_t delivered_ = 0;
  std::priority_queue<Key, std::vector<Key>, std::greater<>> queue_;
  std::unordered_map<std::uint64_t, Entry> live_;
  Trace trace_;
};

}  // namespace a2psim
