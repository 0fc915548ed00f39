#include "a2psim/kernel.hpp"

#include <stdexcept>
#include <string>

namespace a2psim {

EventHandle Kernel::schedule(SimTime fire_at, Action action, std::string_view kind, NodeId node) {
  if (fire_at < now_) {
    throw std::logic_error("schedule in the past: " + std::to_string(fire_at.ns()) + " < now " +
                           std::to_string(now_.ns()));
  }
  const std::uint64_t seq = next_seq_++;
  queue_.push(Key{fire_at, seq});
  live_.emplace(seq, Entry{std::move(action), kind, node});
  return EventHandle{seq};
}

bool Kernel::cancel(EventHandle handle) {
  if (!handle.valid()) return false;
  return live_.erase(handle.id()) > 0;
}

SimTime Kernel::run_until(SimTime t_end) {
  if (t_end < now_) throw std::logic_error("run_until before current time");
  while (!queue_.empty()) {
    const Key top = queue_.top();
    if (top.fire_at > t_end) break;
    queue_.pop();
    auto it = live_.find(top.seq);
    if (it == live_.end()) continue;  // cancelled
    Entry entry = std::move(it->second);
    live_.erase(it);
    now_ = top.fire_at;
    ++delivered_;
    trace_.emit(TraceLevel::Events, now_, entry.kind, entry.node);
    entry.action();
  }
  now_ = t_end;
  return now_;
}

}  // namespace a2psim
