#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "a2psim/sim_time.hpp"

namespace a2psim {

enum class TraceLevel : int {
  Off = 0,
  Protocol = 1,  // contention, exchanges, timer transitions
  Events = 2,    // additionally every kernel event delivery
};

struct TraceRecord {
  SimTime at;
  std::string kind;
  NodeId node = kNoNode;
  std::string detail;
};

// Line format: "<time_ns> <kind> <node> [detail]".
std::string format_trace_line(const TraceRecord& r);

class Trace {
 public:
  using Sink = std::function<void(const TraceRecord&)>;

  void set_level(TraceLevel level) { level_ = level; }
  TraceLevel level() const { return level_; }
  bool enabled(TraceLevel at) const {
    return level_ != TraceLevel::Off && static_cast<int>(at) <= static_cast<int>(level_) && !sinks_.empty();
  }

  void add_sink(Sink sink) { sinks_.push_back(std::move(sink)); }
  // Convenience sinks.
  void record_into(std::vector<TraceRecord>& out);
  void write_to(std::ostream& os);

  void emit(TraceLevel at, SimTime t, std::string_view kind, NodeId node, std::string detail = {});

 private:
  TraceLevel level_ = TraceLevel::Off;
  std::vector<Sink> sinks_;
};

}  // namespace a2psim
