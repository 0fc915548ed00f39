#include "a2psim/trace.hpp"

#include <ostream>

namespace a2psim {

std::string format_trace_line(const TraceRecord& r) {
  std::string line = std::to_string(r.at.ns());
  line += ' ';
  line += r.kind;
  line += ' ';
  line += std::to_string(r.node);
  if (!r.detail.empty()) {
    line += ' ';
    line += r.detail;
  }
  return line;
}

void Trace::record_into(std::vector<TraceRecord>& out) {
  add_sink([&out](const TraceRecord& r) { out.push_back(r); });
}

void Trace::write_to(std::ostream& os) {
  add_sink([&os](const TraceRecord& r) { os << format_trace_line(r) << '\n'; });
}

void Trace::emit(TraceLevel at, SimTime t, std::string_view kind, NodeId node, std::string detail) {
  if (!enabled(at)) return;
  const TraceRecord r{t, std::string(kind), node, std::move(detail)};
  for (const auto& sink : sinks_) sink(r);
}

}  // namespace a2psim
