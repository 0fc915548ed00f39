#pragma once

#include <fstream>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "a2psim/summary.hpp"

namespace a2psim {

inline constexpr std::string_view kSummaryVersionLine = "# a2psim-summary v1";
inline constexpr std::string_view kAggregateVersionLine = "# a2psim-aggregate v1";
inline constexpr std::string_view kPacketsVersionLine = "# a2psim-packets v1";

std::string summary_header();
// One CSV line without the trailing newline. Times are integer ns; absent
// metrics are empty fields.
std::string format_summary_row(const RunSummary& row);
// Throws std::runtime_error on malformed input.
RunSummary parse_summary_row(std::string_view line);
// Reads a whole summary.csv (version line, header, rows).
std::vector<RunSummary> read_summary_csv(std::istream& in);

// Appends rows to summary.csv, each written and flushed as one unit so an
// interrupted sweep leaves a parseable file.
class SummaryWriter {
 public:
  explicit SummaryWriter(const std::string& path);
  void append(const RunSummary& row);

 private:
  std::ofstream out_;
};

void write_aggregate_csv(std::ostream& out, std::span<const CellAggregate> cells);
void write_packets_csv(std::ostream& out, std::span<const UlPacket> packets);

}  // namespace a2psim
