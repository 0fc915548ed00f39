#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "a2psim/metrics.hpp"
#include "a2psim/network.hpp"
#include "a2psim/scheme.hpp"

namespace a2psim {

// E2E box statistics in integer nanoseconds (rounded to nearest).
struct E2EStats {
  std::int64_t count = 0;
  std::int64_t median = 0;
  std::int64_t q1 = 0;
  std::int64_t q3 = 0;
  std::int64_t whisker_low = 0;
  std::int64_t whisker_high = 0;
  std::int64_t max = 0;
  std::int64_t outliers = 0;
  std::int64_t mean = 0;

  bool operator==(const E2EStats&) const = default;
};

struct RunSummary {
  Scheme scheme = Scheme::A2P;
  int active_count = 0;
  std::uint64_t seed = 0;
  std::uint64_t config_hash = 0;
  DispositionCounts counts;
  double loss_ratio = 0.0;
  std::optional<E2EStats> e2e;  // absent when no sample exists
  std::int64_t wakeup_count = 0;
  std::optional<std::int64_t> wakeup_mean;  // ns
  std::int64_t dl_generated = 0;
  std::int64_t dl_sent = 0;
  std::int64_t dl_lost = 0;
  std::int64_t ul_exchanges = 0;
  std::int64_t max_ul_exchange = 0;  // ns
  std::int64_t trigger_frames = 0;
  std::int64_t collisions = 0;

  bool operator==(const RunSummary&) const = default;
};

RunSummary summarize(const RunResult& result);

// Seed statistics of one (scheme, active count) cell.
struct CellAggregate {
  Scheme scheme = Scheme::A2P;
  int active_count = 0;
  int runs = 0;
  double loss_mean = 0.0;
  double loss_median = 0.0;
  double loss_p99 = 0.0;
  std::optional<double> e2e_median_mean;
  std::optional<double> e2e_max_mean;
  std::optional<double> wakeup_mean_mean;
};

// Groups by (scheme, active count) in the order cells first appear.
std::vector<CellAggregate> aggregate(std::span<const RunSummary> rows);

}  // namespace a2psim
