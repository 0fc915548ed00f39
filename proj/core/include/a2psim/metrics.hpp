#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "a2psim/sim_time.hpp"
#include "a2psim/traffic.hpp"

namespace a2psim {

struct DispositionCounts {
  std::int64_t generated = 0;
  std::int64_t on_time = 0;
  std::int64_t outdated = 0;
  std::int64_t dropped = 0;
  std::int64_t in_flight = 0;

  std::int64_t terminal() const { return on_time + outdated + dropped; }
  bool operator==(const DispositionCounts&) const = default;
};

// (Outdated + DroppedCollision) / packets with a terminal disposition.
// In-flight packets at the end of the run count in neither term.
double loss_ratio(const DispositionCounts& counts);

// Per-packet uplink ledger, indexed by packet id.
class PacketLedger {
 public:
  explicit PacketLedger(SimTime budget) : budget_(budget) {}

  void add(UlPacket pkt);
  const UlPacket& at(std::uint64_t id) const { return packets_.at(id); }
  // Records AP receipt and classifies against the delay budget.
  Disposition deliver(std::uint64_t id, SimTime ap_rx);
  void drop(std::uint64_t id);

  std::span<const UlPacket> packets() const { return packets_; }
  DispositionCounts counts() const;
  DispositionCounts counts_for(NodeId sta) const;

 private:
  SimTime budget_;
  std::vector<UlPacket> packets_;
};

struct DlReception {
  std::int64_t window = 0;
  SimTime enqueued;
  SimTime rx;
};

struct E2ESample {
  NodeId sta = kNoNode;
  std::int64_t window = 0;
  SimTime value;
};

// One sample per on-time uplink packet whose window's broadcast was received.
// The broadcast reaches every STA at the same instant.
std::vector<E2ESample> pair_e2e(std::span<const UlPacket> ledger, std::span<const DlReception> dl);

// Wake-up delay: from the generation of an on-period's first packet to the
// first AP receipt of any packet of that on-period.
class WakeupTracker {
 public:
  void on_generated(const UlPacket& pkt);
  void on_ap_rx(const UlPacket& pkt, SimTime ap_rx);
  void record_wakeup(NodeId sta, SimTime on_time_gen, SimTime ap_rx);

  std::span<const SimTime> samples() const { return samples_; }

 private:
  struct Period {
    SimTime first_gen;
    bool sampled = false;
  };
  std::map<std::pair<NodeId, std::size_t>, Period> periods_;
  std::vector<SimTime> samples_;
};

struct BoxStats {
  double median = 0;
  double q1 = 0;
  double q3 = 0;
  double whisker_low = 0;
  double whisker_high = 0;
  std::vector<double> outliers;
};

// Linear-interpolation quantile (q in [0, 1]) of sorted data.
double quantile_sorted(std::span<const double> sorted, double q);

// Tukey box: whiskers reach the most extreme samples within 1.5 IQR of the
// quartiles. nullopt on empty input.
std::optional<BoxStats> box_stats(std::span<const double> samples);

double mean_of(std::span<const double> v);

}  // namespace a2psim
