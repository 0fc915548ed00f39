#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "a2psim/kernel.hpp"
#include "a2psim/rng.hpp"
#include "a2psim/sim_time.hpp"

namespace a2psim {

// Teleconference audio stream parameters.
struct AudioParams {
  SimTime interval = SimTime::from_ms(5);    // window length and uplink delay budget
  SimTime gen_window = SimTime::from_ms(1);  // leading part of the window in which a packet is generated
  std::int64_t ul_samples = 240;
  std::int64_t ul_resolution_bits = 24;
  std::int64_t dl_samples = 240;
  std::int64_t dl_resolution_bits = 16;
  std::int64_t header_bits = 160;

  std::int64_t ul_packet_bytes() const { return (ul_samples * ul_resolution_bits + header_bits) / 8; }
  std::int64_t dl_packet_bytes() const { return (dl_samples * dl_resolution_bits + header_bits) / 8; }
  SimTime delay_budget() const { return interval; }
  void validate() const;
};

// On/off durations: exponential with the given mean, clipped at `bound`.
struct OnOffParams {
  double mean_s = 10.0;
  double bound_s = 25.0;
};

SimTime sample_bounded_exp(RngStream& rng, double mean_s, double bound_s);

struct OnInterval {
  SimTime on;
  SimTime off;  // SimTime::max() when the stream never stops
};

class OnOffSchedule {
 public:
  static OnOffSchedule never() { return OnOffSchedule{}; }
  static OnOffSchedule always_on(SimTime from = {});
  // Intervals must be non-empty, ordered and non-overlapping.
  static OnOffSchedule from_intervals(std::vector<OnInterval> intervals);
  // Starts OFF at t=0; alternates bounded-exponential off and on durations
  // until `horizon` is covered.
  static OnOffSchedule sample(RngStream& rng, const OnOffParams& params, SimTime horizon);

  bool is_on(SimTime t) const { return period_at(t).has_value(); }
  // Index of the on-interval containing `t`.
  std::optional<std::size_t> period_at(SimTime t) const;
  std::span<const OnInterval> intervals() const { return intervals_; }
  // Every drawn duration (off, on, off, ...), for inspection.
  std::span<const SimTime> sampled_durations() const { return durations_; }

 private:
  std::vector<OnInterval> intervals_;
  std::vector<SimTime> durations_;
};

enum class StaRole { Idle, Initial, Joining };

// STAs are numbered 1..n_total; the AP is node 0.
struct Topology {
  int n_total = 0;
  std::vector<NodeId> initial;
  std::vector<NodeId> joining;
  std::vector<OnOffSchedule> schedules;  // indexed by NodeId, slot 0 unused

  StaRole role(NodeId sta) const;
  const OnOffSchedule& schedule(NodeId sta) const { return schedules.at(static_cast<std::size_t>(sta)); }
  int active_count() const { return static_cast<int>(initial.size() + joining.size()); }
  std::vector<NodeId> ever_active() const;
};

// Picks disjoint random initial and joining sets. Initial STAs stream for the
// whole run; joining STAs follow sampled on/off schedules.
Topology build_topology(RngStream& rng, int n_total, int n_initial, int n_joining, SimTime horizon,
                        const OnOffParams& on_off);

enum class Disposition { InFlight, DeliveredOnTime, Outdated, DroppedCollision };

std::string_view to_string(Disposition d);

struct UlPacket {
  std::uint64_t id = 0;
  NodeId sta = kNoNode;
  std::int64_t window = 0;
  SimTime gen_time;
  std::int64_t size_bytes = 0;
  Disposition disposition = Disposition::InFlight;
  std::optional<SimTime> ap_rx;
  std::size_t on_period = 0;
  bool first_of_period = false;
};

// One packet at a uniform instant in [kX, kX + B), or nothing if the stream
// is off at that instant. Always consumes one draw from `rng`.
std::optional<UlPacket> generate_ul(NodeId sta, std::int64_t window, const OnOffSchedule& schedule,
                                    const AudioParams& audio, RngStream& rng);

Disposition classify_ul(const UlPacket& pkt, SimTime ap_rx, SimTime budget);

// The conferencing server, co-located with the AP. Emits one mixed downlink
// packet per window once every expected uplink packet arrived on time, or
// when the delay budget ends, whichever comes first.
class ServerMixer {
 public:
  using DlReady = std::function<void(std::int64_t window, SimTime at)>;

  ServerMixer(Kernel& kernel, SimTime budget, DlReady on_ready);

  // `expected` are the STAs generating in window k.
  void open_window(std::int64_t window, SimTime window_start, std::vector<NodeId> expected);
  void on_ul_arrival(NodeId sta, std::int64_t window, bool on_time);
  std::uint64_t dl_generated() const { return dl_generated_; }

 private:
  struct Pending {
    std::vector<NodeId> waiting;
    EventHandle deadline;
  };
  void fire(std::int64_t window);

  Kernel& kernel_;
  SimTime budget_;
  DlReady on_ready_;
  std::vector<std::pair<std::int64_t, Pending>> open_;
  std::uint64_t dl_generated_ = 0;
};

// Opens a window every X, draws each streaming STA's generation instant and
// hands packets to `on_generate` at that instant.
class TrafficDriver {
 public:
  using Generate = std::function<void(UlPacket)>;

  TrafficDriver(Kernel& kernel, const Topology& topology, AudioParams audio, RngStream& rng, ServerMixer& server,
                Generate on_generate);

  // Schedules windows starting before `horizon`.
  void start(SimTime horizon);
  std::uint64_t generated() const { return next_id_; }

 private:
  void open_window(std::int64_t k);

  Kernel& kernel_;
  const Topology& topology_;
  AudioParams audio_;
  RngStream& rng_;
  ServerMixer& server_;
  Generate on_generate_;
  std::vector<NodeId> sources_;
  std::vector<std::optional<std::size_t>> last_period_;
  SimTime horizon_;
  std::uint64_t next_id_ = 0;
};

}  // namespace a2psim
