#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "a2psim/kernel.hpp"
#include "a2psim/phy.hpp"
#include "a2psim/rng.hpp"
#include "a2psim/sim_time.hpp"

namespace a2psim {

struct EdcaParams {
  int aifsn = 2;
  int cw_min = 3;
  int cw_max = 7;
  int retry_limit = 7;

  SimTime aifs(const PhyProfile& phy) const { return phy.sifs + phy.slot * aifsn; }
  // `prefix` is prepended to the key reported in ConfigError.
  void validate(std::string_view prefix = {}) const;
};

// What a contention winner intends to send first.
struct TxIntent {
  SimTime first_frame;
  // False for broadcast frames: no response is awaited, so a collision does
  // not grow the contention window.
  bool expects_response = true;
};

class ChannelUser {
 public:
  virtual ~ChannelUser() = default;
  // Backoff reached zero. Returning nullopt releases the grant untransmitted.
  virtual std::optional<TxIntent> on_grant(SimTime now) = 0;
  // Sole transmitter: the exchange starts now. Returns how long the medium
  // stays reserved from `now`; the user may extend it with reserve_until().
  virtual SimTime on_exchange(SimTime now) = 0;
  // The opening frame overlapped another one. Delivered when the medium
  // clears. `dropped` is set once the retry limit is exhausted.
  virtual void on_collision(SimTime now, bool dropped) = 0;
};

enum class TransmissionResult { Success, Collision };

struct BusyInterval {
  SimTime start;
  SimTime end;
  TransmissionResult result;
  std::vector<NodeId> initiators;
};

struct ChannelStats {
  std::uint64_t requests = 0;
  std::uint64_t grants = 0;
  std::uint64_t releases = 0;
  std::uint64_t successes = 0;
  std::uint64_t collisions = 0;
  std::uint64_t drops = 0;
};

// One collision domain. Contention follows EDCA: a node waits for the medium
// to be idle for AIFS, then counts down its backoff in slots, freezing while
// the medium is busy. Slot boundaries are measured from the end of AIFS, so
// nodes whose counters expire in the same slot collide.
class Channel {
 public:
  // `collision_hold` is the extra time the medium stays unusable after the
  // longest colliding frame (the response timeout window).
  Channel(Kernel& kernel, PhyProfile phy, RngStream& backoff_rng, SimTime collision_hold);

  Channel(const Channel&) = delete;
  Channel& operator=(const Channel&) = delete;

  // Draws a backoff in [0, cw] and enters contention. Requesting while
  // already contending throws std::logic_error.
  void request_access(NodeId node, const EdcaParams& params, ChannelUser& user);
  bool withdraw(NodeId node);
  bool contending(NodeId node) const { return contenders_.contains(node); }

  // Marks the medium busy for `duration` from now on behalf of the given
  // initiators. Throws std::logic_error on an empty set or a busy medium.
  TransmissionResult occupy(std::span<const NodeId> initiators, SimTime duration);
  // Extends the current reservation (never shortens it).
  void reserve_until(SimTime until);
  // Runs `action` exactly `gap` after `after`, keeping the medium reserved
  // through the gap so no contender can cut into the sequence.
  EventHandle schedule_response(SimTime after, SimTime gap, Kernel::Action action, std::string_view kind = "response",
                                NodeId node = kNoNode);

  SimTime busy_until() const { return busy_until_; }
  bool idle() const { return kernel_.now() >= busy_until_; }

  int cw(NodeId node) const;
  int retries(NodeId node) const;
  // Forget retry state, e.g. when the pending frame left by another path.
  void reset_backoff(NodeId node);
  std::optional<std::int64_t> remaining_slots(NodeId node) const;
  std::optional<SimTime> grant_time(NodeId node) const;

  const ChannelStats& stats() const { return stats_; }
  const PhyProfile& phy() const { return phy_; }
  void log_intervals(std::vector<BusyInterval>* sink) { intervals_ = sink; }

 private:
  struct Contender {
    ChannelUser* user;
    EdcaParams params;
    SimTime requested_at;
    std::int64_t remaining;
  };
  struct BackoffState {
    int cw = -1;  // -1: not yet initialised from params
    int retries = 0;
  };

  SimTime countdown_start(const Contender& c) const;
  SimTime grant_of(const Contender& c) const { return countdown_start(c) + phy_.slot * c.remaining; }
  void reschedule();
  void on_grant_event();
  void freeze_all(SimTime now);
  BackoffState& backoff(NodeId node, const EdcaParams& params);

  Kernel& kernel_;
  PhyProfile phy_;
  RngStream& rng_;
  SimTime collision_hold_;
  SimTime busy_until_{};
  std::map<NodeId, Contender> contenders_;
  std::map<NodeId, BackoffState> backoff_;
  EventHandle grant_event_;
  ChannelStats stats_;
  std::vector<BusyInterval>* intervals_ = nullptr;
};

}  // namespace a2psim
