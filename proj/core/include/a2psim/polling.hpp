#pragma once

#include <cstdint>
#include <deque>
#include <optional>
#include <span>
#include <vector>

#include "a2psim/sim_time.hpp"

namespace a2psim {

struct PollingEntry {
  NodeId sta = kNoNode;
  SimTime expiry;
  std::int64_t last_reported_bytes = 0;
  std::optional<SimTime> last_polled;
};

struct PollSelection {
  std::vector<NodeId> stas;
  std::size_t cursor = 0;
};

// Round robin: min(|list|, m) consecutive entries from `cursor`, wrapping.
// The returned cursor points past the last entry taken.
PollSelection select_poll_set(std::span<const NodeId> list, std::size_t cursor, int m);

// How entries whose timer ran out leave the list.
enum class RemovalPolicy {
  // Only once the STA was polled after its expiry and reported nothing.
  AfterPostExpiryPoll,
  // As soon as the timer runs out, polled or not.
  OnExpiry,
};

class PollingList {
 public:
  // Inserts at the tail, or resets the timer of an existing entry.
  // Returns true on insertion.
  bool upsert(NodeId sta, SimTime expiry);
  bool contains(NodeId sta) const { return find(sta) != nullptr; }
  const PollingEntry* find(NodeId sta) const;

  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  std::size_t cursor() const { return cursor_; }
  std::span<const PollingEntry> entries() const { return entries_; }
  std::vector<NodeId> ids() const;

  // Selection without side effects.
  PollSelection peek(int m) const;
  void set_cursor(std::size_t cursor) { cursor_ = entries_.empty() ? 0 : cursor % entries_.size(); }

  void mark_polled(NodeId sta, SimTime at, std::int64_t reported_bytes);
  void reset_expiry(NodeId sta, SimTime expiry);
  // Removes entries per `policy`; returns the removed STAs.
  std::vector<NodeId> remove_expired(SimTime now, RemovalPolicy policy);

 private:
  PollingEntry* find_mut(NodeId sta);

  std::vector<PollingEntry> entries_;
  std::size_t cursor_ = 0;
};

// True when the AP may contend: downlink is waiting, or one ARI has passed
// since it last obtained the channel.
bool ari_gate(SimTime last_access, SimTime now, bool dl_enqueued, SimTime ari);

enum class ExchangeKind { Ul, Dl };

struct DlFrame {
  std::int64_t window = 0;
  std::int64_t bytes = 0;
  SimTime enqueued;
};

struct ApState {
  PollingList polling_list;
  ExchangeKind next_exchange = ExchangeKind::Ul;
  SimTime last_access;
  std::deque<DlFrame> dl_queue;
  SimTime ari = SimTime::from_us(16);
  SimTime mu_edca_timer = SimTime::from_ms(40);
};

struct ExchangePlan {
  enum class Action { Broadcast, UlPoll, Release };
  Action action = Action::Release;
  std::vector<NodeId> poll_set;
  std::size_t new_cursor = 0;
};

// Decision taken when the AP wins the channel, without touching state.
// DL turn with nothing queued falls through to UL; UL turn with an empty
// list releases the channel.
ExchangePlan plan_exchange(const ApState& ap, int max_rus);
// Applies a plan: stamps last_access, moves the cursor, dequeues the
// broadcast and sets which exchange kind comes next.
void commit_exchange(ApState& ap, const ExchangePlan& plan, SimTime now);
// plan_exchange followed by commit_exchange.
ExchangePlan ap_on_channel_won(ApState& ap, SimTime now, int max_rus);

struct UlExchangeOutcome {
  SimTime start;
  SimTime end;
  std::vector<NodeId> polled;
  std::vector<std::int64_t> reported_bytes;  // parallel to `polled`
  std::vector<NodeId> delivered;             // STAs covered by the Multi-STA BA
};

// EDCA uplink data acknowledged: list the STA (or refresh its timer).
// Returns true if the STA was newly inserted.
bool ap_handle_edca_ul(ApState& ap, NodeId sta, SimTime now);

// Refreshes timers of STAs that delivered data, records the poll, then
// prunes expired entries per `policy`. Returns the removed STAs.
std::vector<NodeId> ap_after_ul_exchange(ApState& ap, const UlExchangeOutcome& outcome, SimTime now,
                                         RemovalPolicy policy);

}  // namespace a2psim
