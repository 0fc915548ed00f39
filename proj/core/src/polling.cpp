#include "a2psim/polling.hpp"

#include <algorithm>
#include <stdexcept>

namespace a2psim {

PollSelection select_poll_set(std::span<const NodeId> list, std::size_t cursor, int m) {
  if (m < 1) throw std::invalid_argument("select_poll_set: m must be >= 1");
  PollSelection out;
  out.cursor = cursor;
  if (list.empty()) return out;
  const std::size_t n = list.size();
  const std::size_t count = std::min(n, static_cast<std::size_t>(m));
  const std::size_t start = cursor % n;
  out.stas.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.stas.push_back(list[(start + i) % n]);
  out.cursor = (start + count) % n;
  return out;
}

bool PollingList::upsert(NodeId sta, SimTime expiry) {
  if (PollingEntry* e = find_mut(sta)) {
    e->expiry = expiry;
    return false;
  }
  entries_.push_back(PollingEntry{sta, expiry, 0, std::nullopt});
  return true;
}

const PollingEntry* PollingList::find(NodeId sta) const {
  auto it = std::find_if(entries_.begin(), entries_.end(), [sta](const PollingEntry& e) { return e.sta == sta; });
  return it == entries_.end() ? nullptr : &*it;
}

PollingEntry* PollingList::find_mut(NodeId sta) {
  auto it = std::find_if(entries_.begin(), entries_.end(), [sta](const PollingEntry& e) { return e.sta == sta; });
  return it == entries_.end() ? nullptr : &*it;
}

std::vector<NodeId> PollingList::ids() const {
  std::vector<NodeId> out;
  out.reserve(entries_.size());
  for (const auto& e : entries_) out.push_back(e.sta);
  return out;
}

PollSelection PollingList::peek(int m) const {
  const auto list = ids();
  return select_poll_set(list, cursor_, m);
}

void PollingList::mark_polled(NodeId sta, SimTime at, std::int64_t reported_bytes) {
  if (PollingEntry* e = find_mut(sta)) {
    e->last_polled = at;
    e->last_reported_bytes = reported_bytes;
  }
}

void PollingList::reset_expiry(NodeId sta, SimTime expiry) {
  if (PollingEntry* e = find_mut(sta)) e->expiry = expiry;
}

std::vector<NodeId> PollingList::remove_expired(SimTime now, RemovalPolicy policy) {
  std::vector<NodeId> removed;
  std::vector<PollingEntry> kept;
  kept.reserve(entries_.size());
  std::size_t cursor = cursor_;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    const PollingEntry& e = entries_[i];
    bool remove = e.expiry <= now;
    if (remove && policy == RemovalPolicy::AfterPostExpiryPoll) {
      remove = e.last_polled.has_value() && *e.last_polled >= e.expiry && e.last_reported_bytes == 0;
    }
    if (remove) {
      removed.push_back(e.sta);
      if (i < cursor_) --cursor;
    } else {
      kept.push_back(e);
    }
  }
  entries_ = std::move(kept);
  cursor_ = entries_.empty() ? 0 : cursor % entries_.size();
  return removed;
}

bool ari_gate(SimTime last_access, SimTime now, bool dl_enqueued, SimTime ari) {
  if (now < last_access) throw std::logic_error("ari_gate: now before last access");
  return dl_enqueued || now - last_access >= ari;
}

ExchangePlan plan_exchange(const ApState& ap, int max_rus) {
  ExchangePlan plan;
  plan.new_cursor = ap.polling_list.cursor();
  if (ap.next_exchange == ExchangeKind::Dl && !ap.dl_queue.empty()) {
    plan.action = ExchangePlan::Action::Broadcast;
    return plan;
  }
  if (ap.polling_list.empty()) {
    plan.action = ExchangePlan::Action::Release;
    return plan;
  }
  PollSelection sel = ap.polling_list.peek(max_rus);
  plan.action = ExchangePlan::Action::UlPoll;
  plan.poll_set = std::move(sel.stas);
  plan.new_cursor = sel.cursor;
  return plan;
}

void commit_exchange(ApState& ap, const ExchangePlan& plan, SimTime now) {
  ap.last_access = now;
  switch (plan.action) {
    case ExchangePlan::Action::Broadcast:
      ap.dl_queue.pop_front();
      ap.next_exchange = ExchangeKind::Ul;
      break;
    case ExchangePlan::Action::UlPoll:
      ap.polling_list.set_cursor(plan.new_cursor);
      ap.next_exchange = ExchangeKind::Dl;
      break;
    case ExchangePlan::Action::Release:
      // Nothing to poll: give the downlink the next turn.
      ap.next_exchange = ExchangeKind::Dl;
      break;
  }
}

ExchangePlan ap_on_channel_won(ApState& ap, SimTime now, int max_rus) {
  ExchangePlan plan = plan_exchange(ap, max_rus);
  commit_exchange(ap, plan, now);
  return plan;
}

bool ap_handle_edca_ul(ApState& ap, NodeId sta, SimTime now) {
  return ap.polling_list.upsert(sta, now + ap.mu_edca_timer);
}

std::vector<NodeId> ap_after_ul_exchange(ApState& ap, const UlExchangeOutcome& outcome, SimTime now,
                                         RemovalPolicy policy) {
  for (std::size_t i = 0; i < outcome.polled.size(); ++i) {
    const std::int64_t bytes = i < outcome.reported_bytes.size() ? outcome.reported_bytes[i] : 0;
    ap.polling_list.mark_polled(outcome.polled[i], outcome.start, bytes);
  }
  for (NodeId sta : outcome.delivered) ap.polling_list.reset_expiry(sta, now + ap.mu_edca_timer);
  return ap.polling_list.remove_expired(now, policy);
}

}  // namespace a2psim
