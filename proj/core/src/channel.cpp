#include "a2psim/channel.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace a2psim {

namespace {

bool is_pow2_minus_one(int v) { return v > 0 && ((v + 1) & v) == 0; }

std::string key(std::string_view prefix, const char* name) { return std::string(prefix) + name; }

}  // namespace

void EdcaParams::validate(std::string_view prefix) const {
  if (aifsn < 2) throw ConfigError(key(prefix, "aifsn"), "must be >= 2");
  if (!is_pow2_minus_one(cw_min)) throw ConfigError(key(prefix, "cw_min"), "must be 2^k - 1");
  if (!is_pow2_minus_one(cw_max)) throw ConfigError(key(prefix, "cw_max"), "must be 2^k - 1");
  if (cw_min > cw_max) throw ConfigError(key(prefix, "cw_min"), "must not exceed cw_max");
  if (retry_limit < 0) throw ConfigError(key(prefix, "retry_limit"), "must be non-negative");
}

Channel::Channel(Kernel& kernel, PhyProfile phy, RngStream& backoff_rng, SimTime collision_hold)
    : kernel_(kernel), phy_(phy), rng_(backoff_rng), collision_hold_(collision_hold) {}

Channel::BackoffState& Channel::backoff(NodeId node, const EdcaParams& params) {
  BackoffState& b = backoff_[node];
  if (b.cw < 0) b.cw = params.cw_min;
  return b;
}

void Channel::request_access(NodeId node, const EdcaParams& params, ChannelUser& user) {
  if (contenders_.contains(node)) {
    throw std::logic_error("node " + std::to_string(node) + " is already contending");
  }
  const BackoffState& b = backoff(node, params);
  const std::int64_t slots = rng_.uniform_int(0, b.cw);
  contenders_.emplace(node, Contender{&user, params, kernel_.now(), slots});
  ++stats_.requests;
  if (kernel_.trace().enabled(TraceLevel::Protocol)) {
    kernel_.trace().emit(TraceLevel::Protocol, kernel_.now(), "contend", node,
                         "cw=" + std::to_string(b.cw) + " backoff=" + std::to_string(slots));
  }
  reschedule();
}

bool Channel::withdraw(NodeId node) {
  if (contenders_.erase(node) == 0) return false;
  kernel_.trace().emit(TraceLevel::Protocol, kernel_.now(), "withdraw", node);
  reschedule();
  return true;
}

TransmissionResult Channel::occupy(std::span<const NodeId> initiators, SimTime duration) {
  if (initiators.empty()) throw std::logic_error("occupy with no participants");
  if (!idle()) throw std::logic_error("occupy while medium busy");
  const SimTime now = kernel_.now();
  busy_until_ = now + duration;
  const auto result = initiators.size() == 1 ? TransmissionResult::Success : TransmissionResult::Collision;
  if (intervals_ != nullptr) {
    intervals_->push_back(BusyInterval{now, busy_until_, result, {initiators.begin(), initiators.end()}});
  }
  reschedule();
  return result;
}

void Channel::reserve_until(SimTime until) {
  if (until <= busy_until_) return;
  busy_until_ = until;
  if (intervals_ != nullptr && !intervals_->empty()) {
    auto& last = intervals_->back();
    last.end = std::max(last.end, until);
  }
  reschedule();
}

EventHandle Channel::schedule_response(SimTime after, SimTime gap, Kernel::Action action, std::string_view kind,
                                       NodeId node) {
  reserve_until(after + gap);
  return kernel_.schedule(after + gap, std::move(action), kind, node);
}

int Channel::cw(NodeId node) const {
  auto it = backoff_.find(node);
  return it == backoff_.end() ? -1 : it->second.cw;
}

int Channel::retries(NodeId node) const {
  auto it = backoff_.find(node);
  return it == backoff_.end() ? 0 : it->second.retries;
}

void Channel::reset_backoff(NodeId node) { backoff_.erase(node); }

std::optional<std::int64_t> Channel::remaining_slots(NodeId node) const {
  auto it = contenders_.find(node);
  if (it == contenders_.end()) return std::nullopt;
  return it->second.remaining;
}

std::optional<SimTime> Channel::grant_time(NodeId node) const {
  auto it = contenders_.find(node);
  if (it == contenders_.end()) return std::nullopt;
  return grant_of(it->second);
}

SimTime Channel::countdown_start(const Contender& c) const {
  const SimTime aifs_end = busy_until_ + c.params.aifs(phy_);
  return align_up(c.requested_at, aifs_end, phy_.slot);
}

void Channel::reschedule() {
  kernel_.cancel(grant_event_);
  grant_event_ = {};
  if (contenders_.empty()) return;
  SimTime earliest = SimTime::max();
  for (const auto& [id, c] : contenders_) earliest = std::min(earliest, grant_of(c));
  if (earliest < kernel_.now()) throw std::logic_error("contention grant computed in the past");
  grant_event_ = kernel_.schedule(earliest, [this] { on_grant_event(); }, "grant");
}

void Channel::freeze_all(SimTime now) {
  for (auto& [id, c] : contenders_) {
    const SimTime start = countdown_start(c);
    if (now > start) {
      const std::int64_t elapsed = (now - start) / phy_.slot;
      c.remaining = std::max<std::int64_t>(0, c.remaining - elapsed);
    }
    c.requested_at = now;
  }
}

void Channel::on_grant_event() {
  grant_event_ = {};
  const SimTime now = kernel_.now();

  struct Winner {
    NodeId node;
    Contender c;
    TxIntent intent;
  };
  std::vector<Winner> transmitters;
  std::vector<NodeId> granted;
  for (const auto& [id, c] : contenders_) {
    if (grant_of(c) == now) granted.push_back(id);
  }
  for (NodeId id : granted) {
    Contender c = contenders_.at(id);
    contenders_.erase(id);
    ++stats_.grants;
    std::optional<TxIntent> intent = c.user->on_grant(now);
    if (!intent) {
      ++stats_.releases;
      kernel_.trace().emit(TraceLevel::Protocol, now, "release", id);
      continue;
    }
    transmitters.push_back(Winner{id, c, *intent});
  }
  if (transmitters.empty()) {
    reschedule();
    return;
  }

  freeze_all(now);

  if (transmitters.size() == 1) {
    Winner& w = transmitters.front();
    const NodeId ids[] = {w.node};
    kernel_.trace().emit(TraceLevel::Protocol, now, "grant", w.node);
    occupy(ids, w.intent.first_frame);
    BackoffState& b = backoff(w.node, w.c.params);
    b.cw = w.c.params.cw_min;
    b.retries = 0;
    ++stats_.successes;
    const SimTime hold = w.c.user->on_exchange(now);
    reserve_until(now + hold);
    return;
  }

  SimTime longest{};
  std::vector<NodeId> ids;
  for (const auto& w : transmitters) {
    longest = std::max(longest, w.intent.first_frame);
    ids.push_back(w.node);
  }
  ++stats_.collisions;
  if (kernel_.trace().enabled(TraceLevel::Protocol)) {
    std::string who;
    for (NodeId id : ids) who += (who.empty() ? "" : ",") + std::to_string(id);
    kernel_.trace().emit(TraceLevel::Protocol, now, "collision", kNoNode, who);
  }
  occupy(ids, longest + collision_hold_);
  const SimTime clear = busy_until_;
  for (auto& w : transmitters) {
    bool dropped = false;
    BackoffState& b = backoff(w.node, w.c.params);
    if (w.intent.expects_response) {
      ++b.retries;
      if (b.retries > w.c.params.retry_limit) {
        dropped = true;
        ++stats_.drops;
        b.cw = w.c.params.cw_min;
        b.retries = 0;
      } else {
        b.cw = std::min(2 * b.cw + 1, w.c.params.cw_max);
      }
    } else {
      b.cw = w.c.params.cw_min;
      b.retries = 0;
    }
    ChannelUser* user = w.c.user;
    kernel_.schedule(clear, [user, clear, dropped] { user->on_collision(clear, dropped); }, "collision_end", w.node);
  }
}

}  // namespace a2psim
