#include "a2psim/traffic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "a2psim/phy.hpp"

namespace a2psim {

void AudioParams::validate() const {
  if (interval <= SimTime{}) throw ConfigError("interval", "must be positive");
  if (gen_window <= SimTime{} || gen_window > interval) throw ConfigError("gen_window", "must be in (0, interval]");
  if (interval.ns() % 1'000'000 != 0) throw ConfigError("interval", "must be a whole number of milliseconds");
  if (ul_samples <= 0) throw ConfigError("ul_samples", "must be positive");
  if (ul_resolution_bits <= 0) throw ConfigError("ul_resolution", "must be positive");
  if (dl_samples <= 0) throw ConfigError("dl_samples", "must be positive");
  if (dl_resolution_bits <= 0) throw ConfigError("dl_resolution", "must be positive");
  if (header_bits < 0) throw ConfigError("header_bits", "must be non-negative");
  if ((ul_samples * ul_resolution_bits + header_bits) % 8 != 0) {
    throw ConfigError("ul_samples", "uplink packet is not a whole number of bytes");
  }
  if ((dl_samples * dl_resolution_bits + header_bits) % 8 != 0) {
    throw ConfigError("dl_samples", "downlink packet is not a whole number of bytes");
  }
}

SimTime sample_bounded_exp(RngStream& rng, double mean_s, double bound_s) {
  if (!(mean_s > 0.0) || !(bound_s > 0.0)) throw std::invalid_argument("sample_bounded_exp: mean and bound must be > 0");
  const double draw = std::min(rng.exponential(mean_s), bound_s);
  return SimTime::from_ns(std::llround(draw * 1e9));
}

OnOffSchedule OnOffSchedule::always_on(SimTime from) {
  OnOffSchedule s;
  s.intervals_.push_back(OnInterval{from, SimTime::max()});
  return s;
}

OnOffSchedule OnOffSchedule::from_intervals(std::vector<OnInterval> intervals) {
  for (std::size_t i = 0; i < intervals.size(); ++i) {
    if (intervals[i].off <= intervals[i].on) throw std::invalid_argument("on-interval must have off > on");
    if (i > 0 && intervals[i].on < intervals[i - 1].off) {
      throw std::invalid_argument("on-intervals must be ordered and non-overlapping");
    }
  }
  OnOffSchedule s;
  s.intervals_ = std::move(intervals);
  return s;
}

OnOffSchedule OnOffSchedule::sample(RngStream& rng, const OnOffParams& params, SimTime horizon) {
  OnOffSchedule s;
  SimTime t{};
  while (t < horizon) {
    const SimTime off = sample_bounded_exp(rng, params.mean_s, params.bound_s);
    s.durations_.push_back(off);
    t += off;
    if (t >= horizon) break;
    const SimTime on = sample_bounded_exp(rng, params.mean_s, params.bound_s);
    s.durations_.push_back(on);
    if (on > SimTime{}) s.intervals_.push_back(OnInterval{t, t + on});
    t += on;
  }
  return s;
}

std::optional<std::size_t> OnOffSchedule::period_at(SimTime t) const {
  auto it = std::upper_bound(intervals_.begin(), intervals_.end(), t,
                             [](SimTime v, const OnInterval& iv) { return v < iv.on; });
  if (it == intervals_.begin()) return std::nullopt;
  --it;
  if (t < it->off) return static_cast<std::size_t>(it - intervals_.begin());
  return std::nullopt;
}

StaRole Topology::role(NodeId sta) const {
  if (std::find(initial.begin(), initial.end(), sta) != initial.end()) return StaRole::Initial;
  if (std::find(joining.begin(), joining.end(), sta) != joining.end()) return StaRole::Joining;
  return StaRole::Idle;
}

std::vector<NodeId> Topology::ever_active() const {
  std::vector<NodeId> out = initial;
  out.insert(out.end(), joining.begin(), joining.end());
  std::sort(out.begin(), out.end());
  return out;
}

Topology build_topology(RngStream& rng, int n_total, int n_initial, int n_joining, SimTime horizon,
                        const OnOffParams& on_off) {
  if (n_total <= 0) throw ConfigError("n_total", "must be positive");
  if (n_initial < 0 || n_joining < 0) throw ConfigError("active", "STA counts must be non-negative");
  if (n_initial + n_joining > n_total) {
    throw ConfigError("active", "initial + joining STAs (" + std::to_string(n_initial + n_joining) +
                                    ") exceed n_total (" + std::to_string(n_total) + ")");
  }
  std::vector<NodeId> ids(static_cast<std::size_t>(n_total));
  for (int i = 0; i < n_total; ++i) ids[static_cast<std::size_t>(i)] = i + 1;
  // Partial Fisher-Yates: the first n_initial + n_joining slots are the draw.
  const int picked = n_initial + n_joining;
  for (int i = 0; i < picked; ++i) {
    const auto j = static_cast<std::size_t>(rng.uniform_int(i, n_total - 1));
    std::swap(ids[static_cast<std::size_t>(i)], ids[j]);
  }

  Topology topo;
  topo.n_total = n_total;
  topo.initial.assign(ids.begin(), ids.begin() + n_initial);
  topo.joining.assign(ids.begin() + n_initial, ids.begin() + picked);
  std::sort(topo.initial.begin(), topo.initial.end());
  std::sort(topo.joining.begin(), topo.joining.end());
  topo.schedules.resize(static_cast<std::size_t>(n_total) + 1);
  for (NodeId sta : topo.initial) topo.schedules[static_cast<std::size_t>(sta)] = OnOffSchedule::always_on();
  for (NodeId sta : topo.joining) {
    topo.schedules[static_cast<std::size_t>(sta)] = OnOffSchedule::sample(rng, on_off, horizon);
  }
  return topo;
}

std::string_view to_string(Disposition d) {
  switch (d) {
    case Disposition::InFlight: return "in_flight";
    case Disposition::DeliveredOnTime: return "on_time";
    case Disposition::Outdated: return "outdated";
    case Disposition::DroppedCollision: return "dropped";
  }
  return "?";
}

std::optional<UlPacket> generate_ul(NodeId sta, std::int64_t window, const OnOffSchedule& schedule,
                                    const AudioParams& audio, RngStream& rng) {
  const SimTime offset = SimTime::from_ns(rng.uniform_int(0, audio.gen_window.ns() - 1));
  const SimTime gen = audio.interval * window + offset;
  const auto period = schedule.period_at(gen);
  if (!period) return std::nullopt;
  UlPacket p;
  p.sta = sta;
  p.window = window;
  p.gen_time = gen;
  p.size_bytes = audio.ul_packet_bytes();
  p.on_period = *period;
  return p;
}

Disposition classify_ul(const UlPacket& pkt, SimTime ap_rx, SimTime budget) {
  return ap_rx - pkt.gen_time <= budget ? Disposition::DeliveredOnTime : Disposition::Outdated;
}

ServerMixer::ServerMixer(Kernel& kernel, SimTime budget, DlReady on_ready)
    : kernel_(kernel), budget_(budget), on_ready_(std::move(on_ready)) {}

void ServerMixer::open_window(std::int64_t window, SimTime window_start, std::vector<NodeId> expected) {
  if (expected.empty()) return;
  std::sort(expected.begin(), expected.end());
  Pending p;
  p.waiting = std::move(expected);
  p.deadline = kernel_.schedule(window_start + budget_, [this, window] { fire(window); }, "server_deadline");
  open_.emplace_back(window, std::move(p));
}

void ServerMixer::on_ul_arrival(NodeId sta, std::int64_t window, bool on_time) {
  if (!on_time) return;
  auto it = std::find_if(open_.begin(), open_.end(), [window](const auto& e) { return e.first == window; });
  if (it == open_.end()) return;
  auto& waiting = it->second.waiting;
  auto pos = std::lower_bound(waiting.begin(), waiting.end(), sta);
  if (pos == waiting.end() || *pos != sta) return;
  waiting.erase(pos);
  if (waiting.empty()) {
    kernel_.cancel(it->second.deadline);
    fire(window);
  }
}

void ServerMixer::fire(std::int64_t window) {
  auto it = std::find_if(open_.begin(), open_.end(), [window](const auto& e) { return e.first == window; });
  if (it == open_.end()) return;
  open_.erase(it);
  ++dl_generated_;
  on_ready_(window, kernel_.now());
}

TrafficDriver::TrafficDriver(Kernel& kernel, const Topology& topology, AudioParams audio, RngStream& rng,
                             ServerMixer& server, Generate on_generate)
    : kernel_(kernel),
      topology_(topology),
      audio_(audio),
      rng_(rng),
      server_(server),
      on_generate_(std::move(on_generate)),
      sources_(topology.ever_active()),
      last_period_(static_cast<std::size_t>(topology.n_total) + 1) {}

void TrafficDriver::start(SimTime horizon) {
  horizon_ = horizon;
  if (audio_.interval <= horizon_) kernel_.schedule(SimTime{}, [this] { open_window(0); }, "window");
}

void TrafficDriver::open_window(std::int64_t k) {
  const SimTime start = audio_.interval * k;
  std::vector<NodeId> expected;
  for (NodeId sta : sources_) {
    auto pkt = generate_ul(sta, k, topology_.schedule(sta), audio_, rng_);
    if (!pkt) continue;
    auto& last = last_period_[static_cast<std::size_t>(sta)];
    pkt->first_of_period = !last.has_value() || *last != pkt->on_period;
    last = pkt->on_period;
    expected.push_back(sta);
    kernel_.schedule(
        pkt->gen_time,
        [this, p = *pkt]() mutable {
          p.id = next_id_++;
          on_generate_(std::move(p));
        },
        "ul_generate", sta);
  }
  server_.open_window(k, start, std::move(expected));
  if (audio_.interval * (k + 2) <= horizon_) {
    kernel_.schedule(start + audio_.interval, [this, k] { open_window(k + 1); }, "window");
  }
}

}  // namespace a2psim
