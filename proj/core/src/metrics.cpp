#include "a2psim/metrics.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

namespace a2psim {

double loss_ratio(const DispositionCounts& counts) {
  const std::int64_t denom = counts.terminal();
  if (denom == 0) return 0.0;
  return static_cast<double>(counts.outdated + counts.dropped) / static_cast<double>(denom);
}

void PacketLedger::add(UlPacket pkt) {
  if (pkt.id != packets_.size()) throw std::logic_error("ledger ids must be dense and ordered");
  packets_.push_back(std::move(pkt));
}

Disposition PacketLedger::deliver(std::uint64_t id, SimTime ap_rx) {
  UlPacket& p = packets_.at(id);
  if (p.disposition != Disposition::InFlight) throw std::logic_error("packet delivered twice");
  p.ap_rx = ap_rx;
  p.disposition = classify_ul(p, ap_rx, budget_);
  return p.disposition;
}

void PacketLedger::drop(std::uint64_t id) {
  UlPacket& p = packets_.at(id);
  if (p.disposition != Disposition::InFlight) throw std::logic_error("packet already terminal");
  p.disposition = Disposition::DroppedCollision;
}

namespace {

void tally(DispositionCounts& c, const UlPacket& p) {
  ++c.generated;
  switch (p.disposition) {
    case Disposition::InFlight: ++c.in_flight; break;
    case Disposition::DeliveredOnTime: ++c.on_time; break;
    case Disposition::Outdated: ++c.outdated; break;
    case Disposition::DroppedCollision: ++c.dropped; break;
  }
}

}  // namespace

DispositionCounts PacketLedger::counts() const {
  DispositionCounts c;
  for (const auto& p : packets_) tally(c, p);
  return c;
}

DispositionCounts PacketLedger::counts_for(NodeId sta) const {
  DispositionCounts c;
  for (const auto& p : packets_) {
    if (p.sta == sta) tally(c, p);
  }
  return c;
}

std::vector<E2ESample> pair_e2e(std::span<const UlPacket> ledger, std::span<const DlReception> dl) {
  std::unordered_map<std::int64_t, SimTime> rx_by_window;
  for (const auto& r : dl) rx_by_window.emplace(r.window, r.rx);
  std::vector<E2ESample> out;
  for (const auto& p : ledger) {
    if (p.disposition != Disposition::DeliveredOnTime) continue;
    auto it = rx_by_window.find(p.window);
    if (it == rx_by_window.end()) continue;
    out.push_back(E2ESample{p.sta, p.window, it->second - p.gen_time});
  }
  return out;
}

void WakeupTracker::on_generated(const UlPacket& pkt) {
  if (!pkt.first_of_period) return;
  periods_.emplace(std::make_pair(pkt.sta, pkt.on_period), Period{pkt.gen_time, false});
}

void WakeupTracker::on_ap_rx(const UlPacket& pkt, SimTime ap_rx) {
  auto it = periods_.find({pkt.sta, pkt.on_period});
  if (it == periods_.end() || it->second.sampled) return;
  it->second.sampled = true;
  record_wakeup(pkt.sta, it->second.first_gen, ap_rx);
}

void WakeupTracker::record_wakeup(NodeId /*sta*/, SimTime on_time_gen, SimTime ap_rx) {
  samples_.push_back(ap_rx - on_time_gen);
}

double quantile_sorted(std::span<const double> sorted, double q) {
  if (sorted.empty()) throw std::invalid_argument("quantile of empty sample");
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(pos);
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + (sorted[hi] - sorted[lo]) * frac;
}

std::optional<BoxStats> box_stats(std::span<const double> samples) {
  if (samples.empty()) return std::nullopt;
  std::vector<double> s(samples.begin(), samples.end());
  std::sort(s.begin(), s.end());
  BoxStats b;
  b.median = quantile_sorted(s, 0.5);
  b.q1 = quantile_sorted(s, 0.25);
  b.q3 = quantile_sorted(s, 0.75);
  const double iqr = b.q3 - b.q1;
  const double lo_fence = b.q1 - 1.5 * iqr;
  const double hi_fence = b.q3 + 1.5 * iqr;
  b.whisker_low = b.q1;
  b.whisker_high = b.q3;
  for (double v : s) {
    if (v >= lo_fence) {
      b.whisker_low = std::min(v, b.q1);
      break;
    }
  }
  for (auto it = s.rbegin(); it != s.rend(); ++it) {
    if (*it <= hi_fence) {
      b.whisker_high = std::max(*it, b.q3);
      break;
    }
  }
  for (double v : s) {
    if (v < b.whisker_low || v > b.whisker_high) b.outliers.push_back(v);
  }
  return b;
}

double mean_of(std::span<const double> v) {
  if (v.empty()) return 0.0;
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

}  // namespace a2psim
