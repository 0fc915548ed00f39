#include "a2psim/summary.hpp"

#include <algorithm>
#include <cmath>

namespace a2psim {

namespace {

std::int64_t round_ns(double v) { return std::llround(v); }

std::optional<double> mean_present(const std::vector<double>& v) {
  if (v.empty()) return std::nullopt;
  return mean_of(v);
}

}  // namespace

RunSummary summarize(const RunResult& r) {
  RunSummary s;
  s.scheme = r.config.scheme;
  s.active_count = r.config.active;
  s.seed = r.config.seed;
  s.config_hash = config_hash(r.config);
  for (const auto& p : r.packets) {
    ++s.counts.generated;
    switch (p.disposition) {
      case Disposition::InFlight: ++s.counts.in_flight; break;
      case Disposition::DeliveredOnTime: ++s.counts.on_time; break;
      case Disposition::Outdated: ++s.counts.outdated; break;
      case Disposition::DroppedCollision: ++s.counts.dropped; break;
    }
  }
  s.loss_ratio = loss_ratio(s.counts);

  const auto samples = pair_e2e(r.packets, r.dl);
  std::vector<double> values;
  values.reserve(samples.size());
  for (const auto& e : samples) values.push_back(static_cast<double>(e.value.ns()));
  if (auto box = box_stats(values)) {
    E2EStats e;
    e.count = static_cast<std::int64_t>(values.size());
    e.median = round_ns(box->median);
    e.q1 = round_ns(box->q1);
    e.q3 = round_ns(box->q3);
    e.whisker_low = round_ns(box->whisker_low);
    e.whisker_high = round_ns(box->whisker_high);
    e.max = round_ns(*std::max_element(values.begin(), values.end()));
    e.outliers = static_cast<std::int64_t>(box->outliers.size());
    e.mean = round_ns(mean_of(values));
    s.e2e = e;
  }

  s.wakeup_count = static_cast<std::int64_t>(r.wakeups.size());
  if (!r.wakeups.empty()) {
    std::vector<double> w;
    for (SimTime t : r.wakeups) w.push_back(static_cast<double>(t.ns()));
    s.wakeup_mean = round_ns(mean_of(w));
  }
  s.dl_generated = static_cast<std::int64_t>(r.dl_generated);
  s.dl_sent = static_cast<std::int64_t>(r.dl.size());
  s.dl_lost = static_cast<std::int64_t>(r.dl_lost);
  s.ul_exchanges = static_cast<std::int64_t>(r.ul_exchanges);
  s.max_ul_exchange = r.max_ul_exchange.ns();
  s.trigger_frames = static_cast<std::int64_t>(r.trigger_frames);
  s.collisions = static_cast<std::int64_t>(r.channel.collisions);
  return s;
}

std::vector<CellAggregate> aggregate(std::span<const RunSummary> rows) {
  struct Acc {
    CellAggregate cell;
    std::vector<double> loss, e2e_median, e2e_max, wakeup;
  };
  std::vector<Acc> cells;
  for (const auto& r : rows) {
    auto it = std::find_if(cells.begin(), cells.end(), [&](const Acc& a) {
      return a.cell.scheme == r.scheme && a.cell.active_count == r.active_count;
    });
    if (it == cells.end()) {
      cells.push_back(Acc{});
      it = cells.end() - 1;
      it->cell.scheme = r.scheme;
      it->cell.active_count = r.active_count;
    }
    ++it->cell.runs;
    it->loss.push_back(r.loss_ratio);
    if (r.e2e) {
      it->e2e_median.push_back(static_cast<double>(r.e2e->median));
      it->e2e_max.push_back(static_cast<double>(r.e2e->max));
    }
    if (r.wakeup_mean) it->wakeup.push_back(static_cast<double>(*r.wakeup_mean));
  }
  std::vector<CellAggregate> out;
  for (auto& a : cells) {
    std::sort(a.loss.begin(), a.loss.end());
    a.cell.loss_mean = mean_of(a.loss);
    a.cell.loss_median = quantile_sorted(a.loss, 0.5);
    a.cell.loss_p99 = quantile_sorted(a.loss, 0.99);
    a.cell.e2e_median_mean = mean_present(a.e2e_median);
    a.cell.e2e_max_mean = mean_present(a.e2e_max);
    a.cell.wakeup_mean_mean = mean_present(a.wakeup);
    out.push_back(a.cell);
  }
  return out;
}

}  // namespace a2psim
