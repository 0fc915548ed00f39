#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <vector>

#include "a2psim/phy.hpp"
#include "a2psim/traffic.hpp"

namespace a2psim {
namespace {

using namespace literals;

TEST(BoundedExp, MeanMatchesClippedExponential) {
  RngStream rng(1, StreamId::Traffic);
  constexpr int kDraws = 100'000;
  double sum = 0;
  SimTime longest{};
  for (int i = 0; i < kDraws; ++i) {
    const SimTime d = sample_bounded_exp(rng, 10.0, 25.0);
    sum += d.to_s();
    longest = std::max(longest, d);
  }
  const double expected = 10.0 * (1.0 - std::exp(-2.5));
  EXPECT_NEAR(sum / kDraws, expected, 0.02 * expected);
  EXPECT_LE(longest, 25_s);
}

TEST(BoundedExp, UnboundedMeanIsTheRateMean) {
  RngStream rng(2, StreamId::Traffic);
  constexpr int kDraws = 100'000;
  double sum = 0;
  for (int i = 0; i < kDraws; ++i) sum += sample_bounded_exp(rng, 10.0, std::numeric_limits<double>::infinity()).to_s();
  EXPECT_NEAR(sum / kDraws, 10.0, 0.5);
}

TEST(BoundedExp, RejectsNonPositiveParameters) {
  RngStream rng(2, StreamId::Traffic);
  EXPECT_THROW(sample_bounded_exp(rng, 0.0, 25.0), std::invalid_argument);
  EXPECT_THROW(sample_bounded_exp(rng, 10.0, -1.0), std::invalid_argument);
}

TEST(OnOffSchedule, StartsOffAndAlternatesWithinBound) {
  RngStream rng(5, StreamId::Topology);
  const auto s = OnOffSchedule::sample(rng, OnOffParams{}, 300_s);
  ASSERT_FALSE(s.intervals().empty());
  EXPECT_GT(s.intervals().front().on, SimTime{});
  EXPECT_FALSE(s.is_on(SimTime{}));
  for (std::size_t i = 0; i < s.intervals().size(); ++i) {
    EXPECT_LT(s.intervals()[i].on, s.intervals()[i].off);
    if (i > 0) EXPECT_LE(s.intervals()[i - 1].off, s.intervals()[i].on);
  }
  for (SimTime d : s.sampled_durations()) EXPECT_LE(d, 25_s);
  const auto& first = s.intervals().front();
  EXPECT_EQ(s.period_at(first.on), 0u);
  EXPECT_FALSE(s.period_at(first.off).has_value());
}

TEST(OnOffSchedule, FromIntervalsValidates) {
  EXPECT_THROW(OnOffSchedule::from_intervals({{5_ms, 5_ms}}), std::invalid_argument);
  EXPECT_THROW(OnOffSchedule::from_intervals({{5_ms, 10_ms}, {8_ms, 12_ms}}), std::invalid_argument);
  const auto s = OnOffSchedule::from_intervals({{5_ms, 10_ms}, {20_ms, 30_ms}});
  EXPECT_EQ(s.period_at(25_ms), 1u);
  EXPECT_FALSE(s.is_on(15_ms));
}

TEST(Topology, DisjointSetsSizedAsRequested) {
  RngStream a(9, StreamId::Topology);
  const auto t = build_topology(a, 100, 8, 0, 30_s, OnOffParams{});
  EXPECT_EQ(t.ever_active().size(), 8u);
  for (NodeId s : t.initial) EXPECT_EQ(t.role(s), StaRole::Initial);

  RngStream b(9, StreamId::Topology);
  const auto full = build_topology(b, 100, 8, 92, 30_s, OnOffParams{});
  const auto all = full.ever_active();
  EXPECT_EQ(std::set<NodeId>(all.begin(), all.end()).size(), 100u);
  for (NodeId s : full.initial) EXPECT_EQ(std::count(full.joining.begin(), full.joining.end(), s), 0);
}

TEST(Topology, SameSeedSameSubsets) {
  RngStream a(4, StreamId::Topology);
  RngStream b(4, StreamId::Topology);
  const auto x = build_topology(a, 100, 8, 11, 30_s, OnOffParams{});
  const auto y = build_topology(b, 100, 8, 11, 30_s, OnOffParams{});
  EXPECT_EQ(x.initial, y.initial);
  EXPECT_EQ(x.joining, y.joining);
  for (NodeId s : x.joining) {
    const auto xi = x.schedule(s).intervals();
    const auto yi = y.schedule(s).intervals();
    ASSERT_EQ(xi.size(), yi.size());
    for (std::size_t i = 0; i < xi.size(); ++i) EXPECT_EQ(xi[i].on, yi[i].on);
  }
}

TEST(Topology, OverAllocationIsAConfigError) {
  RngStream a(1, StreamId::Topology);
  EXPECT_THROW(build_topology(a, 10, 8, 3, 1_s, OnOffParams{}), ConfigError);
}

TEST(GenerateUl, SizeOffsetAndOffState) {
  const AudioParams audio;
  EXPECT_EQ(audio.ul_packet_bytes(), 740);
  EXPECT_EQ(audio.dl_packet_bytes(), 500);
  RngStream rng(3, StreamId::Traffic);
  const auto on = OnOffSchedule::always_on();
  for (std::int64_t k = 0; k < 2000; ++k) {
    const auto p = generate_ul(1, k, on, audio, rng);
    ASSERT_TRUE(p.has_value());
    EXPECT_EQ(p->size_bytes, 740);
    EXPECT_GE(p->gen_time, 5_ms * k);
    EXPECT_LT(p->gen_time, 5_ms * k + 1_ms);
  }
  EXPECT_FALSE(generate_ul(1, 3, OnOffSchedule::never(), audio, rng).has_value());
}

TEST(ClassifyUl, DelayBudgetBoundary) {
  UlPacket p;
  p.gen_time = 10_ms;
  EXPECT_EQ(classify_ul(p, 10_ms + SimTime::from_us(4900), 5_ms), Disposition::DeliveredOnTime);
  EXPECT_EQ(classify_ul(p, 15_ms, 5_ms), Disposition::DeliveredOnTime);
  EXPECT_EQ(classify_ul(p, 10_ms + SimTime::from_us(5100), 5_ms), Disposition::Outdated);
}

TEST(ServerMixer, FiresWhenAllArrivedOrAtBudget) {
  Kernel k;
  std::vector<std::pair<std::int64_t, SimTime>> ready;
  ServerMixer mix(k, 5_ms, [&](std::int64_t w, SimTime at) { ready.emplace_back(w, at); });
  k.schedule(0_ms, [&] { mix.open_window(0, 0_ms, {1, 2}); });
  k.schedule(1_ms, [&] { mix.on_ul_arrival(1, 0, true); });
  k.schedule(3_ms, [&] { mix.on_ul_arrival(2, 0, true); });
  k.schedule(5_ms, [&] { mix.open_window(1, 5_ms, {1, 2}); });
  // Late packet does not count towards the mix.
  k.schedule(7_ms, [&] { mix.on_ul_arrival(1, 1, false); });
  k.schedule(10_ms, [&] { mix.open_window(2, 10_ms, {}); });
  k.run_until(20_ms);
  ASSERT_EQ(ready.size(), 2u);
  EXPECT_EQ(ready[0], std::make_pair(std::int64_t{0}, 3_ms));
  EXPECT_EQ(ready[1], std::make_pair(std::int64_t{1}, 10_ms));
  EXPECT_EQ(mix.dl_generated(), 2u);
}

struct DriverRun {
  std::vector<UlPacket> packets;
  std::vector<std::int64_t> dl_windows;
};

DriverRun drive(const Topology& topo, SimTime horizon) {
  Kernel k;
  RngStream rng(8, StreamId::Traffic);
  DriverRun out;
  ServerMixer mix(k, 5_ms, [&](std::int64_t w, SimTime) { out.dl_windows.push_back(w); });
  TrafficDriver drv(k, topo, AudioParams{}, rng, mix, [&](UlPacket p) { out.packets.push_back(std::move(p)); });
  drv.start(horizon);
  k.run_until(horizon + 10_ms);
  return out;
}

TEST(TrafficDriver, CbrExactAndBitrate) {
  RngStream trng(1, StreamId::Topology);
  const Topology topo = build_topology(trng, 20, 4, 0, 1_s, OnOffParams{});
  const SimTime horizon = SimTime::from_ms(1003);
  const auto run = drive(topo, horizon);
  std::map<NodeId, std::int64_t> bytes;
  for (const auto& p : run.packets) bytes[p.sta] += p.size_bytes;
  ASSERT_EQ(bytes.size(), 4u);
  const std::int64_t windows = horizon / 5_ms;
  const Rational rate = stream_bitrate(240, 24, 160, 5);
  for (const auto& [sta, b] : bytes) {
    EXPECT_EQ(b, windows * 740) << "sta " << sta;
    // Generated bytes over whole windows equal the stream bitrate exactly.
    EXPECT_EQ(b * 8 * rate.den * 1000, rate.num * (5 * windows));
  }
  EXPECT_EQ(static_cast<std::int64_t>(run.dl_windows.size()), windows);
}

TEST(TrafficDriver, FirstOfPeriodMarksReactivation) {
  Topology topo;
  topo.n_total = 2;
  topo.joining = {1};
  topo.schedules.resize(3);
  topo.schedules[1] = OnOffSchedule::from_intervals({{0_ms, 50_ms}, {100_ms, 150_ms}});
  const auto run = drive(topo, 200_ms);
  int firsts = 0;
  for (const auto& p : run.packets) {
    if (p.first_of_period) {
      ++firsts;
      EXPECT_TRUE(p.window == 0 || p.window == 20) << p.window;
    }
  }
  EXPECT_EQ(firsts, 2);
  // One broadcast per window with a generating STA.
  std::set<std::int64_t> windows;
  for (const auto& p : run.packets) windows.insert(p.window);
  EXPECT_EQ(run.dl_windows.size(), windows.size());
}

}  // namespace
}  // namespace a2psim
