#include <gtest/gtest.h>

#include <stdexcept>
#include <vector>

#include "a2psim/kernel.hpp"

namespace a2psim {
namespace {

using namespace literals;

TEST(Kernel, DeliversInTimeOrderThenInsertionOrder) {
  Kernel k;
  std::vector<int> seen;
  k.schedule(5_us, [&] { seen.push_back(3); });
  k.schedule(1_us, [&] { seen.push_back(1); });
  k.schedule(5_us, [&] { seen.push_back(4); });
  k.schedule(2_us, [&] { seen.push_back(2); });
  k.run_until(10_us);
  EXPECT_EQ(seen, (std::vector<int>{1, 2, 3, 4}));
  EXPECT_EQ(k.now(), 10_us);
  EXPECT_EQ(k.delivered_count(), 4u);
}

TEST(Kernel, EventsScheduledDuringDeliveryAtSameTimeRunAfter) {
  Kernel k;
  std::vector<int> seen;
  k.schedule(1_us, [&] {
    seen.push_back(1);
    k.schedule(k.now(), [&] { seen.push_back(3); });
  });
  k.schedule(1_us, [&] { seen.push_back(2); });
  k.run_until(1_us);
  EXPECT_EQ(seen, (std::vector<int>{1, 2, 3}));
}

TEST(Kernel, CancelledEventNeverFires) {
  Kernel k;
  bool fired = false;
  const EventHandle h = k.schedule(3_us, [&] { fired = true; });
  EXPECT_TRUE(k.pending(h));
  EXPECT_TRUE(k.cancel(h));
  EXPECT_FALSE(k.cancel(h));
  EXPECT_FALSE(k.pending(h));
  k.run_until(1_ms);
  EXPECT_FALSE(fired);
}

TEST(Kernel, RunUntilStopsAtBoundaryInclusive) {
  Kernel k;
  int n = 0;
  k.schedule(10_us, [&] { ++n; });
  k.schedule(11_us, [&] { ++n; });
  k.run_until(10_us);
  EXPECT_EQ(n, 1);
  EXPECT_EQ(k.pending_count(), 1u);
  k.run_until(20_us);
  EXPECT_EQ(n, 2);
}

TEST(Kernel, SchedulingInThePastThrows) {
  Kernel k;
  k.run_until(5_us);
  EXPECT_THROW(k.schedule(4_us, [] {}), std::logic_error);
}

TEST(Kernel, EventsTraceRecordsDeliveries) {
  Kernel k;
  std::vector<TraceRecord> recs;
  k.trace().set_level(TraceLevel::Events);
  k.trace().record_into(recs);
  k.schedule(2_us, [] {}, "tick", 4);
  k.run_until(3_us);
  ASSERT_EQ(recs.size(), 1u);
  EXPECT_EQ(recs[0].kind, "tick");
  EXPECT_EQ(recs[0].node, 4);
  EXPECT_EQ(recs[0].at, 2_us);
  EXPECT_EQ(format_trace_line(recs[0]), "2000 tick 4");
}

TEST(SimTime, AlignUpAndUnits) {
  EXPECT_EQ(align_up(0_us, 34_us, 9_us), 34_us);
  EXPECT_EQ(align_up(35_us, 34_us, 9_us), 43_us);
  EXPECT_EQ(align_up(43_us, 34_us, 9_us), 43_us);
  EXPECT_EQ(time_units(1), 1024_us);
  EXPECT_EQ((10_ms) / (5_ms), 2);
}

}  // namespace
}  // namespace a2psim
