#include <gtest/gtest.h>

#include <numeric>
#include <vector>

#include "a2psim/polling.hpp"

namespace a2psim {
namespace {

using namespace literals;

std::vector<NodeId> iota_ids(int n, NodeId first = 0) {
  std::vector<NodeId> v(static_cast<std::size_t>(n));
  std::iota(v.begin(), v.end(), first);
  return v;
}

TEST(SelectPollSet, TakesConsecutiveEntriesWithWrap) {
  const auto list = iota_ids(20);
  const auto a = select_poll_set(list, 0, 18);
  EXPECT_EQ(a.stas, iota_ids(18));
  EXPECT_EQ(a.cursor, 18u);

  const auto b = select_poll_set(list, a.cursor, 18);
  std::vector<NodeId> want{18, 19};
  for (NodeId i = 0; i <= 15; ++i) want.push_back(i);
  EXPECT_EQ(b.stas, want);
  EXPECT_EQ(b.cursor, 16u);
}

TEST(SelectPollSet, ShortListAndEmptyList) {
  const auto five = iota_ids(5, 1);
  const auto s = select_poll_set(five, 0, 18);
  EXPECT_EQ(s.stas, five);
  EXPECT_EQ(s.cursor, 0u);

  const std::vector<NodeId> none;
  const auto e = select_poll_set(none, 3, 18);
  EXPECT_TRUE(e.stas.empty());
  EXPECT_EQ(e.cursor, 3u);

  EXPECT_THROW(select_poll_set(five, 0, 0), std::invalid_argument);
}

TEST(AriGate, Boundaries) {
  EXPECT_FALSE(ari_gate(0_us, 10_us, false, 16_us));
  EXPECT_TRUE(ari_gate(0_us, 16_us, false, 16_us));
  EXPECT_TRUE(ari_gate(0_us, 1_us, true, 16_us));
  EXPECT_THROW(ari_gate(5_us, 4_us, false, 16_us), std::logic_error);
}

TEST(PollingList, UpsertIsUnique) {
  PollingList l;
  EXPECT_TRUE(l.upsert(4, 40_ms));
  EXPECT_TRUE(l.upsert(7, 41_ms));
  EXPECT_FALSE(l.upsert(4, 50_ms));
  EXPECT_EQ(l.size(), 2u);
  EXPECT_EQ(l.ids(), (std::vector<NodeId>{4, 7}));
  EXPECT_EQ(l.find(4)->expiry, 50_ms);
}

TEST(PollingList, RemovalNeedsPostExpiryPollWithZeroReport) {
  PollingList l;
  l.upsert(1, 40_ms);
  l.upsert(2, 40_ms);
  l.upsert(3, 40_ms);
  // 1: polled after expiry, reported nothing -> removed.
  l.mark_polled(1, 41_ms, 0);
  // 2: never polled after expiry -> kept.
  l.mark_polled(2, 39_ms, 0);
  // 3: polled after expiry but had data -> kept.
  l.mark_polled(3, 41_ms, 770);
  EXPECT_EQ(l.remove_expired(42_ms, RemovalPolicy::AfterPostExpiryPoll), (std::vector<NodeId>{1}));
  EXPECT_EQ(l.ids(), (std::vector<NodeId>{2, 3}));
  // Not yet expired entries stay regardless.
  PollingList m;
  m.upsert(5, 100_ms);
  m.mark_polled(5, 50_ms, 0);
  EXPECT_TRUE(m.remove_expired(60_ms, RemovalPolicy::AfterPostExpiryPoll).empty());
}

TEST(PollingList, OnExpiryPolicyRemovesUnpolledEntries) {
  PollingList l;
  l.upsert(1, 40_ms);
  l.upsert(2, 80_ms);
  EXPECT_EQ(l.remove_expired(40_ms, RemovalPolicy::OnExpiry), (std::vector<NodeId>{1}));
  EXPECT_EQ(l.ids(), (std::vector<NodeId>{2}));
}

TEST(PollingList, CursorFollowsRemovals) {
  PollingList l;
  for (NodeId s = 1; s <= 5; ++s) l.upsert(s, 10_ms);
  l.set_cursor(3);  // next poll starts at STA 4
  l.mark_polled(1, 11_ms, 0);
  l.mark_polled(2, 11_ms, 0);
  l.remove_expired(12_ms, RemovalPolicy::AfterPostExpiryPoll);
  EXPECT_EQ(l.ids(), (std::vector<NodeId>{3, 4, 5}));
  EXPECT_EQ(l.peek(1).stas, (std::vector<NodeId>{4}));
}

TEST(ApOnChannelWon, BroadcastOnDlTurn) {
  ApState ap;
  ap.next_exchange = ExchangeKind::Dl;
  ap.dl_queue.push_back(DlFrame{3, 500, 1_ms});
  ap.polling_list.upsert(1, 40_ms);
  const auto plan = ap_on_channel_won(ap, 2_ms, 18);
  EXPECT_EQ(plan.action, ExchangePlan::Action::Broadcast);
  EXPECT_TRUE(ap.dl_queue.empty());
  EXPECT_EQ(ap.next_exchange, ExchangeKind::Ul);
  EXPECT_EQ(ap.last_access, 2_ms);
}

TEST(ApOnChannelWon, EmptyDlQueueFallsThroughToUl) {
  ApState ap;
  ap.next_exchange = ExchangeKind::Dl;
  ap.polling_list.upsert(1, 40_ms);
  const auto plan = ap_on_channel_won(ap, 2_ms, 18);
  EXPECT_EQ(plan.action, ExchangePlan::Action::UlPoll);
  EXPECT_EQ(plan.poll_set, (std::vector<NodeId>{1}));
  EXPECT_EQ(ap.next_exchange, ExchangeKind::Dl);
}

TEST(ApOnChannelWon, EmptyListReleases) {
  ApState ap;
  ap.last_access = 1_ms;
  const auto plan = ap_on_channel_won(ap, 3_ms, 18);
  EXPECT_EQ(plan.action, ExchangePlan::Action::Release);
  EXPECT_EQ(ap.last_access, 3_ms);
}

TEST(ApOnChannelWon, UlTurnAlternatesWithDl) {
  ApState ap;
  for (NodeId s = 1; s <= 3; ++s) ap.polling_list.upsert(s, 40_ms);
  ap.dl_queue.push_back(DlFrame{0, 500, {}});
  ap.dl_queue.push_back(DlFrame{1, 500, {}});
  std::vector<ExchangePlan::Action> seq;
  for (int i = 0; i < 4; ++i) seq.push_back(ap_on_channel_won(ap, SimTime::from_ms(i), 18).action);
  using A = ExchangePlan::Action;
  EXPECT_EQ(seq, (std::vector<A>{A::UlPoll, A::Broadcast, A::UlPoll, A::Broadcast}));
}

TEST(ApOnChannelWon, PlanDoesNotTouchState) {
  ApState ap;
  ap.polling_list.upsert(9, 40_ms);
  const auto plan = plan_exchange(ap, 18);
  EXPECT_EQ(plan.action, ExchangePlan::Action::UlPoll);
  EXPECT_EQ(ap.next_exchange, ExchangeKind::Ul);
  EXPECT_EQ(ap.last_access, SimTime{});
}

TEST(ApHandleEdcaUl, InsertThenRefresh) {
  ApState ap;
  EXPECT_TRUE(ap_handle_edca_ul(ap, 5, 1_ms));
  EXPECT_EQ(ap.polling_list.find(5)->expiry, 41_ms);
  EXPECT_FALSE(ap_handle_edca_ul(ap, 5, 3_ms));
  EXPECT_EQ(ap.polling_list.size(), 1u);
  EXPECT_EQ(ap.polling_list.find(5)->expiry, 43_ms);
}

TEST(ApAfterUlExchange, DeliveryExtendsTimerZeroReportAgesOut) {
  ApState ap;
  ap_handle_edca_ul(ap, 1, 0_ms);
  ap_handle_edca_ul(ap, 2, 0_ms);
  UlExchangeOutcome out;
  out.start = 45_ms;
  out.end = 46_ms;
  out.polled = {1, 2};
  out.reported_bytes = {740, 0};
  out.delivered = {1};
  const auto removed = ap_after_ul_exchange(ap, out, 46_ms, RemovalPolicy::AfterPostExpiryPoll);
  EXPECT_EQ(removed, (std::vector<NodeId>{2}));
  ASSERT_TRUE(ap.polling_list.contains(1));
  EXPECT_EQ(ap.polling_list.find(1)->expiry, 86_ms);
}

TEST(ApAfterUlExchange, ExpiredButUnpolledStaIsRetained) {
  ApState ap;
  ap_handle_edca_ul(ap, 1, 0_ms);
  ap_handle_edca_ul(ap, 2, 0_ms);
  UlExchangeOutcome out;
  out.start = 45_ms;
  out.end = 46_ms;
  out.polled = {1};
  out.reported_bytes = {0};
  const auto removed = ap_after_ul_exchange(ap, out, 46_ms, RemovalPolicy::AfterPostExpiryPoll);
  EXPECT_EQ(removed, (std::vector<NodeId>{1}));
  EXPECT_TRUE(ap.polling_list.contains(2));
}

// Stable list of L entries polled m at a time with wraparound: the gap
// between two polls of one STA is floor(L/m) or ceil(L/m) exchanges.
TEST(PollingProperty, RoundRobinGap) {
  for (int L : {1, 5, 17, 18, 19, 36, 50, 100}) {
    for (int m : {1, 4, 18}) {
      ApState ap;
      for (NodeId s = 1; s <= L; ++s) ap.polling_list.upsert(s, SimTime::max());
      std::vector<std::vector<int>> polls_at(static_cast<std::size_t>(L) + 1);
      const int exchanges = 12 * ((L + m - 1) / m) + 3;
      for (int e = 0; e < exchanges; ++e) {
        const auto plan = ap_on_channel_won(ap, SimTime::from_us(e), m);
        ASSERT_EQ(plan.action, ExchangePlan::Action::UlPoll);
        ASSERT_EQ(plan.poll_set.size(), static_cast<std::size_t>(std::min(L, m)));
        for (NodeId s : plan.poll_set) polls_at[static_cast<std::size_t>(s)].push_back(e);
        ap.next_exchange = ExchangeKind::Ul;
      }
      const int bound = (L + m - 1) / m;
      for (NodeId s = 1; s <= L; ++s) {
        const auto& v = polls_at[static_cast<std::size_t>(s)];
        ASSERT_FALSE(v.empty());
        EXPECT_LT(v.front(), bound);
        for (std::size_t i = 1; i < v.size(); ++i) {
          EXPECT_LE(v[i] - v[i - 1], bound) << "L=" << L << " m=" << m << " sta=" << s;
          EXPECT_GE(v[i] - v[i - 1], L / m) << "L=" << L << " m=" << m << " sta=" << s;
        }
      }
    }
  }
}

}  // namespace
}  // namespace a2psim
