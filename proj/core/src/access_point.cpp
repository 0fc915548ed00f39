#include "a2psim/access_point.hpp"

#include <algorithm>
#include <string>

namespace a2psim {

namespace {

std::int64_t symbols_for(std::int64_t bytes, std::int64_t bits_per_symbol) {
  return (bytes * 8 + bits_per_symbol - 1) / bits_per_symbol;
}

}  // namespace

std::int64_t data_symbol_budget(const FrameCatalog& frames, SimTime txop, int polled, int granted) {
  const PhyProfile& phy = frames.profile();
  const SimTime fixed = frames.bsrp_tf(polled) + frames.bsr() + frames.tf(granted) + frames.multi_sta_ba(granted) +
                        phy.sifs * 4 + phy.he_tb_preamble;
  if (fixed > txop) return -1;
  return (txop - fixed) / phy.symbol_duration();
}

UlExchangeTimeline plan_ul_exchange(const FrameCatalog& frames, SimTime txop, std::span<const PolledBuffer> buffers) {
  const int polled = static_cast<int>(buffers.size());
  const int reporting = static_cast<int>(
      std::count_if(buffers.begin(), buffers.end(), [](const PolledBuffer& b) { return b.reported_bytes > 0; }));

  UlExchangeTimeline t;
  t.sifs = frames.profile().sifs;
  t.bsrp = frames.bsrp_tf(polled);
  t.bsr = frames.bsr();
  if (reporting == 0) return t;

  t.tf = frames.tf(reporting);
  t.ba = frames.multi_sta_ba(reporting);
  t.data_symbol_budget = data_symbol_budget(frames, txop, polled, reporting);
  const std::int64_t bps = frames.ru_bits_per_symbol();
  for (const PolledBuffer& b : buffers) {
    if (b.reported_bytes <= 0) continue;
    UlGrant g;
    g.sta = b.sta;
    for (std::int64_t bytes : b.mpdu_bytes) {
      const std::int64_t next = g.psdu_bytes + bytes;
      if (symbols_for(next, bps) > t.data_symbol_budget) break;
      g.psdu_bytes = next;
      ++g.packets;
    }
    g.symbols = g.packets > 0 ? symbols_for(g.psdu_bytes, bps) : 0;
    t.data_symbols = std::max(t.data_symbols, g.symbols);
    t.grants.push_back(g);
  }
  t.data = frames.tb_data_for_symbols(t.data_symbols);
  return t;
}

void check_txop_feasible(const FrameCatalog& frames, SimTime txop, int max_rus, std::int64_t payload_bytes) {
  const std::int64_t budget = data_symbol_budget(frames, txop, max_rus, max_rus);
  const std::int64_t needed = symbols_for(frames.mpdu_bytes(payload_bytes), frames.ru_bits_per_symbol());
  if (budget < needed) {
    throw ConfigError("txop", "an exchange with " + std::to_string(max_rus) + " STAs cannot carry one " +
                                  std::to_string(payload_bytes) + " B packet each within " +
                                  std::to_string(txop.ns()) + " ns");
  }
}

}  // namespace a2psim
