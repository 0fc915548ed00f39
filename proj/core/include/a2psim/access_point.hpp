#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "a2psim/frames.hpp"
#include "a2psim/sim_time.hpp"

namespace a2psim {

// Buffer of one polled STA at BSR time: MPDU sizes of queued packets, oldest
// first.
struct PolledBuffer {
  NodeId sta = kNoNode;
  std::vector<std::int64_t> mpdu_bytes;
  std::int64_t reported_bytes = 0;
};

struct UlGrant {
  NodeId sta = kNoNode;
  int packets = 0;  // leading packets of the buffer carried in this exchange
  std::int64_t psdu_bytes = 0;
  std::int64_t symbols = 0;
};

// Timeline of BSRP TF, SIFS, BSR [, SIFS, TF, SIFS, data, SIFS, BA].
struct UlExchangeTimeline {
  SimTime bsrp;
  SimTime bsr;
  SimTime tf;
  SimTime data;
  SimTime ba;
  SimTime sifs;
  std::int64_t data_symbol_budget = 0;
  std::int64_t data_symbols = 0;  // longest allocation; shorter ones are padded
  std::vector<UlGrant> grants;    // only STAs with a nonzero report

  bool has_data() const { return !grants.empty(); }
  SimTime bsr_start() const { return bsrp + sifs; }
  SimTime bsr_end() const { return bsr_start() + bsr; }
  SimTime data_start() const { return bsr_end() + sifs + tf + sifs; }
  SimTime data_end() const { return data_start() + data; }
  SimTime duration() const { return has_data() ? data_end() + sifs + ba : bsr_end(); }
};

// Largest data symbol count for which the whole exchange with `polled` STAs
// and `granted` data senders fits in `txop`. Negative if nothing fits.
std::int64_t data_symbol_budget(const FrameCatalog& frames, SimTime txop, int polled, int granted);

// Lays out one UL exchange. Each reporting STA sends as many queued packets
// (in order) as fit in the symbol budget.
UlExchangeTimeline plan_ul_exchange(const FrameCatalog& frames, SimTime txop, std::span<const PolledBuffer> buffers);

// Worst case: `max_rus` STAs polled and granted, one packet of `payload_bytes`
// each. Throws ConfigError("txop") if that exchange cannot fit.
void check_txop_feasible(const FrameCatalog& frames, SimTime txop, int max_rus, std::int64_t payload_bytes);

}  // namespace a2psim
