#pragma once

#include <cstdint>
#include <deque>
#include <optional>

#include "a2psim/sim_time.hpp"

namespace a2psim {

// MU-EDCA side of a STA. While the deadline lies in the future the STA keeps
// out of contention and is served only through triggers.
struct StaState {
  bool edca_enabled = true;
  std::optional<SimTime> mu_edca_deadline;
  std::deque<std::uint64_t> ul_queue;  // packet ids, oldest first
  bool stream_on = false;
};

// Ack received for an EDCA uplink frame.
void sta_on_ack(StaState& sta, SimTime now, SimTime y);
// Own data acknowledged by a Multi-STA BA. Restarts the timer; a STA that
// had EDCA enabled switches to the MU EDCA parameters as well.
void sta_on_ofdma_success(StaState& sta, SimTime now, SimTime y);
// Timer ran out. Returns true if the STA should start contending now.
bool sta_timer_expired(StaState& sta, SimTime now);

}  // namespace a2psim
