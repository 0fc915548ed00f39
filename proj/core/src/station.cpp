#include "a2psim/station.hpp"

#include <stdexcept>

namespace a2psim {

void sta_on_ack(StaState& sta, SimTime now, SimTime y) {
  sta.edca_enabled = false;
  sta.mu_edca_deadline = now + y;
}

void sta_on_ofdma_success(StaState& sta, SimTime now, SimTime y) {
  sta.edca_enabled = false;
  sta.mu_edca_deadline = now + y;
}

bool sta_timer_expired(StaState& sta, SimTime now) {
  if (!sta.mu_edca_deadline || *sta.mu_edca_deadline != now) {
    throw std::logic_error("sta_timer_expired: no deadline at this instant");
  }
  sta.edca_enabled = true;
  sta.mu_edca_deadline.reset();
  return !sta.ul_queue.empty();
}

}  // namespace a2psim
