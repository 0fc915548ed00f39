#pragma once

#include <optional>
#include <string_view>

#include "a2psim/sim_time.hpp"

namespace a2psim {

enum class Scheme { A2P, EdcaOnly, OfdmaOnly, OfdmaPlusEdca };

// CLI spelling: a2p, edca, ofdma, ofdma-edca.
std::string_view cli_name(Scheme s);
std::optional<Scheme> parse_scheme(std::string_view name);

inline constexpr SimTime kA2pMuEdcaTimer = SimTime::from_ms(40);
// Largest value the MU EDCA timer field can express: 255 * 8 TU.
inline constexpr SimTime kMaxMuEdcaTimer = SimTime::from_us(2'088'960);

struct SchemeBehavior {
  Scheme scheme = Scheme::A2P;
  bool ap_sends_triggers = true;
  // Every associated STA sits on the polling list for the whole run.
  bool static_poll_all = false;
  // STAs disable EDCA via the MU EDCA timer after an ack or a Multi-STA BA.
  bool uses_mu_edca = true;
  // The AP contends on its own once one ARI passed since its last access.
  bool ari_gating = true;
  SimTime mu_edca_timer = kA2pMuEdcaTimer;
};

SchemeBehavior configure_scheme(Scheme s, SimTime a2p_timer = kA2pMuEdcaTimer,
                                SimTime ofdma_timer = kMaxMuEdcaTimer);

}  // namespace a2psim
