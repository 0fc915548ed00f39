#include "a2psim/scheme.hpp"

namespace a2psim {

std::string_view cli_name(Scheme s) {
  switch (s) {
    case Scheme::A2P: return "a2p";
    case Scheme::EdcaOnly: return "edca";
    case Scheme::OfdmaOnly: return "ofdma";
    case Scheme::OfdmaPlusEdca: return "ofdma-edca";
  }
  return "?";
}

std::optional<Scheme> parse_scheme(std::string_view name) {
  if (name == "a2p" || name == "A2P") return Scheme::A2P;
  if (name == "edca" || name == "EdcaOnly") return Scheme::EdcaOnly;
  if (name == "ofdma" || name == "OfdmaOnly") return Scheme::OfdmaOnly;
  if (name == "ofdma-edca" || name == "OfdmaPlusEdca") return Scheme::OfdmaPlusEdca;
  return std::nullopt;
}

SchemeBehavior configure_scheme(Scheme s, SimTime a2p_timer, SimTime ofdma_timer) {
  SchemeBehavior b;
  b.scheme = s;
  switch (s) {
    case Scheme::A2P:
      b.mu_edca_timer = a2p_timer;
      break;
    case Scheme::EdcaOnly:
      b.ap_sends_triggers = false;
      b.uses_mu_edca = false;
      b.ari_gating = false;
      b.mu_edca_timer = SimTime{};
      break;
    case Scheme::OfdmaOnly:
      b.static_poll_all = true;
      b.mu_edca_timer = ofdma_timer;
      break;
    case Scheme::OfdmaPlusEdca:
      b.static_poll_all = true;
      b.uses_mu_edca = false;
      b.mu_edca_timer = SimTime{};
      break;
  }
  return b;
}

}  // namespace a2psim
