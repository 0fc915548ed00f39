#include "a2psim/frames.hpp"

namespace a2psim {

std::string_view to_string(FrameKind kind) {
  switch (kind) {
    case FrameKind::UlData: return "ul_data";
    case FrameKind::DlBroadcast: return "dl_broadcast";
    case FrameKind::Ack: return "ack";
    case FrameKind::BsrpTf: return "bsrp_tf";
    case FrameKind::Bsr: return "bsr";
    case FrameKind::Tf: return "tf";
    case FrameKind::MultiStaBa: return "multi_sta_ba";
  }
  return "?";
}

void FrameSizes::validate() const {
  if (mac_overhead < 0) throw ConfigError("mac_overhead", "must be non-negative");
  if (ack <= 0) throw ConfigError("ack_bytes", "must be positive");
  if (bsr <= 0) throw ConfigError("bsr_bytes", "must be positive");
  if (ba_base <= 0 || ba_per_user < 0) throw ConfigError("ba_base_bytes", "invalid block ack size");
  if (tf_base <= 0 || tf_per_user < 0) throw ConfigError("tf_base_bytes", "invalid trigger frame size");
}

FrameCatalog::FrameCatalog(PhyProfile profile, FrameSizes sizes)
    : profile_(profile),
      sizes_(sizes),
      full_band_(full_band_tones(profile.bandwidth_mhz)),
      ru_bits_per_symbol_(bits_per_symbol(profile.ru_tones, profile.mcs)) {
  profile_.validate();
  sizes_.validate();
  ack_ = control(sizes_.ack);
  bsr_ = frame_airtime(sizes_.bsr, profile_.ru_tones, profile_, PreambleKind::HeTb).total;
}

SimTime FrameCatalog::control(std::int64_t bytes) const {
  return frame_airtime(bytes, full_band_, 0, profile_, PreambleKind::Legacy).total;
}

SimTime FrameCatalog::su_data(std::int64_t payload_bytes) const {
  return frame_airtime(mpdu_bytes(payload_bytes), full_band_, profile_.mcs, profile_, PreambleKind::HeSu).total;
}

SimTime FrameCatalog::bsrp_tf(int users) const { return control(sizes_.tf_base + sizes_.tf_per_user * users); }
SimTime FrameCatalog::tf(int users) const { return control(sizes_.tf_base + sizes_.tf_per_user * users); }
SimTime FrameCatalog::multi_sta_ba(int users) const { return control(sizes_.ba_base + sizes_.ba_per_user * users); }

AirtimeBreakdown FrameCatalog::tb_data(std::int64_t psdu_bytes) const {
  return frame_airtime(psdu_bytes, profile_.ru_tones, profile_, PreambleKind::HeTb);
}

SimTime FrameCatalog::tb_data_for_symbols(std::int64_t symbols) const {
  return profile_.he_tb_preamble + profile_.symbol_duration() * symbols;
}

}  // namespace a2psim
