#pragma once

#include <cstdint>
#include <string_view>

#include "a2psim/phy.hpp"

namespace a2psim {

enum class FrameKind { UlData, DlBroadcast, Ack, BsrpTf, Bsr, Tf, MultiStaBa };

std::string_view to_string(FrameKind kind);

// MAC-level byte sizes. Defaults follow the standard frame formats.
struct FrameSizes {
  std::int64_t mac_overhead = 30;  // header + FCS per data MPDU
  std::int64_t ack = 14;
  std::int64_t bsr = 34;  // QoS Null carrying the buffer report
  std::int64_t ba_base = 32;
  std::int64_t ba_per_user = 8;
  std::int64_t tf_base = 28;
  std::int64_t tf_per_user = 5;

  void validate() const;
};

// Airtimes of every frame the model sends.
//  - Single-user data (EDCA uplink, downlink broadcast): HE SU PPDU over the
//    whole channel at the data MCS.
//  - Control frames (Ack, BSRP TF, TF, Multi-STA BA): legacy preamble, MCS 0
//    over the whole channel.
//  - Trigger-based responses (BSR, OFDMA data): HE TB PPDU on one 26-tone RU
//    at the data MCS.
class FrameCatalog {
 public:
  FrameCatalog(PhyProfile profile, FrameSizes sizes);

  const PhyProfile& profile() const { return profile_; }
  const FrameSizes& sizes() const { return sizes_; }

  std::int64_t mpdu_bytes(std::int64_t payload_bytes) const { return payload_bytes + sizes_.mac_overhead; }

  SimTime su_data(std::int64_t payload_bytes) const;
  SimTime ack() const { return ack_; }
  SimTime bsr() const { return bsr_; }
  SimTime bsrp_tf(int users) const;
  SimTime tf(int users) const;
  SimTime multi_sta_ba(int users) const;

  // OFDMA data on one RU carrying `psdu_bytes` (sum of MPDUs).
  AirtimeBreakdown tb_data(std::int64_t psdu_bytes) const;
  // Airtime of a trigger-based data PPDU with the given symbol count.
  SimTime tb_data_for_symbols(std::int64_t symbols) const;
  std::int64_t ru_bits_per_symbol() const { return ru_bits_per_symbol_; }

 private:
  SimTime control(std::int64_t bytes) const;

  PhyProfile profile_;
  FrameSizes sizes_;
  int full_band_;
  std::int64_t ru_bits_per_symbol_;
  SimTime ack_;
  SimTime bsr_;
};

}  // namespace a2psim
