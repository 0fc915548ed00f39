#include "a2psim/phy.hpp"

#include <array>
#include <numeric>

namespace a2psim {

namespace {

struct McsEntry {
  int bits_per_subcarrier;
  int rate_num;
  int rate_den;
};

constexpr std::array<McsEntry, 12> kMcs{{
    {1, 1, 2},   // BPSK 1/2
    {2, 1, 2},   // QPSK 1/2
    {2, 3, 4},   // QPSK 3/4
    {4, 1, 2},   // 16-QAM 1/2
    {4, 3, 4},   // 16-QAM 3/4
    {6, 2, 3},   // 64-QAM 2/3
    {6, 3, 4},   // 64-QAM 3/4
    {6, 5, 6},   // 64-QAM 5/6
    {8, 3, 4},   // 256-QAM 3/4
    {8, 5, 6},   // 256-QAM 5/6
    {10, 3, 4},  // 1024-QAM 3/4
    {10, 5, 6},  // 1024-QAM 5/6
}};

bool supported_bandwidth(int bw) { return bw == 20 || bw == 40 || bw == 80 || bw == 160; }

}  // namespace

SimTime PhyProfile::preamble(PreambleKind kind) const {
  switch (kind) {
    case PreambleKind::Legacy: return legacy_preamble;
    case PreambleKind::HeSu: return he_su_preamble;
    case PreambleKind::HeTb: return he_tb_preamble;
    case PreambleKind::HeMu: return he_mu_preamble;
  }
  return he_su_preamble;
}

void PhyProfile::validate() const {
  if (!supported_bandwidth(bandwidth_mhz)) throw ConfigError("bandwidth", "must be one of 20, 40, 80, 160 MHz");
  if (mcs < 0 || mcs > 11) throw ConfigError("mcs", "must be in [0, 11]");
  const auto gi = guard_interval.ns();
  if (gi != 800 && gi != 1600 && gi != 3200) throw ConfigError("guard_interval", "must be 0.8, 1.6 or 3.2 us");
  if (ru_tones != 26) throw ConfigError("ru_tones", "only 26-tone RUs are supported");
  if (sifs <= SimTime{}) throw ConfigError("sifs", "must be positive");
  if (slot <= SimTime{}) throw ConfigError("slot", "must be positive");
  if (legacy_preamble < SimTime{} || he_su_preamble < SimTime{} || he_tb_preamble < SimTime{} ||
      he_mu_preamble < SimTime{}) {
    throw ConfigError("preamble", "durations must be non-negative");
  }
}

int max_rus(int bandwidth_mhz, int ru_tones) {
  if (!supported_bandwidth(bandwidth_mhz)) throw ConfigError("bandwidth", "unsupported bandwidth");
  if (ru_tones != 26) throw ConfigError("ru_tones", "only 26-tone RUs are supported");
  switch (bandwidth_mhz) {
    case 20: return 9;
    case 40: return 18;
    case 80: return 37;
    default: return 74;
  }
}

int full_band_tones(int bandwidth_mhz) {
  switch (bandwidth_mhz) {
    case 20: return 242;
    case 40: return 484;
    case 80: return 996;
    case 160: return 1992;
    default: throw ConfigError("bandwidth", "unsupported bandwidth");
  }
}

int data_subcarriers(int ru_tones) {
  switch (ru_tones) {
    case 26: return 24;
    case 52: return 48;
    case 106: return 102;
    case 242: return 234;
    case 484: return 468;
    case 996: return 980;
    case 1992: return 1960;
    default: throw ConfigError("ru_tones", "unsupported RU size " + std::to_string(ru_tones));
  }
}

int bits_per_symbol(int ru_tones, int mcs_index) {
  if (mcs_index < 0 || mcs_index >= static_cast<int>(kMcs.size())) {
    throw ConfigError("mcs", "index " + std::to_string(mcs_index) + " out of range [0, 11]");
  }
  const McsEntry& m = kMcs[static_cast<std::size_t>(mcs_index)];
  return data_subcarriers(ru_tones) * m.bits_per_subcarrier * m.rate_num / m.rate_den;
}

AirtimeBreakdown frame_airtime(std::int64_t frame_bytes, int ru_tones, int mcs_index, const PhyProfile& profile,
                               PreambleKind preamble) {
  if (frame_bytes <= 0) throw std::invalid_argument("frame_airtime: frame_bytes must be positive");
  const std::int64_t bits = frame_bytes * 8;
  const std::int64_t per_symbol = bits_per_symbol(ru_tones, mcs_index);
  AirtimeBreakdown out;
  out.preamble = profile.preamble(preamble);
  out.payload_symbols = (bits + per_symbol - 1) / per_symbol;
  out.total = out.preamble + profile.symbol_duration() * out.payload_symbols;
  return out;
}

Rational stream_bitrate(std::int64_t samples, std::int64_t resolution_bits, std::int64_t header_bits,
                        std::int64_t interval_ms) {
  if (samples <= 0 || resolution_bits <= 0 || header_bits < 0 || interval_ms <= 0) {
    throw std::invalid_argument("stream_bitrate: inputs must be positive");
  }
  const std::int64_t num = 1000 * (samples * resolution_bits + header_bits);
  const std::int64_t g = std::gcd(num, interval_ms);
  return Rational{num / g, interval_ms / g};
}

}  // namespace a2psim
