#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "a2psim/sim_time.hpp"

namespace a2psim {

// Raised for invalid or infeasible configuration. `key()` names the
// offending parameter when one is known.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key, const std::string& what)
      : std::runtime_error(key.empty() ? what : key + ": " + what), key_(std::move(key)) {}
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

enum class PreambleKind { Legacy, HeSu, HeTb, HeMu };

struct PhyProfile {
  int bandwidth_mhz = 40;
  int mcs = 8;
  SimTime guard_interval = SimTime::from_ns(800);
  int ru_tones = 26;
  SimTime sifs = SimTime::from_us(16);
  SimTime slot = SimTime::from_us(9);
  SimTime legacy_preamble = SimTime::from_us(20);
  SimTime he_su_preamble = SimTime::from_us(32);
  SimTime he_tb_preamble = SimTime::from_us(44);
  SimTime he_mu_preamble = SimTime::from_us(44);

  // 12.8 us HE data symbol plus guard interval.
  SimTime symbol_duration() const { return SimTime::from_ns(12'800) + guard_interval; }
  SimTime preamble(PreambleKind kind) const;
  // Throws ConfigError naming the first bad field.
  void validate() const;
};

struct AirtimeBreakdown {
  SimTime preamble;
  std::int64_t payload_symbols = 0;
  SimTime total;
};

// Number of simultaneously allocatable RUs of the given size.
int max_rus(int bandwidth_mhz, int ru_tones);

// RU size that spans the whole channel (242, 484, 996, 2x996).
int full_band_tones(int bandwidth_mhz);

int data_subcarriers(int ru_tones);

// Data bits per OFDM symbol on one RU, single spatial stream. Rounded down
// where the coding rate does not divide evenly.
int bits_per_symbol(int ru_tones, int mcs_index);

AirtimeBreakdown frame_airtime(std::int64_t frame_bytes, int ru_tones, int mcs_index, const PhyProfile& profile,
                               PreambleKind preamble);

// Data frame on one RU at the profile's MCS.
inline AirtimeBreakdown frame_airtime(std::int64_t frame_bytes, int ru_tones, const PhyProfile& profile,
                                      PreambleKind preamble) {
  return frame_airtime(frame_bytes, ru_tones, profile.mcs, profile, preamble);
}

struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  bool operator==(const Rational&) const = default;
};

// 1000 * (samples * resolution + header) / interval_ms, in bits per second,
// reduced to lowest terms.
Rational stream_bitrate(std::int64_t samples, std::int64_t resolution_bits, std::int64_t header_bits,
                        std::int64_t interval_ms);

}  // namespace a2psim
