#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "a2psim/channel.hpp"
#include "a2psim/frames.hpp"
#include "a2psim/phy.hpp"
#include "a2psim/polling.hpp"
#include "a2psim/scheme.hpp"
#include "a2psim/sim_time.hpp"
#include "a2psim/trace.hpp"
#include "a2psim/traffic.hpp"

namespace a2psim {

// Everything one simulation run depends on. Defaults are the reference
// teleconferencing experiment.
struct RunConfig {
  Scheme scheme = Scheme::A2P;
  int active = 8;  // initial + joining STAs
  std::uint64_t seed = 1;
  SimTime duration = SimTime::from_s(30);
  int n_total = 100;
  int n_initial = 8;

  PhyProfile phy;
  FrameSizes frames;
  EdcaParams sta_edca;
  EdcaParams ap_edca;
  SimTime txop = SimTime::from_us(2080);
  SimTime ari = SimTime::from_us(16);
  SimTime mu_edca_timer = kA2pMuEdcaTimer;
  SimTime mu_edca_timer_ofdma = kMaxMuEdcaTimer;

  AudioParams audio;
  OnOffParams on_off;
  RemovalPolicy removal_policy = RemovalPolicy::AfterPostExpiryPoll;
  TraceLevel trace = TraceLevel::Off;

  int n_joining() const { return active - n_initial; }
  // Throws ConfigError naming the offending key.
  void validate() const;
};

// Parses "<number><unit>" with unit ns, us, µs, ms, s or TU (1024 us).
// Decimal values must land on a whole nanosecond.
SimTime parse_duration(std::string_view text, std::string_view key);

std::string_view to_string(RemovalPolicy p);
std::string_view to_string(TraceLevel level);

// Applies one "key = value" setting. Unknown keys and bad values throw
// ConfigError naming the key.
void apply_setting(RunConfig& cfg, std::string_view key, std::string_view value);

// Flat "key = value" text; '#' starts a comment. Settings are applied on top
// of `base` and the result is validated.
RunConfig parse_config(std::string_view text, RunConfig base = {});
RunConfig load_config_file(const std::string& path, RunConfig base = {});

std::vector<std::string> config_keys();

// One "key = value" line per setting, in a fixed order. Round-trips through
// parse_config.
std::string canonical_text(const RunConfig& cfg);
// FNV-1a over the canonical text with seed and trace level left out, so runs
// that differ only in seed share a hash.
std::uint64_t config_hash(const RunConfig& cfg);
std::string hash_hex(std::uint64_t h);

}  // namespace a2psim
