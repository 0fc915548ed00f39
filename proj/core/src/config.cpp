#include "a2psim/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <functional>
#include <limits>
#include <sstream>

namespace a2psim {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::int64_t parse_int(std::string_view text, std::string_view key) {
  text = trim(text);
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
    throw ConfigError(std::string(key), "expected an integer, got '" + std::string(text) + "'");
  }
  return v;
}

int parse_small_int(std::string_view text, std::string_view key) {
  const std::int64_t v = parse_int(text, key);
  if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max()) {
    throw ConfigError(std::string(key), "value out of range");
  }
  return static_cast<int>(v);
}

std::string fmt_time(SimTime t) { return std::to_string(t.ns()) + "ns"; }

SimTime seconds_to_time(double s) { return SimTime::from_ns(static_cast<std::int64_t>(s * 1e9 + 0.5)); }

struct Setting {
  const char* key;
  std::function<void(RunConfig&, std::string_view)> set;
  std::function<std::string(const RunConfig&)> get;
};

template <typename Field>
Setting time_setting(const char* key, Field field) {
  return Setting{key, [key, field](RunConfig& c, std::string_view v) { field(c) = parse_duration(v, key); },
                 [field](const RunConfig& c) { return fmt_time(field(c)); }};
}

template <typename Field>
Setting int_setting(const char* key, Field field) {
  return Setting{key,
                 [key, field](RunConfig& c, std::string_view v) {
                   using T = std::remove_reference_t<decltype(field(c))>;
                   if constexpr (sizeof(T) == sizeof(int)) {
                     field(c) = parse_small_int(v, key);
                   } else {
                     field(c) = parse_int(v, key);
                   }
                 },
                 [field](const RunConfig& c) { return std::to_string(field(c)); }};
}

const std::vector<Setting>& settings() {
  static const std::vector<Setting> table = [] {
    std::vector<Setting> t;
    t.push_back(Setting{"scheme",
                        [](RunConfig& c, std::string_view v) {
                          auto s = parse_scheme(trim(v));
                          if (!s) throw ConfigError("scheme", "unknown scheme '" + std::string(trim(v)) + "'");
                          c.scheme = *s;
                        },
                        [](const RunConfig& c) { return std::string(cli_name(c.scheme)); }});
    t.push_back(int_setting("active", [](auto& c) -> auto& { return c.active; }));
    t.push_back(Setting{"seed",
                        [](RunConfig& c, std::string_view v) {
                          v = trim(v);
                          std::uint64_t s = 0;
                          auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), s);
                          if (ec != std::errc{} || ptr != v.data() + v.size() || v.empty()) {
                            throw ConfigError("seed", "expected a non-negative integer");
                          }
                          c.seed = s;
                        },
                        [](const RunConfig& c) { return std::to_string(c.seed); }});
    t.push_back(time_setting("duration", [](auto& c) -> auto& { return c.duration; }));
    t.push_back(int_setting("n_total", [](auto& c) -> auto& { return c.n_total; }));
    t.push_back(int_setting("n_initial", [](auto& c) -> auto& { return c.n_initial; }));

    t.push_back(int_setting("bandwidth", [](auto& c) -> auto& { return c.phy.bandwidth_mhz; }));
    t.push_back(int_setting("mcs", [](auto& c) -> auto& { return c.phy.mcs; }));
    t.push_back(time_setting("guard_interval", [](auto& c) -> auto& { return c.phy.guard_interval; }));
    t.push_back(int_setting("ru_tones", [](auto& c) -> auto& { return c.phy.ru_tones; }));
    t.push_back(time_setting("sifs", [](auto& c) -> auto& { return c.phy.sifs; }));
    t.push_back(time_setting("slot", [](auto& c) -> auto& { return c.phy.slot; }));
    t.push_back(time_setting("preamble_legacy", [](auto& c) -> auto& { return c.phy.legacy_preamble; }));
    t.push_back(time_setting("preamble_he_su", [](auto& c) -> auto& { return c.phy.he_su_preamble; }));
    t.push_back(time_setting("preamble_he_tb", [](auto& c) -> auto& { return c.phy.he_tb_preamble; }));
    t.push_back(time_setting("preamble_he_mu", [](auto& c) -> auto& { return c.phy.he_mu_preamble; }));

    t.push_back(int_setting("mac_overhead", [](auto& c) -> auto& { return c.frames.mac_overhead; }));
    t.push_back(int_setting("ack_bytes", [](auto& c) -> auto& { return c.frames.ack; }));
    t.push_back(int_setting("bsr_bytes", [](auto& c) -> auto& { return c.frames.bsr; }));
    t.push_back(int_setting("ba_base_bytes", [](auto& c) -> auto& { return c.frames.ba_base; }));
    t.push_back(int_setting("ba_per_user_bytes", [](auto& c) -> auto& { return c.frames.ba_per_user; }));
    t.push_back(int_setting("tf_base_bytes", [](auto& c) -> auto& { return c.frames.tf_base; }));
    t.push_back(int_setting("tf_per_user_bytes", [](auto& c) -> auto& { return c.frames.tf_per_user; }));

    t.push_back(int_setting("aifsn", [](auto& c) -> auto& { return c.sta_edca.aifsn; }));
    t.push_back(int_setting("cw_min", [](auto& c) -> auto& { return c.sta_edca.cw_min; }));
    t.push_back(int_setting("cw_max", [](auto& c) -> auto& { return c.sta_edca.cw_max; }));
    t.push_back(int_setting("retry_limit", [](auto& c) -> auto& { return c.sta_edca.retry_limit; }));
    t.push_back(int_setting("ap_aifsn", [](auto& c) -> auto& { return c.ap_edca.aifsn; }));
    t.push_back(int_setting("ap_cw_min", [](auto& c) -> auto& { return c.ap_edca.cw_min; }));
    t.push_back(int_setting("ap_cw_max", [](auto& c) -> auto& { return c.ap_edca.cw_max; }));
    t.push_back(int_setting("ap_retry_limit", [](auto& c) -> auto& { return c.ap_edca.retry_limit; }));

    t.push_back(time_setting("txop", [](auto& c) -> auto& { return c.txop; }));
    t.push_back(time_setting("ari", [](auto& c) -> auto& { return c.ari; }));
    t.push_back(time_setting("mu_edca_timer", [](auto& c) -> auto& { return c.mu_edca_timer; }));
    t.push_back(time_setting("mu_edca_timer_ofdma", [](auto& c) -> auto& { return c.mu_edca_timer_ofdma; }));

    t.push_back(time_setting("interval", [](auto& c) -> auto& { return c.audio.interval; }));
    t.push_back(time_setting("gen_window", [](auto& c) -> auto& { return c.audio.gen_window; }));
    t.push_back(int_setting("ul_samples", [](auto& c) -> auto& { return c.audio.ul_samples; }));
    t.push_back(int_setting("ul_resolution", [](auto& c) -> auto& { return c.audio.ul_resolution_bits; }));
    t.push_back(int_setting("dl_samples", [](auto& c) -> auto& { return c.audio.dl_samples; }));
    t.push_back(int_setting("dl_resolution", [](auto& c) -> auto& { return c.audio.dl_resolution_bits; }));
    t.push_back(int_setting("header_bits", [](auto& c) -> auto& { return c.audio.header_bits; }));
    // Payload sizes follow from the sample settings; giving them only checks
    // that they agree.
    t.push_back(Setting{"ul_payload",
                        [](RunConfig& c, std::string_view v) {
                          const std::int64_t want = parse_int(v, "ul_payload");
                          if (want != c.audio.ul_packet_bytes()) {
                            throw ConfigError("ul_payload", "disagrees with ul_samples/ul_resolution/header_bits (" +
                                                                std::to_string(c.audio.ul_packet_bytes()) + " B)");
                          }
                        },
                        [](const RunConfig& c) { return std::to_string(c.audio.ul_packet_bytes()); }});
    t.push_back(Setting{"dl_payload",
                        [](RunConfig& c, std::string_view v) {
                          const std::int64_t want = parse_int(v, "dl_payload");
                          if (want != c.audio.dl_packet_bytes()) {
                            throw ConfigError("dl_payload", "disagrees with dl_samples/dl_resolution/header_bits (" +
                                                                std::to_string(c.audio.dl_packet_bytes()) + " B)");
                          }
                        },
                        [](const RunConfig& c) { return std::to_string(c.audio.dl_packet_bytes()); }});
    t.push_back(Setting{"tau_mean",
                        [](RunConfig& c, std::string_view v) { c.on_off.mean_s = parse_duration(v, "tau_mean").to_s(); },
                        [](const RunConfig& c) { return fmt_time(seconds_to_time(c.on_off.mean_s)); }});
    t.push_back(Setting{"tau_max",
                        [](RunConfig& c, std::string_view v) { c.on_off.bound_s = parse_duration(v, "tau_max").to_s(); },
                        [](const RunConfig& c) { return fmt_time(seconds_to_time(c.on_off.bound_s)); }});
    t.push_back(Setting{"removal_policy",
                        [](RunConfig& c, std::string_view v) {
                          v = trim(v);
                          if (v == "after_poll") {
                            c.removal_policy = RemovalPolicy::AfterPostExpiryPoll;
                          } else if (v == "on_expiry") {
                            c.removal_policy = RemovalPolicy::OnExpiry;
                          } else {
                            throw ConfigError("removal_policy", "expected after_poll or on_expiry");
                          }
                        },
                        [](const RunConfig& c) { return std::string(to_string(c.removal_policy)); }});
    t.push_back(Setting{"trace",
                        [](RunConfig& c, std::string_view v) {
                          v = trim(v);
                          if (v == "off") {
                            c.trace = TraceLevel::Off;
                          } else if (v == "protocol") {
                            c.trace = TraceLevel::Protocol;
                          } else if (v == "events") {
                            c.trace = TraceLevel::Events;
                          } else {
                            throw ConfigError("trace", "expected off, protocol or events");
                          }
                        },
                        [](const RunConfig& c) { return std::string(to_string(c.trace)); }});
    return t;
  }();
  return table;
}

const Setting* find_setting(std::string_view key) {
  for (const auto& s : settings()) {
    if (key == s.key) return &s;
  }
  return nullptr;
}

}  // namespace

void RunConfig::validate() const {
  phy.validate();
  frames.validate();
  sta_edca.validate();
  ap_edca.validate("ap_");
  audio.validate();
  if (duration <= SimTime{}) throw ConfigError("duration", "must be positive");
  if (n_total <= 0) throw ConfigError("n_total", "must be positive");
  if (n_initial < 0 || n_initial > n_total) throw ConfigError("n_initial", "must be in [0, n_total]");
  if (active < n_initial) throw ConfigError("active", "must be at least n_initial (" + std::to_string(n_initial) + ")");
  if (active > n_total) throw ConfigError("active", "exceeds n_total (" + std::to_string(n_total) + ")");
  if (txop <= SimTime{}) throw ConfigError("txop", "must be positive");
  if (ari < SimTime{}) throw ConfigError("ari", "must be non-negative");
  if (mu_edca_timer <= SimTime{}) throw ConfigError("mu_edca_timer", "must be positive");
  if (mu_edca_timer_ofdma <= SimTime{}) throw ConfigError("mu_edca_timer_ofdma", "must be positive");
  if (!(on_off.mean_s > 0.0)) throw ConfigError("tau_mean", "must be positive");
  if (!(on_off.bound_s > 0.0)) throw ConfigError("tau_max", "must be positive");
}

SimTime parse_duration(std::string_view text, std::string_view key) {
  const std::string k(key);
  text = trim(text);
  std::size_t num_end = 0;
  while (num_end < text.size() && (std::isdigit(static_cast<unsigned char>(text[num_end])) || text[num_end] == '.')) {
    ++num_end;
  }
  const std::string_view number = text.substr(0, num_end);
  const std::string_view unit = trim(text.substr(num_end));
  if (number.empty()) throw ConfigError(k, "expected a duration such as 16us, got '" + std::string(text) + "'");

  std::int64_t scale = 0;
  if (unit == "ns") {
    scale = 1;
  } else if (unit == "us" || unit == "\xC2\xB5s") {
    scale = 1'000;
  } else if (unit == "ms") {
    scale = 1'000'000;
  } else if (unit == "s") {
    scale = 1'000'000'000;
  } else if (unit == "TU" || unit == "tu") {
    scale = kTimeUnit.ns();
  } else {
    throw ConfigError(k, unit.empty() ? "missing unit (ns, us, ms, s, TU)" : "unknown unit '" + std::string(unit) + "'");
  }

  const auto dot = number.find('.');
  const std::string_view whole = number.substr(0, dot);
  const std::string_view frac = dot == std::string_view::npos ? std::string_view{} : number.substr(dot + 1);
  if (frac.find('.') != std::string_view::npos || (whole.empty() && frac.empty())) {
    throw ConfigError(k, "malformed number '" + std::string(number) + "'");
  }
  const std::int64_t w = whole.empty() ? 0 : parse_int(whole, key);
  // Exact: value = w * scale + f * scale / 10^d. Nine decimals cover the
  // finest unit (ns in seconds), which keeps f * scale within 64 bits.
  if (frac.size() > 9) throw ConfigError(k, "too many decimal places");
  std::int64_t f = 0;
  std::int64_t pow10 = 1;
  for (char ch : frac) {
    f = f * 10 + (ch - '0');
    pow10 *= 10;
  }
  if ((f * scale) % pow10 != 0) {
    throw ConfigError(k, "'" + std::string(text) + "' is not a whole number of nanoseconds");
  }
  if (w > (std::numeric_limits<std::int64_t>::max() - f * scale / pow10) / scale) {
    throw ConfigError(k, "duration too large");
  }
  return SimTime::from_ns(w * scale + f * scale / pow10);
}

std::string_view to_string(RemovalPolicy p) {
  return p == RemovalPolicy::AfterPostExpiryPoll ? "after_poll" : "on_expiry";
}

std::string_view to_string(TraceLevel level) {
  switch (level) {
    case TraceLevel::Off: return "off";
    case TraceLevel::Protocol: return "protocol";
    case TraceLevel::Events: return "events";
  }
  return "?";
}

void apply_setting(RunConfig& cfg, std::string_view key, std::string_view value) {
  key = trim(key);
  const Setting* s = find_setting(key);
  if (s == nullptr) throw ConfigError(std::string(key), "unknown key");
  s->set(cfg, value);
}

RunConfig parse_config(std::string_view text, RunConfig base) {
  RunConfig cfg = base;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError(std::string(trim(line)), "line " + std::to_string(line_no) + ": expected key = value");
    }
    apply_setting(cfg, line.substr(0, eq), line.substr(eq + 1));
  }
  cfg.validate();
  return cfg;
}

RunConfig load_config_file(const std::string& path, RunConfig base) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config", "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), base);
}

std::vector<std::string> config_keys() {
  std::vector<std::string> out;
  for (const auto& s : settings()) out.emplace_back(s.key);
  return out;
}

std::string canonical_text(const RunConfig& cfg) {
  std::string out;
  for (const auto& s : settings()) {
    out += s.key;
    out += " = ";
    out += s.get(cfg);
    out += '\n';
  }
  return out;
}

std::uint64_t config_hash(const RunConfig& cfg) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const auto& s : settings()) {
    const std::string_view key = s.key;
    if (key == "seed" || key == "trace") continue;
    const std::string line = std::string(key) + "=" + s.get(cfg) + "\n";
    for (unsigned char ch : line) {
      h ^= ch;
      h *= 0x100000001b3ULL;
    }
  }
  return h;
}

std::string hash_hex(std::uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace a2psim
