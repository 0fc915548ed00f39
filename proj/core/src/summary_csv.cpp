#include "a2psim/summary_csv.hpp"

#include <charconv>
#include <cstdio>
#include <istream>
#include <ostream>
#include <stdexcept>

#include "a2psim/config.hpp"

namespace a2psim {

namespace {

constexpr const char* kColumns[] = {
    "scheme",          "active_count",     "seed",          "config_hash",    "generated",     "on_time",
    "outdated",        "dropped",          "in_flight",     "loss_ratio",     "e2e_count",     "e2e_median_ns",
    "e2e_q1_ns",       "e2e_q3_ns",        "e2e_whisker_low_ns", "e2e_whisker_high_ns", "e2e_max_ns", "e2e_outliers",
    "e2e_mean_ns",     "wakeup_count",     "wakeup_mean_ns", "dl_generated",  "dl_sent",       "dl_lost",
    "ul_exchanges",    "max_ul_exchange_ns", "trigger_frames", "collisions",
};
constexpr std::size_t kColumnCount = std::size(kColumns);

std::string fmt_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  while (true) {
    const auto comma = line.find(',');
    out.push_back(line.substr(0, comma));
    if (comma == std::string_view::npos) break;
    line.remove_prefix(comma + 1);
  }
  return out;
}

template <typename T>
T parse_num(std::string_view s, const char* column) {
  T v{};
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) {
    throw std::runtime_error(std::string("summary.csv: bad value '") + std::string(s) + "' in column " + column);
  }
  return v;
}

std::uint64_t parse_hex(std::string_view s) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v, 16);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) {
    throw std::runtime_error("summary.csv: bad config_hash '" + std::string(s) + "'");
  }
  return v;
}

double parse_double(std::string_view s, const char* column) {
  const std::string tmp(s);
  char* end = nullptr;
  const double v = std::strtod(tmp.c_str(), &end);
  if (tmp.empty() || end != tmp.c_str() + tmp.size()) {
    throw std::runtime_error(std::string("summary.csv: bad value '") + tmp + "' in column " + column);
  }
  return v;
}

}  // namespace

std::string summary_header() {
  std::string out;
  for (std::size_t i = 0; i < kColumnCount; ++i) {
    if (i) out += ',';
    out += kColumns[i];
  }
  return out;
}

std::string format_summary_row(const RunSummary& r) {
  std::string out;
  auto field = [&out](const std::string& v) {
    if (!out.empty()) out += ',';
    out += v;
  };
  auto num = [&field](std::int64_t v) { field(std::to_string(v)); };
  field(std::string(cli_name(r.scheme)));
  num(r.active_count);
  field(std::to_string(r.seed));
  field(hash_hex(r.config_hash));
  num(r.counts.generated);
  num(r.counts.on_time);
  num(r.counts.outdated);
  num(r.counts.dropped);
  num(r.counts.in_flight);
  field(fmt_double(r.loss_ratio));
  if (r.e2e) {
    num(r.e2e->count);
    num(r.e2e->median);
    num(r.e2e->q1);
    num(r.e2e->q3);
    num(r.e2e->whisker_low);
    num(r.e2e->whisker_high);
    num(r.e2e->max);
    num(r.e2e->outliers);
    num(r.e2e->mean);
  } else {
    num(0);
    for (int i = 0; i < 8; ++i) out += ',';
  }
  num(r.wakeup_count);
  if (r.wakeup_mean) {
    num(*r.wakeup_mean);
  } else {
    out += ',';
  }
  num(r.dl_generated);
  num(r.dl_sent);
  num(r.dl_lost);
  num(r.ul_exchanges);
  num(r.max_ul_exchange);
  num(r.trigger_frames);
  num(r.collisions);
  return out;
}

RunSummary parse_summary_row(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  const auto f = split(line);
  if (f.size() != kColumnCount) {
    throw std::runtime_error("summary.csv: expected " + std::to_string(kColumnCount) + " fields, got " +
                             std::to_string(f.size()));
  }
  std::size_t i = 0;
  auto next_i64 = [&]() { const auto* c = kColumns[i]; return parse_num<std::int64_t>(f[i++], c); };

  RunSummary r;
  const auto scheme = parse_scheme(f[i++]);
  if (!scheme) throw std::runtime_error("summary.csv: unknown scheme '" + std::string(f[0]) + "'");
  r.scheme = *scheme;
  r.active_count = static_cast<int>(next_i64());
  r.seed = parse_num<std::uint64_t>(f[i], kColumns[i]);
  ++i;
  r.config_hash = parse_hex(f[i++]);
  r.counts.generated = next_i64();
  r.counts.on_time = next_i64();
  r.counts.outdated = next_i64();
  r.counts.dropped = next_i64();
  r.counts.in_flight = next_i64();
  r.loss_ratio = parse_double(f[i], kColumns[i]);
  ++i;
  const std::int64_t e2e_count = next_i64();
  if (f[i].empty()) {
    if (e2e_count != 0) throw std::runtime_error("summary.csv: e2e fields missing for nonzero e2e_count");
    i += 8;
  } else {
    E2EStats e;
    e.count = e2e_count;
    e.median = next_i64();
    e.q1 = next_i64();
    e.q3 = next_i64();
    e.whisker_low = next_i64();
    e.whisker_high = next_i64();
    e.max = next_i64();
    e.outliers = next_i64();
    e.mean = next_i64();
    r.e2e = e;
  }
  r.wakeup_count = next_i64();
  if (f[i].empty()) {
    ++i;
  } else {
    r.wakeup_mean = next_i64();
  }
  r.dl_generated = next_i64();
  r.dl_sent = next_i64();
  r.dl_lost = next_i64();
  r.ul_exchanges = next_i64();
  r.max_ul_exchange = next_i64();
  r.trigger_frames = next_i64();
  r.collisions = next_i64();
  return r;
}

std::vector<RunSummary> read_summary_csv(std::istream& in) {
  std::vector<RunSummary> rows;
  std::string line;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (line.empty() || line.front() == '#') continue;
    if (!header_seen) {
      if (line != summary_header()) throw std::runtime_error("summary.csv: unexpected header");
      header_seen = true;
      continue;
    }
    rows.push_back(parse_summary_row(line));
  }
  return rows;
}

SummaryWriter::SummaryWriter(const std::string& path) : out_(path, std::ios::trunc) {
  if (!out_) throw std::runtime_error("cannot write '" + path + "'");
  out_ << kSummaryVersionLine << '\n' << summary_header() << '\n';
  out_.flush();
}

void SummaryWriter::append(const RunSummary& row) {
  const std::string line = format_summary_row(row) + '\n';
  out_.write(line.data(), static_cast<std::streamsize>(line.size()));
  out_.flush();
  if (!out_) throw std::runtime_error("summary.csv: write failed");
}

void write_aggregate_csv(std::ostream& out, std::span<const CellAggregate> cells) {
  auto opt = [](const std::optional<double>& v) { return v ? fmt_double(*v) : std::string(); };
  out << kAggregateVersionLine << '\n'
      << "scheme,active_count,runs,loss_mean,loss_median,loss_p99,e2e_median_mean_ns,e2e_max_mean_ns,"
         "wakeup_mean_mean_ns\n";
  for (const auto& c : cells) {
    out << cli_name(c.scheme) << ',' << c.active_count << ',' << c.runs << ',' << fmt_double(c.loss_mean) << ','
        << fmt_double(c.loss_median) << ',' << fmt_double(c.loss_p99) << ',' << opt(c.e2e_median_mean) << ','
        << opt(c.e2e_max_mean) << ',' << opt(c.wakeup_mean_mean) << '\n';
  }
}

void write_packets_csv(std::ostream& out, std::span<const UlPacket> packets) {
  out << kPacketsVersionLine << '\n' << "id,sta,window,gen_ns,size_bytes,disposition,ap_rx_ns,on_period,first_of_period\n";
  for (const auto& p : packets) {
    out << p.id << ',' << p.sta << ',' << p.window << ',' << p.gen_time.ns() << ',' << p.size_bytes << ','
        << to_string(p.disposition) << ',';
    if (p.ap_rx) out << p.ap_rx->ns();
    out << ',' << p.on_period << ',' << (p.first_of_period ? 1 : 0) << '\n';
  }
}

}  // namespace a2psim
