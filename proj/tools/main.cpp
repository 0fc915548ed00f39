// a2psim: run one simulation or a sweep and write CSV results.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <thread>

#include "a2psim/config.hpp"
#include "a2psim/network.hpp"
#include "a2psim/runner.hpp"
#include "a2psim/summary.hpp"
#include "a2psim/summary_csv.hpp"

namespace fs = std::filesystem;
using namespace a2psim;

namespace {

SimTime parse_duration_flag(const std::string& v) {
  // Bare numbers are seconds.
  const bool bare = !v.empty() && v.find_first_not_of("0123456789.") == std::string::npos;
  return parse_duration(bare ? v + "s" : v, "duration");
}

void print_summary(std::ostream& os, const RunSummary& s) {
  os << "scheme=" << cli_name(s.scheme) << " active=" << s.active_count << " seed=" << s.seed << '\n'
     << "generated=" << s.counts.generated << " on_time=" << s.counts.on_time << " outdated=" << s.counts.outdated
     << " dropped=" << s.counts.dropped << " in_flight=" << s.counts.in_flight << '\n'
     << "loss_ratio=" << s.loss_ratio << '\n';
  if (s.e2e) {
    os << "e2e_ms median=" << s.e2e->median / 1e6 << " q1=" << s.e2e->q1 / 1e6 << " q3=" << s.e2e->q3 / 1e6
       << " whisker_high=" << s.e2e->whisker_high / 1e6 << " max=" << s.e2e->max / 1e6
       << " mean=" << s.e2e->mean / 1e6 << '\n';
  } else {
    os << "e2e_ms unavailable\n";
  }
  if (s.wakeup_mean) {
    os << "wakeup_ms mean=" << *s.wakeup_mean / 1e6 << " samples=" << s.wakeup_count << '\n';
  }
  os << "ul_exchanges=" << s.ul_exchanges << " max_ul_exchange_us=" << s.max_ul_exchange / 1e3
     << " dl_sent=" << s.dl_sent << " dl_lost=" << s.dl_lost << " collisions=" << s.collisions << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Discrete-event simulator of A2P polling and baseline channel access in one 802.11ax BSS"};

  std::string scheme;
  std::optional<int> active;
  std::optional<std::uint64_t> seed;
  std::string duration;
  std::string config_path;
  std::string out_dir;
  std::string sweep_path;
  std::string trace_level;
  bool packets = false;
  bool print_config = false;
  int threads = 1;

  app.add_option("--scheme", scheme, "a2p | edca | ofdma | ofdma-edca");
  app.add_option("--active", active, "active STAs (initial + joining)");
  app.add_option("--seed", seed, "random seed");
  app.add_option("--duration", duration, "simulated time, seconds or with unit (e.g. 500ms)");
  app.add_option("--config", config_path, "key = value configuration file")->check(CLI::ExistingFile);
  app.add_option("--out", out_dir, "output directory for CSV files");
  app.add_option("--sweep", sweep_path, "sweep file (schemes, counts, seeds, overrides)")->check(CLI::ExistingFile);
  app.add_option("--trace", trace_level, "off | protocol | events");
  app.add_flag("--packets", packets, "also write packets.csv (single run)");
  app.add_option("--threads", threads, "parallel runs in a sweep (0 = hardware threads)")->check(CLI::NonNegativeNumber);
  app.add_flag("--print-config", print_config, "print the effective configuration and exit");

  CLI11_PARSE(app, argc, argv);

  try {
    RunConfig cfg;
    if (!config_path.empty()) cfg = load_config_file(config_path);
    if (!scheme.empty()) apply_setting(cfg, "scheme", scheme);
    if (active) cfg.active = *active;
    if (seed) cfg.seed = *seed;
    if (!duration.empty()) cfg.duration = parse_duration_flag(duration);
    if (!trace_level.empty()) apply_setting(cfg, "trace", trace_level);
    cfg.validate();

    if (!out_dir.empty()) fs::create_directories(out_dir);
    auto out_path = [&](const char* name) { return (fs::path(out_dir) / name).string(); };

    if (!sweep_path.empty()) {
      SweepSpec spec = load_sweep_file(sweep_path, cfg);
      if (threads == 0) threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
      const std::size_t total = spec.expand().size();
      std::unique_ptr<SummaryWriter> writer;
      if (!out_dir.empty()) writer = std::make_unique<SummaryWriter>(out_path("summary.csv"));
      std::size_t n = 0;
      SweepOptions opts;
      opts.threads = threads;
      opts.on_row = [&](const RunSummary& row) {
        if (writer) {
          writer->append(row);
        } else {
          if (n == 0) std::cout << kSummaryVersionLine << '\n' << summary_header() << '\n';
          std::cout << format_summary_row(row) << '\n';
        }
        ++n;
        std::cerr << "[" << n << "/" << total << "] " << cli_name(row.scheme) << " active=" << row.active_count
                  << " seed=" << row.seed << " loss=" << row.loss_ratio << '\n';
      };
      const auto rows = run_sweep(spec, opts);
      if (!out_dir.empty()) {
        std::ofstream agg(out_path("aggregate.csv"));
        write_aggregate_csv(agg, aggregate(rows));
        std::ofstream echo(out_path("config.txt"));
        echo << canonical_text(spec.base);
      }
      return 0;
    }

    if (print_config) {
      std::cout << canonical_text(cfg);
      return 0;
    }

    Network net(cfg);
    std::ofstream trace_file;
    if (cfg.trace != TraceLevel::Off) {
      if (!out_dir.empty()) {
        trace_file.open(out_path("trace.log"));
        net.kernel().trace().write_to(trace_file);
      } else {
        net.kernel().trace().write_to(std::cerr);
      }
    }
    net.run();
    const RunResult result = net.result();
    const RunSummary summary = summarize(result);
    print_summary(std::cout, summary);
    if (!out_dir.empty()) {
      SummaryWriter writer(out_path("summary.csv"));
      writer.append(summary);
      std::ofstream echo(out_path("config.txt"));
      echo << canonical_text(cfg);
      if (packets) {
        std::ofstream pk(out_path("packets.csv"));
        write_packets_csv(pk, result.packets);
      }
    }
    return 0;
  } catch (const ConfigError& e) {
    std::cerr << "a2psim: configuration error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "a2psim: " << e.what() << '\n';
    return 1;
  }
}
