// Acceptance run: the default sweep (4 schemes x {8,13,19,24,30,36} x 10
// seeds, 30 s each) plus the property checks. One PASS/FAIL line per
// criterion; exit status 1 if any fails.
//
//   a2psim_acceptance [--threads N] [--csv summary.csv]

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "a2psim/network.hpp"
#include "a2psim/phy.hpp"
#include "a2psim/rng.hpp"
#include "a2psim/runner.hpp"
#include "a2psim/summary_csv.hpp"
#include "a2psim/traffic.hpp"

namespace {

using namespace a2psim;
using namespace a2psim::literals;

int failures = 0;

void report(bool ok, const char* name, const std::string& detail) {
  std::printf("%s %s: %s\n", ok ? "PASS" : "FAIL", name, detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

struct Cell {
  std::vector<const RunSummary*> rows;

  double loss() const {
    double s = 0;
    for (const auto* r : rows) s += r->loss_ratio;
    return s / static_cast<double>(rows.size());
  }
  std::optional<double> mean_of(auto field) const {
    double s = 0;
    int n = 0;
    for (const auto* r : rows) {
      if (auto v = field(*r)) {
        s += static_cast<double>(*v);
        ++n;
      }
    }
    if (n == 0) return std::nullopt;
    return s / n;
  }
  std::optional<double> median_e2e() const {
    return mean_of([](const RunSummary& r) -> std::optional<std::int64_t> {
      return r.e2e ? std::optional(r.e2e->median) : std::nullopt;
    });
  }
  std::optional<double> whisker_high() const {
    return mean_of([](const RunSummary& r) -> std::optional<std::int64_t> {
      return r.e2e ? std::optional(r.e2e->whisker_high) : std::nullopt;
    });
  }
  std::optional<double> e2e_max() const {
    return mean_of([](const RunSummary& r) -> std::optional<std::int64_t> {
      return r.e2e ? std::optional(r.e2e->max) : std::nullopt;
    });
  }
  std::optional<double> wakeup() const {
    return mean_of([](const RunSummary& r) { return r.wakeup_mean; });
  }
};

using Grid = std::map<std::pair<Scheme, int>, Cell>;

double ms(std::optional<double> ns) { return ns ? *ns / 1e6 : std::nan(""); }

void check_capacity(const Grid& g, const std::vector<int>& counts) {
  bool ok = true;
  std::string d;
  for (int n : counts) {
    const double l = g.at({Scheme::A2P, n}).loss();
    if (n <= 18 && l != 0.0) ok = false;
    if (n == 24 && l > 0.10) ok = false;
    d += std::to_string(n) + "=" + fmt("%.3g", l) + " ";
  }
  report(ok, "capacity_a2p (loss 0 for n<=18, <=0.10 at 24)", d);

  std::optional<int> first;
  d.clear();
  for (int n : counts) {
    const double l = g.at({Scheme::EdcaOnly, n}).loss();
    if (!first && l > 0.0) first = n;
    d += std::to_string(n) + "=" + fmt("%.3g", l) + " ";
  }
  report(first && *first >= 9 && *first <= 14, "capacity_edca (first nonzero-loss count in [9,14])",
         "first=" + (first ? std::to_string(*first) : std::string("none")) + " " + d);
}

void check_ordering(const Grid& g, const std::vector<int>& counts) {
  bool ok = true;
  std::string d;
  for (int n : counts) {
    if (n < 19) continue;
    const Cell& a = g.at({Scheme::A2P, n});
    const double la = a.loss();
    const double lo = g.at({Scheme::OfdmaOnly, n}).loss();
    const double lp = g.at({Scheme::OfdmaPlusEdca, n}).loss();
    if (!(la < lo && la < lp)) ok = false;
    const auto ma = a.median_e2e();
    if (!ma) ok = false;
    for (Scheme s : {Scheme::EdcaOnly, Scheme::OfdmaOnly, Scheme::OfdmaPlusEdca}) {
      const auto m = g.at({s, n}).median_e2e();
      if (ma && m && *m < *ma) ok = false;
    }
    d += std::to_string(n) + ":loss " + fmt("%.3g", la) + "<" + fmt("%.3g", lo) + "," + fmt("%.3g", lp) +
         " med_ms a2p=" + fmt("%.2f", ms(ma)) + " edca=" + fmt("%.2f", ms(g.at({Scheme::EdcaOnly, n}).median_e2e())) +
         " ofdma=" + fmt("%.2f", ms(g.at({Scheme::OfdmaOnly, n}).median_e2e())) +
         " ofdma-edca=" + fmt("%.2f", ms(g.at({Scheme::OfdmaPlusEdca, n}).median_e2e())) + "; ";
  }
  report(ok, "ordering (n>=19: a2p loss below poll-all schemes, a2p median E2E minimal)", d);
}

void check_wakeup(const Grid& g, const std::vector<int>& counts) {
  bool ok = true;
  std::string d;
  for (int n : counts) {
    const auto a = g.at({Scheme::A2P, n}).wakeup();
    const auto e = g.at({Scheme::EdcaOnly, n}).wakeup();
    if (n <= 30 && (!a || *a >= 6e6)) ok = false;
    if (n >= 19 && !(a && e && *a < *e)) ok = false;
    d += std::to_string(n) + ":" + fmt("%.2f", ms(a)) + "/" + fmt("%.2f", ms(e)) + " ";
  }
  const auto e8 = g.at({Scheme::EdcaOnly, 8}).wakeup();
  const auto e19 = g.at({Scheme::EdcaOnly, 19}).wakeup();
  const auto e30 = g.at({Scheme::EdcaOnly, 30}).wakeup();
  if (!(e8 && e19 && e30 && *e8 < *e19 && *e19 < *e30)) ok = false;
  report(ok, "wakeup (a2p < 6 ms for n<=30, below edca for n>=19, edca increasing 8<19<30)",
         "a2p/edca ms " + d);
}

void check_outliers(const Grid& g) {
  const auto we = g.at({Scheme::EdcaOnly, 19}).whisker_high();
  const auto wa = g.at({Scheme::A2P, 19}).whisker_high();
  const double ratio = (we && wa) ? *we / *wa : 0.0;
  const auto me = g.at({Scheme::EdcaOnly, 19}).e2e_max();
  const auto ma = g.at({Scheme::A2P, 19}).e2e_max();
  const double max_ratio = (me && ma) ? *me / *ma : 0.0;
  report(ratio >= 2.0, "outliers (edca upper whisker at 19 >= 2x a2p)",
         "whisker ms edca=" + fmt("%.2f", ms(we)) + " a2p=" + fmt("%.2f", ms(wa)) + " ratio=" + fmt("%.2f", ratio) +
             " (max E2E ratio " + fmt("%.2f", max_ratio) + ")");
}

void check_determinism(const std::vector<RunSummary>& rows, const SweepSpec& spec) {
  const auto configs = spec.expand();
  bool ok = true;
  int checked = 0;
  for (std::size_t i = 0; i < configs.size(); i += 37) {
    RunConfig c = configs[i];
    c.duration = std::min(c.duration, 3_s);
    const std::string a = format_summary_row(run_one(c));
    const std::string b = format_summary_row(run_one(c));
    ok = ok && a == b;
    ++checked;
  }
  report(ok, "determinism (byte-identical rows for repeated runs)", std::to_string(checked) + " configs");
  (void)rows;
}

void check_conservation(const std::vector<RunSummary>& rows) {
  bool ok = true;
  for (const auto& r : rows) {
    const auto& c = r.counts;
    ok = ok && c.on_time + c.outdated + c.dropped + c.in_flight == c.generated && c.generated > 0;
  }
  report(ok, "conservation (dispositions sum to generated)", std::to_string(rows.size()) + " runs");
}

void check_txop(const std::vector<RunSummary>& rows) {
  std::int64_t longest = 0;
  for (const auto& r : rows) longest = std::max(longest, r.max_ul_exchange);
  report(longest <= (2080_us).ns(), "txop (every UL exchange <= 2080 us)",
         "longest " + fmt("%.1f", static_cast<double>(longest) / 1e3) + " us");
}

void check_edca_exclusion() {
  std::int64_t violations = 0;
  std::int64_t disables = 0;
  for (Scheme s : {Scheme::A2P, Scheme::OfdmaOnly}) {
    for (int n : {8, 19, 36}) {
      RunConfig c;
      c.scheme = s;
      c.active = n;
      c.duration = 5_s;
      c.trace = TraceLevel::Protocol;
      Network net(c);
      std::vector<char> disabled(static_cast<std::size_t>(c.n_total) + 1, 0);
      net.kernel().trace().add_sink([&](const TraceRecord& r) {
        if (r.node <= 0) return;
        auto& d = disabled[static_cast<std::size_t>(r.node)];
        if (r.kind == "edca_disable" || r.kind == "edca_timer_reset") {
          d = 1;
          ++disables;
        } else if (r.kind == "edca_enable") {
          d = 0;
        } else if ((r.kind == "contend" || r.kind == "edca_tx") && d) {
          ++violations;
        }
      });
      net.run();
    }
  }
  report(violations == 0 && disables > 0, "edca_exclusion (no contention from disabled STAs)",
         std::to_string(violations) + " violations over " + std::to_string(disables) + " disable/reset events");
}

void check_round_robin() {
  RunConfig c;
  c.scheme = Scheme::OfdmaOnly;
  c.active = 18;
  c.duration = 2_s;
  c.trace = TraceLevel::Protocol;
  Network net(c);
  std::vector<std::vector<NodeId>> polls;
  net.kernel().trace().add_sink([&](const TraceRecord& r) {
    if (r.kind != "bsrp") return;
    std::vector<NodeId> ids;
    const std::string list = r.detail.substr(r.detail.find('=') + 1);
    std::size_t pos = 0;
    while (pos < list.size()) {
      std::size_t end = list.find(',', pos);
      if (end == std::string::npos) end = list.size();
      ids.push_back(static_cast<NodeId>(std::stoi(list.substr(pos, end - pos))));
      pos = end + 1;
    }
    polls.push_back(std::move(ids));
  });
  net.run();

  constexpr int kWindow = 6;
  const int L = c.n_total;
  std::size_t windows = 0;
  std::size_t exact = 0;
  std::size_t missing = 0;
  for (std::size_t start = 0; start + kWindow <= polls.size(); ++start) {
    std::vector<int> seen(static_cast<std::size_t>(L) + 1, 0);
    for (std::size_t k = start; k < start + kWindow; ++k) {
      for (NodeId s : polls[k]) ++seen[static_cast<std::size_t>(s)];
    }
    bool all_once = true;
    for (int s = 1; s <= L; ++s) {
      if (seen[static_cast<std::size_t>(s)] != 1) all_once = false;
      if (seen[static_cast<std::size_t>(s)] == 0) ++missing;
    }
    ++windows;
    if (all_once) ++exact;
  }
  report(windows > 0 && exact == windows, "round_robin (L=100, m=18: every STA exactly once per 6 UL exchanges)",
         std::to_string(exact) + "/" + std::to_string(windows) + " windows exact, " + std::to_string(missing) +
             " STA-windows with no poll");
}

void check_airtime_oracle() {
  constexpr int kRu26[] = {12, 24, 36, 48, 72, 96, 108, 120, 144, 160, 180, 200};
  std::mt19937_64 gen(7);
  std::uniform_int_distribution<std::int64_t> bytes(1, 12'000);
  std::uniform_int_distribution<int> mcs(0, 11);
  const PhyProfile p;
  int mismatches = 0;
  for (int i = 0; i < 1000; ++i) {
    const std::int64_t b = bytes(gen);
    const int m = mcs(gen);
    const std::int64_t symbols = (8 * b + kRu26[m] - 1) / kRu26[m];
    const std::int64_t want = 44'000 + symbols * 13'600;
    if (frame_airtime(b, 26, m, p, PreambleKind::HeTb).total.ns() != want) ++mismatches;
  }
  report(mismatches == 0, "airtime_oracle (1000 random cases, exact)", std::to_string(mismatches) + " mismatches");
}

void check_bounded_exp() {
  RngStream rng(11, StreamId::Traffic);
  double sum = 0;
  constexpr int kDraws = 100'000;
  for (int i = 0; i < kDraws; ++i) sum += sample_bounded_exp(rng, 10.0, 25.0).to_s();
  const double mean = sum / kDraws;
  const double want = 10.0 * (1.0 - std::exp(-2.5));
  report(std::abs(mean - want) <= 0.02 * want, "bounded_exp (mean of 1e5 draws within 2% of 10(1-e^-2.5))",
         "mean " + fmt("%.4f", mean) + " s, target " + fmt("%.4f", want) + " s");
}

void check_conformance() {
  RunConfig c;
  c.active = 0;
  c.n_initial = 0;
  c.n_total = 4;
  c.duration = 300_ms;
  c.trace = TraceLevel::Protocol;
  Network net(c);
  std::vector<std::string> seq;
  net.kernel().trace().add_sink([&](const TraceRecord& r) {
    static const std::set<std::string> kinds{"contend", "edca_tx", "edca_disable", "edca_timer_reset",
                                             "edca_enable", "list_add", "list_remove", "tf"};
    if (!kinds.contains(r.kind) || (r.kind == "contend" && r.node == kApId)) return;
    seq.push_back(r.kind + " " + std::to_string(r.node));
  });
  net.inject_packet(1, 1_ms, 0);
  net.inject_packet(1, 20_ms, 4);
  net.inject_packet(1, 200_ms, 40);
  net.run();
  const std::vector<std::string> want{"contend 1",     "edca_tx 1",      "edca_disable 1", "list_add 0",
                                      "tf 0",          "edca_timer_reset 1", "edca_enable 1", "list_remove 0",
                                      "contend 1",     "edca_tx 1",      "edca_disable 1", "list_add 0",
                                      "edca_enable 1", "list_remove 0"};
  report(seq == want, "flow_conformance (activation, ack, poll, expiry, removal, reactivation)",
         std::to_string(seq.size()) + " transitions");
}

}  // namespace

int main(int argc, char** argv) {
  int threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  std::string csv;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--threads") == 0 && i + 1 < argc) {
      threads = std::max(1, std::atoi(argv[++i]));
    } else if (std::strcmp(argv[i], "--csv") == 0 && i + 1 < argc) {
      csv = argv[++i];
    } else {
      std::fprintf(stderr, "usage: %s [--threads N] [--csv PATH]\n", argv[0]);
      return 2;
    }
  }

  const SweepSpec spec;
  const auto t0 = std::chrono::steady_clock::now();
  std::optional<SummaryWriter> writer;
  if (!csv.empty()) writer.emplace(csv);
  SweepOptions opt;
  opt.threads = threads;
  if (writer) opt.on_row = [&](const RunSummary& r) { writer->append(r); };
  const auto rows = run_sweep(spec, opt);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::printf("sweep: %zu runs in %.0f s\n", rows.size(), secs);

  Grid grid;
  for (const auto& r : rows) grid[{r.scheme, r.active_count}].rows.push_back(&r);

  check_capacity(grid, spec.active_counts);
  check_ordering(grid, spec.active_counts);
  check_wakeup(grid, spec.active_counts);
  check_outliers(grid);
  check_determinism(rows, spec);
  check_conservation(rows);
  check_edca_exclusion();
  check_round_robin();
  check_airtime_oracle();
  check_bounded_exp();
  check_txop(rows);
  check_conformance();

  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
