#include "a2psim/runner.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <charconv>
#include <exception>
#include <fstream>
#include <mutex>
#include <optional>
#include <sstream>
#include <thread>

#include "a2psim/network.hpp"

namespace a2psim {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_list(std::string_view v) {
  std::vector<std::string_view> out;
  while (!v.empty()) {
    const auto comma = v.find(',');
    const auto item = trim(v.substr(0, comma));
    if (!item.empty()) out.push_back(item);
    if (comma == std::string_view::npos) break;
    v.remove_prefix(comma + 1);
  }
  return out;
}

std::uint64_t parse_u64(std::string_view s, const char* key) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) {
    throw ConfigError(key, "expected a non-negative integer, got '" + std::string(s) + "'");
  }
  return v;
}

// "1,2,5" or "1-10" or a mix.
std::vector<std::uint64_t> parse_ranges(std::string_view v, const char* key) {
  std::vector<std::uint64_t> out;
  for (std::string_view item : split_list(v)) {
    const auto dash = item.find('-');
    if (dash == std::string_view::npos) {
      out.push_back(parse_u64(item, key));
      continue;
    }
    const std::uint64_t lo = parse_u64(trim(item.substr(0, dash)), key);
    const std::uint64_t hi = parse_u64(trim(item.substr(dash + 1)), key);
    if (hi < lo) throw ConfigError(key, "empty range '" + std::string(item) + "'");
    for (std::uint64_t x = lo; x <= hi; ++x) out.push_back(x);
  }
  if (out.empty()) throw ConfigError(key, "empty list");
  return out;
}

}  // namespace

RunSummary run_one(const RunConfig& config) { return summarize(simulate(config)); }

std::vector<RunConfig> SweepSpec::expand() const {
  std::vector<Scheme> s = schemes;
  std::vector<int> c = active_counts;
  std::vector<std::uint64_t> k = seeds;
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  std::sort(c.begin(), c.end());
  c.erase(std::unique(c.begin(), c.end()), c.end());
  std::sort(k.begin(), k.end());
  k.erase(std::unique(k.begin(), k.end()), k.end());
  std::vector<RunConfig> out;
  out.reserve(s.size() * c.size() * k.size());
  for (Scheme scheme : s) {
    for (int count : c) {
      for (std::uint64_t seed : k) {
        RunConfig cfg = base;
        cfg.scheme = scheme;
        cfg.active = count;
        cfg.seed = seed;
        cfg.validate();
        out.push_back(std::move(cfg));
      }
    }
  }
  return out;
}

SweepSpec parse_sweep(std::string_view text, RunConfig base) {
  SweepSpec spec;
  std::string passthrough;
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
      throw ConfigError(std::string(line), "line " + std::to_string(line_no) + ": expected key = value");
    }
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    if (key == "schemes") {
      spec.schemes.clear();
      for (auto name : split_list(value)) {
        auto s = parse_scheme(name);
        if (!s) throw ConfigError("schemes", "unknown scheme '" + std::string(name) + "'");
        spec.schemes.push_back(*s);
      }
      if (spec.schemes.empty()) throw ConfigError("schemes", "empty list");
    } else if (key == "counts") {
      spec.active_counts.clear();
      for (std::uint64_t c : parse_ranges(value, "counts")) spec.active_counts.push_back(static_cast<int>(c));
    } else if (key == "seeds") {
      spec.seeds = parse_ranges(value, "seeds");
    } else {
      passthrough.append(line);
      passthrough += '\n';
    }
  }
  spec.base = parse_config(passthrough, base);
  for (int c : spec.active_counts) {
    if (c < spec.base.n_initial) {
      throw ConfigError("counts", "active count " + std::to_string(c) + " is below n_initial");
    }
  }
  return spec;
}

SweepSpec load_sweep_file(const std::string& path, RunConfig base) {
  std::ifstream in(path);
  if (!in) throw ConfigError("sweep", "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_sweep(ss.str(), base);
}

std::vector<RunSummary> run_sweep(const SweepSpec& spec, const SweepOptions& options) {
  const std::vector<RunConfig> jobs = spec.expand();
  const std::size_t n = jobs.size();
  std::vector<std::optional<RunSummary>> done(n);
  std::vector<RunSummary> rows;
  rows.reserve(n);

  std::mutex mu;
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::size_t error_index = n;
  std::size_t emitted = 0;

  // Emits every finished row that has no unfinished predecessor.
  auto flush = [&] {
    while (emitted < n && emitted < error_index && done[emitted]) {
      rows.push_back(*done[emitted]);
      if (options.on_row) options.on_row(rows.back());
      ++emitted;
    }
  };

  auto worker = [&] {
    while (!failed.load()) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        RunSummary s = run_one(jobs[i]);
        std::lock_guard lock(mu);
        done[i] = std::move(s);
        flush();
      } catch (...) {
        std::lock_guard lock(mu);
        if (i < error_index) {
          error_index = i;
          error = std::current_exception();
        }
        failed.store(true);
        flush();
        return;
      }
    }
  };

  const int threads = std::max(1, std::min<int>(options.threads, static_cast<int>(n)));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (error) std::rethrow_exception(error);
  return rows;
}

}  // namespace a2psim
