#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "a2psim/config.hpp"
#include "a2psim/summary.hpp"

namespace a2psim {

RunSummary run_one(const RunConfig& config);

struct SweepSpec {
  std::vector<Scheme> schemes{Scheme::A2P, Scheme::EdcaOnly, Scheme::OfdmaOnly, Scheme::OfdmaPlusEdca};
  std::vector<int> active_counts{8, 13, 19, 24, 30, 36};
  std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  RunConfig base;

  // Every (scheme, count, seed) combination, sorted by scheme, count, seed.
  std::vector<RunConfig> expand() const;
};

// Sweep file: "schemes = a2p,edca", "counts = 8,19", "seeds = 1-10" plus any
// run-configuration key, which then applies to every run.
SweepSpec parse_sweep(std::string_view text, RunConfig base = {});
SweepSpec load_sweep_file(const std::string& path, RunConfig base = {});

struct SweepOptions {
  int threads = 1;
  // Called with each row in output order, as soon as all earlier rows are
  // done.
  std::function<void(const RunSummary&)> on_row;
};

// Runs every combination. Rows come back (and reach on_row) in expand()
// order regardless of completion order. If a run fails, rows before it are
// still delivered and the exception is rethrown.
std::vector<RunSummary> run_sweep(const SweepSpec& spec, const SweepOptions& options = {});

}  // namespace a2psim
