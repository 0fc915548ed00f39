#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "a2psim/channel.hpp"
#include "a2psim/config.hpp"
#include "a2psim/kernel.hpp"
#include "a2psim/metrics.hpp"
#include "a2psim/polling.hpp"
#include "a2psim/station.hpp"
#include "a2psim/traffic.hpp"

namespace a2psim {

struct RunResult {
  RunConfig config;
  std::vector<UlPacket> packets;
  std::vector<DlReception> dl;  // broadcasts that went out cleanly
  std::vector<SimTime> wakeups;
  std::uint64_t dl_generated = 0;
  std::uint64_t dl_lost = 0;  // broadcasts destroyed by a collision
  std::uint64_t ul_exchanges = 0;
  std::uint64_t ul_exchanges_with_data = 0;
  SimTime max_ul_exchange;
  std::uint64_t trigger_frames = 0;  // BSRP TFs and basic TFs sent
  std::uint64_t edca_ul_frames = 0;
  ChannelStats channel;
};

// One BSS: an AP, n_total STAs, the traffic workload and the shared medium,
// wired together according to the configured scheme.
class Network {
 public:
  // Validates the configuration and the TXOP feasibility; throws ConfigError.
  explicit Network(RunConfig config);
  ~Network();
  Network(const Network&) = delete;
  Network& operator=(const Network&) = delete;

  Kernel& kernel();
  Channel& channel();
  const Topology& topology() const;
  const ApState& ap() const;
  const StaState& sta(NodeId id) const;
  const PacketLedger& ledger() const;

  // Schedules the workload and runs to the configured duration.
  void run();
  // Steps for scripted scenarios: start() once, then advance the kernel.
  void start();
  // Injects an uplink packet outside the generated workload.
  void inject_packet(NodeId sta, SimTime gen_time, std::int64_t window);

  RunResult result() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// Builds a Network, runs it and returns the result.
RunResult simulate(const RunConfig& config);

}  // namespace a2psim
