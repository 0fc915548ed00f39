#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace a2psim {

enum class StreamId : std::uint64_t { Topology = 1, Traffic = 2, Backoff = 3 };

std::string_view to_string(StreamId id);

// One independent pseudo-random sequence per (seed, stream). Streams are
// separated so that, e.g., a change in backoff draws never shifts the
// topology or the on/off schedule.
class RngStream {
 public:
  RngStream(std::uint64_t seed, StreamId stream);

  std::uint64_t seed() const { return seed_; }
  StreamId stream() const { return stream_; }

  // Uniform integer in [lo, hi].
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);
  // Uniform real in [0, 1).
  double uniform01();
  double exponential(double mean);

  std::mt19937_64& engine() { return engine_; }

 private:
  std::uint64_t seed_;
  StreamId stream_;
  std::mt19937_64 engine_;
};

}  // namespace a2psim
