#include "a2psim/rng.hpp"

#include <cmath>
#include <limits>

namespace a2psim {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

std::string_view to_string(StreamId id) {
  switch (id) {
    case StreamId::Topology: return "topology";
    case StreamId::Traffic: return "traffic";
    case StreamId::Backoff: return "backoff";
  }
  return "?";
}

RngStream::RngStream(std::uint64_t seed, StreamId stream)
    : seed_(seed),
      stream_(stream),
      engine_(splitmix64(splitmix64(seed) ^ (static_cast<std::uint64_t>(stream) * 0xd1342543de82ef95ULL))) {}

std::int64_t RngStream::uniform_int(std::int64_t lo, std::int64_t hi) {
  // Rejection sampling on the raw engine keeps draws identical across
  // standard library implementations.
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  if (span == 0) return lo + static_cast<std::int64_t>(engine_());
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - (std::numeric_limits<std::uint64_t>::max() % span);
  std::uint64_t v;
  do {
    v = engine_();
  } while (v >= limit);
  return lo + static_cast<std::int64_t>(v % span);
}

double RngStream::uniform01() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double RngStream::exponential(double mean) {
  return -mean * std::log1p(-uniform01());
}

}  // namespace a2psim
