#pragma once

#include <compare>
#include <cstdint>
#include <limits>
#include <ostream>

namespace a2psim {

// Integer nanoseconds. Used both for instants (since simulation start) and
// for durations; every protocol timing in the model is a whole number of ns.
class SimTime {
 public:
  constexpr SimTime() = default;

  static constexpr SimTime from_ns(std::int64_t ns) { return SimTime{ns}; }
  static constexpr SimTime from_us(std::int64_t us) { return SimTime{us * 1'000}; }
  static constexpr SimTime from_ms(std::int64_t ms) { return SimTime{ms * 1'000'000}; }
  static constexpr SimTime from_s(std::int64_t s) { return SimTime{s * 1'000'000'000}; }
  static constexpr SimTime max() { return SimTime{std::numeric_limits<std::int64_t>::max()}; }

  constexpr std::int64_t ns() const { return ticks_; }
  constexpr double to_us() const { return static_cast<double>(ticks_) / 1e3; }
  constexpr double to_ms() const { return static_cast<double>(ticks_) / 1e6; }
  constexpr double to_s() const { return static_cast<double>(ticks_) / 1e9; }

  constexpr auto operator<=>(const SimTime&) const = default;

  constexpr SimTime& operator+=(SimTime o) { ticks_ += o.ticks_; return *this; }
  constexpr SimTime& operator-=(SimTime o) { ticks_ -= o.ticks_; return *this; }

  friend constexpr SimTime operator+(SimTime a, SimTime b) { return SimTime{a.ticks_ + b.ticks_}; }
  friend constexpr SimTime operator-(SimTime a, SimTime b) { return SimTime{a.ticks_ - b.ticks_}; }
  friend constexpr SimTime operator*(SimTime a, std::int64_t k) { return SimTime{a.ticks_ * k}; }
  friend constexpr SimTime operator*(std::int64_t k, SimTime a) { return SimTime{a.ticks_ * k}; }
  // Whole number of `b` periods contained in `a`.
  friend constexpr std::int64_t operator/(SimTime a, SimTime b) { return a.ticks_ / b.ticks_; }
  friend constexpr SimTime operator%(SimTime a, SimTime b) { return SimTime{a.ticks_ % b.ticks_}; }

  friend std::ostream& operator<<(std::ostream& os, SimTime t) { return os << t.ticks_ << "ns"; }

 private:
  constexpr explicit SimTime(std::int64_t ticks) : ticks_(ticks) {}
  std::int64_t ticks_ = 0;
};

// Time unit of the 802.11 standard.
inline constexpr SimTime kTimeUnit = SimTime::from_us(1024);

constexpr SimTime time_units(std::int64_t n) { return kTimeUnit * n; }

// Smallest multiple of `step` at or after `t`, measured from `origin`.
constexpr SimTime align_up(SimTime t, SimTime origin, SimTime step) {
  if (t <= origin) return origin;
  const std::int64_t k = ((t - origin).ns() + step.ns() - 1) / step.ns();
  return origin + step * k;
}

namespace literals {
constexpr SimTime operator""_ns(unsigned long long v) { return SimTime::from_ns(static_cast<std::int64_t>(v)); }
constexpr SimTime operator""_us(unsigned long long v) { return SimTime::from_us(static_cast<std::int64_t>(v)); }
constexpr SimTime operator""_ms(unsigned long long v) { return SimTime::from_ms(static_cast<std::int64_t>(v)); }
constexpr SimTime operator""_s(unsigned long long v) { return SimTime::from_s(static_cast<std::int64_t>(v)); }
}  // namespace literals

using NodeId = int;
inline constexpr NodeId kApId = 0;
inline constexpr NodeId kNoNode = -1;

}  // namespace a2psim
