#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <ostream>

namespace mtr {

// Durations and timestamps, both in whole seconds. Timestamps count from
// the start of the simulated day (00:00).
using Seconds = std::int64_t;

inline constexpr Seconds kUnreachable = std::numeric_limits<Seconds>::max() / 4;

struct LocationId {
  std::int32_t value = -1;
  friend auto operator<=>(const LocationId&, const LocationId&) = default;
};

struct StationId {
  std::int32_t value = -1;
  friend auto operator<=>(const StationId&, const StationId&) = default;
};

struct TripId {
  std::int64_t value = -1;
  friend auto operator<=>(const TripId&, const TripId&) = default;
};

inline std::ostream& operator<<(std::ostream& os, LocationId id) { return os << "L" << id.value; }
inline std::ostream& operator<<(std::ostream& os, StationId id) { return os << "S" << id.value; }
inline std::ostream& operator<<(std::ostream& os, TripId id) { return os << "#" << id.value; }

}  // namespace mtr

template <>
struct std::hash<mtr::LocationId> {
  std::size_t operator()(mtr::LocationId id) const noexcept { return std::hash<std::int32_t>{}(id.value); }
};
template <>
struct std::hash<mtr::StationId> {
  std::size_t operator()(mtr::StationId id) const noexcept { return std::hash<std::int32_t>{}(id.value); }
};
template <>
struct std::hash<mtr::TripId> {
  std::size_t operator()(mtr::TripId id) const noexcept { return std::hash<std::int64_t>{}(id.value); }
};
