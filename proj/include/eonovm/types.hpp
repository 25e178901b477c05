#pragma once

#include <cstdint>
#include <limits>

namespace eonovm {

// Integer nanoseconds since the start of a run. All protocol arithmetic is
// closed over int64 so runs replay bit-exactly across platforms.
using SimTime = std::int64_t;

using OnuId = int;
using Wavelength = int;

inline constexpr SimTime kNanosecond = 1;
inline constexpr SimTime kMicrosecond = 1'000;
inline constexpr SimTime kMillisecond = 1'000'000;
inline constexpr SimTime kSecond = 1'000'000'000;
inline constexpr SimTime kNever = std::numeric_limits<SimTime>::max();

}  // namespace eonovm
