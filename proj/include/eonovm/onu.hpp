#pragma once

#include <cstdint>
#include <optional>

#include "eonovm/decision.hpp"
#include "eonovm/types.hpp"

namespace eonovm {

/// Per-ONU protocol state as seen by the OLT scheduler.
struct OnuState {
  OnuId id = 0;
  Wavelength tuned_wavelength = 0;  // updated when a GATE reaches the ONU
  SimTime rtt = 0;
  SimTime d_max = 0;
  SimTime d_const = 0;  // (d_max - rtt/2) / 2, integer division
  SimTime d_prev = 0;   // gap preceding the most recent REPORT
  std::int64_t queue_bytes = 0;
  std::optional<ScheduleDecision> in_flight;  // at most one outstanding grant
};

}  // namespace eonovm
