#pragma once

#include <cstdint>

#include "eonovm/types.hpp"

namespace eonovm {

/// Which rule of the decision tree produced a grant placement.
enum class Branch {
  VoidClubStart,  // window opens flush at a void's start
  VoidClubEnd,    // window closes flush at a void's end
  HorizonClub,    // window extends a wavelength's horizon with no gap
  VoidLatest,     // latest placement inside a randomly chosen valid void
  HorizonLatest,  // latest placement beyond a randomly chosen valid horizon
  EftFallback,    // earliest-finish-time; delay bound may be exceeded
};

inline constexpr int kBranchCount = 6;
const char* to_string(Branch b);

/// Output of one scheduling decision. Times are absolute except gate_time,
/// which is the GATE generation offset beyond the earliest possible instant:
/// first_bit == gate_time + tc_min(wavelength) always holds.
struct ScheduleDecision {
  OnuId onu = 0;
  Wavelength wavelength = 0;
  SimTime gate_time = 0;
  SimTime first_bit = 0;
  SimTime window = 0;  // duration, guard included
  std::int64_t grant_bytes = 0;
  Branch branch = Branch::EftFallback;
  SimTime deadline = 0;
  SimTime violation = 0;  // finish past the deadline; nonzero only on fallback

  SimTime window_end() const { return first_bit + window; }
};

}  // namespace eonovm
