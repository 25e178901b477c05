#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "eonovm/config.hpp"
#include "eonovm/decision.hpp"
#include "eonovm/horizons.hpp"
#include "eonovm/onu.hpp"
#include "eonovm/rng.hpp"
#include "eonovm/types.hpp"
#include "eonovm/voids.hpp"

namespace eonovm {

/// A REPORT message as it lands at the OLT.
struct ReportEvent {
  OnuId onu = 0;
  SimTime arrival = 0;
  std::int64_t requested_bytes = 0;  // gated: bytes buffered when it was sent
  std::int64_t seq = 0;
};

/// Earliest instant the first upstream bit can reach the OLT on wavelength j:
/// arrival + gate generation + gate transmission + RTT + tuning distance.
SimTime tc_min(const ReportEvent& report, const OnuState& onu, Wavelength j,
               const SimConfig& cfg);

/// Delay budget for the grant answering the current REPORT.
struct DelayBound {
  SimTime value = 0;
  bool forced_eft = false;  // budget exhausted before scheduling even starts
};

/// Constant per-cycle budget (d_max - rtt/2) / 2. Requires d_max > rtt/2.
SimTime fixed_delay_bound(const OnuState& onu);

/// History-dependent budget d_max - d_prev - rtt/2, clamped at zero with
/// forced_eft set when the previous gap already ate the whole budget.
DelayBound variable_delay_bound(const OnuState& onu);

/// Policy dispatch: Variable always recomputes; Fixed uses the constant
/// budget while d_prev <= d_const and falls back to the variable rule for
/// the cycle after a missed deadline stretched the gap.
DelayBound resolve_delay_bound(const OnuState& onu, const SimConfig& cfg);

/// Window duration for a grant: payload + REPORT + guard.
SimTime window_size(std::int64_t grant_bytes, const SimConfig& cfg);

/// Per-wavelength lower bounds on the first-bit instant beyond tc_min,
/// e.g. wake ramps of receivers currently asleep. Empty means none.
using NotBefore = std::span<const SimTime>;

/// Indices (canonical VoidSet order) of voids wide enough to hold a window
/// of t_w between tc_min and the deadline.
std::vector<int> valid_voids(const VoidSet& voids, const ReportEvent& report,
                             const OnuState& onu, const SimConfig& cfg,
                             SimTime d_q, SimTime t_w,
                             NotBefore not_before = {});

/// Wavelengths whose horizon placement can still meet the deadline. Bounds
/// are located by binary search on the sorted views; only candidates inside
/// those bounds are touched.
std::vector<int> valid_horizons(const HorizonSet& horizons,
                                const ReportEvent& report,
                                const OnuState& onu, const SimConfig& cfg,
                                SimTime d_q, SimTime t_w,
                                NotBefore not_before = {});

/// Split of the valid voids into start-clubbable (window can open flush at
/// the void start) and end-clubbable (window can close flush at its end).
std::pair<std::vector<int>, std::vector<int>> clubbing_sets(
    std::span<const int> valid, const VoidSet& voids,
    const ReportEvent& report, const OnuState& onu, const SimConfig& cfg,
    SimTime d_q, NotBefore not_before = {});

/// Valid horizons whose lf already reaches past tc_min, i.e. where extending
/// the horizon glues the window to scheduled traffic.
std::vector<int> horizon_clubbing_set(const HorizonSet& horizons,
                                      const ReportEvent& report,
                                      const OnuState& onu,
                                      const SimConfig& cfg, SimTime d_q,
                                      SimTime t_w, NotBefore not_before = {});

/// The void-minimizing online decision. Consumes at most one draw from `rng`
/// (branches VoidLatest / HorizonLatest pick uniformly among candidates).
/// Horizon views must be fresh.
ScheduleDecision schedule(const ReportEvent& report, const OnuState& onu,
                          const VoidSet& voids, const HorizonSet& horizons,
                          const SimConfig& cfg, Rng& rng,
                          NotBefore not_before = {});

/// Earliest-finish-time placement, void filling permitted; ties go to the
/// lowest wavelength index. Total: always returns a feasible placement.
/// Serves both as the overload fallback and as the baseline scheduler.
ScheduleDecision eft_schedule(const ReportEvent& report, const OnuState& onu,
                              const HorizonSet& horizons, const VoidSet& voids,
                              const SimConfig& cfg, NotBefore not_before = {});

}  // namespace eonovm
