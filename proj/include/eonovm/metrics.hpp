#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "eonovm/config.hpp"
#include "eonovm/decision.hpp"
#include "eonovm/types.hpp"

namespace eonovm {

/// Time a receiver spent in each power state plus how often it slept.
/// active + waking + asleep always equals the accounted span exactly.
struct ReceiverAccount {
  SimTime active_ns = 0;
  SimTime waking_ns = 0;
  SimTime asleep_ns = 0;
  std::int64_t sleep_count = 0;  // completed sleep->wake ramps
};

/// Everything one run reports. Statistics cover the post-warm-up window
/// [warmup_ns, run_time_ns); `receivers_full` keeps whole-run accounting for
/// the conservation identity.
struct RunStats {
  SimTime run_time_ns = 0;
  SimTime warmup_ns = 0;
  SimTime measured_time_ns = 0;

  double efficiency_pct = 0;  // asleep time over all receivers, vs always-on
  double eta_max_pct = 0;

  double avg_delay_ns = 0;
  SimTime max_delay_ns = 0;
  std::int64_t packets_delivered = 0;
  std::int64_t packets_over_dmax = 0;
  std::int64_t packets_over_dmax_noneft = 0;  // late despite a met deadline

  std::int64_t deadline_violations = 0;  // fallback grants past the bound
  SimTime deadline_violation_excess_ns = 0;
  std::int64_t forced_eft = 0;  // budget already spent when the REPORT landed

  std::int64_t report_count = 0;
  std::int64_t voids_created = 0;    // carves that netted a new idle interval
  std::int64_t voids_exploited = 0;  // sleeps actually taken
  SimTime t_v_agg_ns = 0;            // mean idle (void) time per wavelength

  double offered_load = 0;  // measured fraction of per-ONU peak rate
  std::int64_t arrived_bytes = 0;
  std::int64_t delivered_bytes = 0;
  std::int64_t final_backlog_bytes = 0;
  bool stable = true;

  std::array<std::int64_t, kBranchCount> branch_counts{};

  std::vector<ReceiverAccount> receivers;       // clipped to measured window
  std::vector<ReceiverAccount> receivers_full;  // whole run

  std::int64_t branches(Branch b) const {
    return branch_counts[static_cast<std::size_t>(b)];
  }
};

/// Analytical efficiency ceiling at the configured load: the idle fraction
/// of total upstream capacity, with zero wake-ramp loss. Percent in [0,100].
double eta_max(const SimConfig& cfg);

/// Measured efficiency: total asleep time over W always-on receivers.
double efficiency_from_accounting(std::span<const ReceiverAccount> receivers,
                                  SimTime measured_time_ns);

/// Residual between the measured aggregate void time and the closed-form
/// prediction from offered load and REPORT count (per-wavelength average).
/// Small on stable runs; a diagnostic, not an assertion.
double t_v_agg_check(const RunStats& stats, const SimConfig& cfg);

/// CSV column header (no newline).
std::string csv_header();

/// One CSV row for a finished run (no newline). Fixed formatting so reruns
/// are byte-identical.
std::string csv_row(const SimConfig& cfg, const RunStats& stats);

}  // namespace eonovm
