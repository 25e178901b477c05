#include "eonovm/metrics.hpp"

#include <algorithm>
#include <cstdio>

namespace eonovm {

double eta_max(const SimConfig& cfg) {
  return std::max(0.0, (1.0 - cfg.utilization()) * 100.0);
}

double efficiency_from_accounting(std::span<const ReceiverAccount> receivers,
                                  SimTime measured_time_ns) {
  if (measured_time_ns <= 0 || receivers.empty()) return 0.0;
  double asleep = 0;
  for (const auto& r : receivers) asleep += static_cast<double>(r.asleep_ns);
  return 100.0 * asleep /
         (static_cast<double>(receivers.size()) *
          static_cast<double>(measured_time_ns));
}

double t_v_agg_check(const RunStats& stats, const SimConfig& cfg) {
  const double overhead_ns =
      static_cast<double>(stats.report_count) *
      static_cast<double>(cfg.report_bytes * cfg.byte_time_ns() +
                          cfg.guard_ns) /
      static_cast<double>(cfg.n_wavelengths);
  const double predicted =
      (1.0 - cfg.utilization()) * static_cast<double>(stats.measured_time_ns) -
      overhead_ns;
  return static_cast<double>(stats.t_v_agg_ns) - predicted;
}

std::string csv_header() {
  return "seed,N,W,L,T_sw_ns,D_max_ns,T_rtt_ns,alpha_on,scheduler,"
         "delay_policy,efficiency_pct,eta_max_pct,avg_delay_ns,max_delay_ns,"
         "violations,M,voids_created,voids_exploited";
}

std::string csv_row(const SimConfig& cfg, const RunStats& stats) {
  char buf[512];
  std::snprintf(
      buf, sizeof(buf),
      "%llu,%d,%d,%.4f,%lld,%lld,%lld,%.2f,%s,%s,%.4f,%.4f,%.1f,%lld,%lld,"
      "%lld,%lld,%lld",
      static_cast<unsigned long long>(cfg.seed), cfg.n_onus, cfg.n_wavelengths,
      cfg.load, static_cast<long long>(cfg.sleep_wake_ns),
      static_cast<long long>(cfg.d_max_ns), static_cast<long long>(cfg.rtt_ns),
      cfg.alpha_on, to_string(cfg.scheduler), to_string(cfg.delay_policy),
      stats.efficiency_pct, stats.eta_max_pct, stats.avg_delay_ns,
      static_cast<long long>(stats.max_delay_ns),
      static_cast<long long>(stats.deadline_violations),
      static_cast<long long>(stats.report_count),
      static_cast<long long>(stats.voids_created),
      static_cast<long long>(stats.voids_exploited));
  return buf;
}

}  // namespace eonovm
