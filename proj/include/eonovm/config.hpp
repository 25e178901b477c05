#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "eonovm/types.hpp"

namespace eonovm {

enum class DelayPolicy { Fixed, Variable };
enum class SchedulerKind { EoNovm, EftSleep };
enum class TrafficModel { ParetoOnOff, Poisson };

const char* to_string(DelayPolicy p);
const char* to_string(SchedulerKind s);

/// Full parameterization of one simulation run. Defaults are the reference
/// operating point: 1 Gb/s line, 100 Mb/s peak per ONU, 35 ns GATE
/// generation, 512 ns GATE transmission, 5 us guard, 1 us per-hop tuning,
/// 64 B REPORT, 0.2 ms RTT, 10 ms delay bound, 2 ms sleep-to-wake ramp.
struct SimConfig {
  int n_onus = 16;
  int n_wavelengths = 2;

  std::int64_t peak_rate_bps = 100'000'000;    // per-ONU peak arrival rate
  std::int64_t line_rate_bps = 1'000'000'000;  // upstream rate per wavelength

  int report_bytes = 64;
  SimTime guard_ns = 5 * kMicrosecond;
  SimTime gate_gen_ns = 35;
  SimTime gate_tx_ns = 512;
  SimTime tune_step_ns = 1 * kMicrosecond;   // tuning time per wavelength hop
  SimTime sleep_wake_ns = 2 * kMillisecond;  // receiver wake ramp

  SimTime rtt_ns = 200 * kMicrosecond;  // applied to every ONU
  SimTime d_max_ns = 10 * kMillisecond;

  double load = 0.5;  // fraction of peak_rate_bps offered per ONU
  double alpha_on = 1.2;
  double alpha_off = 1.4;
  int packet_bytes = 1500;
  SimTime mean_on_ns = 60 * kMicrosecond;  // mean ON burst duration
  double burst_cap_ratio = 3000;           // ON/OFF duration cap vs scale
  TrafficModel traffic = TrafficModel::ParetoOnOff;

  SimTime run_time_ns = 2 * kSecond;
  std::uint64_t seed = 1;

  DelayPolicy delay_policy = DelayPolicy::Fixed;
  SchedulerKind scheduler = SchedulerKind::EoNovm;

  /// Nanoseconds per byte on the line (exactly 8 ns at 1 Gb/s).
  SimTime byte_time_ns() const { return 8ll * kSecond / line_rate_bps; }

  /// Duration of a transmission window carrying `grant` payload bytes.
  SimTime window_ns(std::int64_t grant) const {
    return (grant + report_bytes) * byte_time_ns() + guard_ns;
  }

  SimTime d_const_ns() const { return (d_max_ns - rtt_ns / 2) / 2; }

  /// Offered load as a fraction of total upstream capacity.
  double utilization() const {
    return static_cast<double>(n_onus) * static_cast<double>(peak_rate_bps) *
           load / (static_cast<double>(n_wavelengths) *
                   static_cast<double>(line_rate_bps));
  }

  bool overloaded() const { return utilization() > 1.0; }

  /// Throws std::invalid_argument describing the first hard error.
  void validate() const;
};

}  // namespace eonovm
