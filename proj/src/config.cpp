#include "eonovm/config.hpp"

#include <stdexcept>

namespace eonovm {

const char* to_string(DelayPolicy p) {
  return p == DelayPolicy::Fixed ? "fixed" : "variable";
}

const char* to_string(SchedulerKind s) {
  return s == SchedulerKind::EoNovm ? "eonovm" : "eft";
}

void SimConfig::validate() const {
  auto fail = [](const std::string& msg) { throw std::invalid_argument(msg); };

  if (n_onus < 1) fail("n_onus must be >= 1");
  if (n_wavelengths < 1) fail("n_wavelengths must be >= 1");
  if (peak_rate_bps <= 0) fail("peak_rate must be positive");
  if (line_rate_bps <= 0) fail("line_rate must be positive");
  if (8ll * kSecond % line_rate_bps != 0)
    fail("line_rate must divide 8e9 so the byte time is a whole number of ns");
  if (report_bytes < 0) fail("report_bytes must be >= 0");
  if (guard_ns < 0 || gate_gen_ns < 0 || gate_tx_ns < 0 || tune_step_ns < 0 ||
      sleep_wake_ns < 0)
    fail("durations must be >= 0");
  if (report_bytes * byte_time_ns() + guard_ns <= 0)
    fail("windows must have positive length (report_bytes or guard)");
  if (rtt_ns < 0) fail("rtt must be >= 0");
  if (rtt_ns % 2 != 0) fail("rtt must be an even number of ns");
  if (d_max_ns <= rtt_ns / 2) fail("delay bound unsatisfiable: d_max <= rtt/2");
  if (load < 0.0 || load > 1.0) fail("load must be within [0, 1]");
  if (alpha_on <= 1.0 || alpha_on > 2.0)
    fail("alpha_on must be in (1, 2]");
  if (alpha_off <= 1.0 || alpha_off > 2.0)
    fail("alpha_off must be in (1, 2]");
  if (packet_bytes <= 0) fail("packet_bytes must be positive");
  if (mean_on_ns <= 0) fail("mean_on must be positive");
  if (run_time_ns <= 0) fail("run_time must be positive");
  // Offered load above capacity is allowed (the run is flagged unstable),
  // so utilization() > 1 is deliberately not an error.
}

}  // namespace eonovm
