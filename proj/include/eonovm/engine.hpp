#pragma once

#include "eonovm/config.hpp"
#include "eonovm/metrics.hpp"
#include "eonovm/scheduler.hpp"

namespace eonovm {

/// Test/instrumentation hook; default callbacks do nothing.
class RunObserver {
 public:
  virtual ~RunObserver() = default;
  virtual void on_decision(const ReportEvent& report,
                           const ScheduleDecision& decision) {}
  virtual void on_window(Wavelength wavelength, SimTime start, SimTime end,
                         OnuId onu) {}
};

/// Executes one closed-loop run: REPORT arrivals drive the scheduler, GATEs
/// fly downstream, ONUs transmit within their windows, receivers sleep
/// through voids. Single-threaded and deterministic for a given config.
RunStats run(const SimConfig& cfg, RunObserver* observer = nullptr);

}  // namespace eonovm
