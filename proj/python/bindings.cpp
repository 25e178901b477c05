#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "eonovm/config.hpp"
#include "eonovm/engine.hpp"
#include "eonovm/metrics.hpp"
#include "eonovm/scheduler.hpp"
#include "eonovm/traffic.hpp"

namespace py = pybind11;

using namespace eonovm;

PYBIND11_MODULE(_eonovm, m) {
  m.doc() = "TWDM-PON upstream scheduling simulator core";

  py::enum_<DelayPolicy>(m, "DelayPolicy")
      .value("Fixed", DelayPolicy::Fixed)
      .value("Variable", DelayPolicy::Variable);

  py::enum_<SchedulerKind>(m, "SchedulerKind")
      .value("EoNovm", SchedulerKind::EoNovm)
      .value("EftSleep", SchedulerKind::EftSleep);

  py::enum_<TrafficModel>(m, "TrafficModel")
      .value("ParetoOnOff", TrafficModel::ParetoOnOff)
      .value("Poisson", TrafficModel::Poisson);

  py::enum_<Branch>(m, "Branch")
      .value("VoidClubStart", Branch::VoidClubStart)
      .value("VoidClubEnd", Branch::VoidClubEnd)
      .value("HorizonClub", Branch::HorizonClub)
      .value("VoidLatest", Branch::VoidLatest)
      .value("HorizonLatest", Branch::HorizonLatest)
      .value("EftFallback", Branch::EftFallback);

  py::class_<SimConfig>(m, "SimConfig")
      .def(py::init<>())
      .def_readwrite("n_onus", &SimConfig::n_onus)
      .def_readwrite("n_wavelengths", &SimConfig::n_wavelengths)
      .def_readwrite("peak_rate_bps", &SimConfig::peak_rate_bps)
      .def_readwrite("line_rate_bps", &SimConfig::line_rate_bps)
      .def_readwrite("report_bytes", &SimConfig::report_bytes)
      .def_readwrite("guard_ns", &SimConfig::guard_ns)
      .def_readwrite("gate_gen_ns", &SimConfig::gate_gen_ns)
      .def_readwrite("gate_tx_ns", &SimConfig::gate_tx_ns)
      .def_readwrite("tune_step_ns", &SimConfig::tune_step_ns)
      .def_readwrite("sleep_wake_ns", &SimConfig::sleep_wake_ns)
      .def_readwrite("rtt_ns", &SimConfig::rtt_ns)
      .def_readwrite("d_max_ns", &SimConfig::d_max_ns)
      .def_readwrite("load", &SimConfig::load)
      .def_readwrite("alpha_on", &SimConfig::alpha_on)
      .def_readwrite("alpha_off", &SimConfig::alpha_off)
      .def_readwrite("packet_bytes", &SimConfig::packet_bytes)
      .def_readwrite("mean_on_ns", &SimConfig::mean_on_ns)
      .def_readwrite("traffic", &SimConfig::traffic)
      .def_readwrite("run_time_ns", &SimConfig::run_time_ns)
      .def_readwrite("seed", &SimConfig::seed)
      .def_readwrite("delay_policy", &SimConfig::delay_policy)
      .def_readwrite("scheduler", &SimConfig::scheduler)
      .def("byte_time_ns", &SimConfig::byte_time_ns)
      .def("window_ns", &SimConfig::window_ns, py::arg("grant_bytes"))
      .def("d_const_ns", &SimConfig::d_const_ns)
      .def("utilization", &SimConfig::utilization)
      .def("validate", &SimConfig::validate);

  py::class_<ReceiverAccount>(m, "ReceiverAccount")
      .def_readonly("active_ns", &ReceiverAccount::active_ns)
      .def_readonly("waking_ns", &ReceiverAccount::waking_ns)
      .def_readonly("asleep_ns", &ReceiverAccount::asleep_ns)
      .def_readonly("sleep_count", &ReceiverAccount::sleep_count);

  py::class_<RunStats>(m, "RunStats")
      .def_readonly("run_time_ns", &RunStats::run_time_ns)
      .def_readonly("warmup_ns", &RunStats::warmup_ns)
      .def_readonly("measured_time_ns", &RunStats::measured_time_ns)
      .def_readonly("efficiency_pct", &RunStats::efficiency_pct)
      .def_readonly("eta_max_pct", &RunStats::eta_max_pct)
      .def_readonly("avg_delay_ns", &RunStats::avg_delay_ns)
      .def_readonly("max_delay_ns", &RunStats::max_delay_ns)
      .def_readonly("packets_delivered", &RunStats::packets_delivered)
      .def_readonly("packets_over_dmax", &RunStats::packets_over_dmax)
      .def_readonly("deadline_violations", &RunStats::deadline_violations)
      .def_readonly("forced_eft", &RunStats::forced_eft)
      .def_readonly("report_count", &RunStats::report_count)
      .def_readonly("voids_created", &RunStats::voids_created)
      .def_readonly("voids_exploited", &RunStats::voids_exploited)
      .def_readonly("t_v_agg_ns", &RunStats::t_v_agg_ns)
      .def_readonly("offered_load", &RunStats::offered_load)
      .def_readonly("arrived_bytes", &RunStats::arrived_bytes)
      .def_readonly("delivered_bytes", &RunStats::delivered_bytes)
      .def_readonly("final_backlog_bytes", &RunStats::final_backlog_bytes)
      .def_readonly("stable", &RunStats::stable)
      .def_readonly("receivers", &RunStats::receivers)
      .def("branches", &RunStats::branches, py::arg("branch"));

  m.def("run", [](const SimConfig& cfg) { return run(cfg); }, py::arg("cfg"),
        "Execute one simulation run",
        py::call_guard<py::gil_scoped_release>());
  m.def("eta_max", &eta_max, py::arg("cfg"),
        "Analytical efficiency upper bound (percent)");
  m.def("efficiency_from_accounting",
        [](const std::vector<ReceiverAccount>& rx, SimTime measured) {
          return efficiency_from_accounting(rx, measured);
        },
        py::arg("receivers"), py::arg("measured_time_ns"));
  m.def("csv_header", &csv_header);
  m.def("csv_row", &csv_row, py::arg("cfg"), py::arg("stats"));

  m.def("window_size",
        [](std::int64_t grant_bytes, const SimConfig& cfg) {
          return window_size(grant_bytes, cfg);
        },
        py::arg("grant_bytes"), py::arg("cfg"));
  m.def("fixed_delay_bound",
        [](SimTime d_max_ns, SimTime rtt_ns) {
          OnuState onu;
          onu.d_max = d_max_ns;
          onu.rtt = rtt_ns;
          return fixed_delay_bound(onu);
        },
        py::arg("d_max_ns"), py::arg("rtt_ns"));
  m.def("variable_delay_bound",
        [](SimTime d_max_ns, SimTime d_prev_ns, SimTime rtt_ns) {
          OnuState onu;
          onu.d_max = d_max_ns;
          onu.d_prev = d_prev_ns;
          onu.rtt = rtt_ns;
          const DelayBound b = variable_delay_bound(onu);
          return py::make_tuple(b.value, b.forced_eft);
        },
        py::arg("d_max_ns"), py::arg("d_prev_ns"), py::arg("rtt_ns"),
        "Returns (bound_ns, forced_eft)");
  m.def("pareto_sample", &pareto_sample, py::arg("shape"), py::arg("scale"),
        py::arg("u"));
  m.def("calibrate_off_scale",
        [](double alpha_on, double min_on_ns, double alpha_off, double load) {
          TrafficParams p;
          p.alpha_on = alpha_on;
          p.min_on_ns = min_on_ns;
          p.alpha_off = alpha_off;
          p.load = load;
          return calibrate_off_scale(p);
        },
        py::arg("alpha_on"), py::arg("min_on_ns"), py::arg("alpha_off"),
        py::arg("load"));
}
