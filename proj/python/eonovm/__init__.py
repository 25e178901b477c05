"""TWDM-PON upstream scheduling simulator."""

from ._eonovm import (
    Branch,
    DelayPolicy,
    ReceiverAccount,
    RunStats,
    SchedulerKind,
    SimConfig,
    TrafficModel,
    calibrate_off_scale,
    csv_header,
    csv_row,
    efficiency_from_accounting,
    eta_max,
    fixed_delay_bound,
    pareto_sample,
    run,
    variable_delay_bound,
    window_size,
)

__all__ = [
    "Branch",
    "DelayPolicy",
    "ReceiverAccount",
    "RunStats",
    "SchedulerKind",
    "SimConfig",
    "TrafficModel",
    "calibrate_off_scale",
    "csv_header",
    "csv_row",
    "efficiency_from_accounting",
    "eta_max",
    "fixed_delay_bound",
    "pareto_sample",
    "run",
    "variable_delay_bound",
    "window_size",
]

__version__ = "0.1.0"
