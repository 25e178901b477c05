"""Smoke tests for the python bindings."""

import eonovm


def small_config(**overrides):
    cfg = eonovm.SimConfig()
    cfg.n_onus = 8
    cfg.n_wavelengths = 2
    cfg.load = 0.4
    cfg.run_time_ns = 200_000_000
    for key, value in overrides.items():
        setattr(cfg, key, value)
    return cfg


def test_bound_formula():
    cfg = eonovm.SimConfig()
    cfg.n_onus = 64
    cfg.n_wavelengths = 8
    cfg.load = 0.5
    assert eonovm.eta_max(cfg) == 60.0
    cfg.load = 0.0
    assert eonovm.eta_max(cfg) == 100.0


def test_window_and_delay_helpers():
    cfg = eonovm.SimConfig()
    assert eonovm.window_size(1000, cfg) == 13_512
    assert eonovm.fixed_delay_bound(10_000_000, 200_000) == 4_950_000
    value, forced = eonovm.variable_delay_bound(10_000_000, 6_000_000, 200_000)
    assert (value, forced) == (3_900_000, False)
    _, forced = eonovm.variable_delay_bound(10_000_000, 9_950_000, 200_000)
    assert forced


def test_traffic_helpers():
    sample = eonovm.pareto_sample(2.0, 1.0, 0.25)
    assert abs(sample - 2.0) < 1e-12
    off = eonovm.calibrate_off_scale(1.2, 10_000.0, 1.4, 0.25)
    assert abs(off - 51_428.5714) < 1e-3


def test_run_is_deterministic():
    a = eonovm.run(small_config(seed=7))
    b = eonovm.run(small_config(seed=7))
    assert a.efficiency_pct == b.efficiency_pct
    assert a.report_count == b.report_count
    assert a.max_delay_ns == b.max_delay_ns


def test_run_respects_the_bound():
    cfg = small_config(seed=3)
    stats = eonovm.run(cfg)
    assert stats.packets_delivered > 0
    assert stats.stable
    assert 0.0 <= stats.efficiency_pct <= stats.eta_max_pct + 0.5
    assert stats.arrived_bytes == stats.delivered_bytes + stats.final_backlog_bytes


def test_csv_row_shape():
    cfg = small_config(seed=1)
    stats = eonovm.run(cfg)
    header = eonovm.csv_header()
    row = eonovm.csv_row(cfg, stats)
    assert len(header.split(",")) == len(row.split(",")) == 18


def test_baseline_scheduler_runs():
    cfg = small_config(seed=5)
    cfg.scheduler = eonovm.SchedulerKind.EftSleep
    stats = eonovm.run(cfg)
    assert stats.branches(eonovm.Branch.EftFallback) == stats.report_count
