#include <algorithm>

#include "doctest.h"
#include "eonovm/scheduler.hpp"
#include "support/instances.hpp"
#include "support/reference_scheduler.hpp"

namespace {

using namespace eonovm;
using eonovm::testing::Instance;

// Overheads zeroed except a 2 us RTT, so tc_min is exactly 2000 ns on every
// wavelength. Guard and report sizes are picked to make t_w round.
SimConfig bare_config(int wavelengths) {
  SimConfig cfg;
  cfg.n_onus = 4;
  cfg.n_wavelengths = wavelengths;
  cfg.gate_gen_ns = 0;
  cfg.gate_tx_ns = 0;
  cfg.tune_step_ns = 0;
  cfg.rtt_ns = 2'000;
  cfg.report_bytes = 0;
  cfg.guard_ns = 2'000;
  return cfg;
}

OnuState bare_onu(const SimConfig& cfg) {
  OnuState onu;
  onu.rtt = cfg.rtt_ns;
  onu.d_max = cfg.d_max_ns;
  onu.d_const = cfg.d_const_ns();
  onu.d_prev = onu.d_const;
  return onu;
}

// requested 1000 B at 8 ns/B plus the 2 us guard = 10 us window
constexpr std::int64_t kGrantFor10us = 1'000;

// Variable-policy history that yields exactly the wanted budget.
void force_budget(SimConfig& cfg, OnuState& onu, SimTime d_q) {
  cfg.delay_policy = DelayPolicy::Variable;
  cfg.d_max_ns = 100'000'000;
  onu.d_max = cfg.d_max_ns;
  onu.d_const = cfg.d_const_ns();
  onu.d_prev = cfg.d_max_ns - cfg.rtt_ns / 2 - d_q;
}

TEST_CASE("tc_min follows the gate/tuning pipeline") {
  SimConfig cfg;
  cfg.n_wavelengths = 8;
  cfg.gate_gen_ns = 35;
  cfg.gate_tx_ns = 512;
  cfg.tune_step_ns = 1'000;
  OnuState onu;
  onu.rtt = 200'000;
  onu.tuned_wavelength = 2;
  ReportEvent report{0, 1'000'000, 0, 1};

  CHECK(tc_min(report, onu, 2, cfg) == 1'200'547);
  CHECK(tc_min(report, onu, 4, cfg) == 1'202'547);

  SimConfig zero;
  zero.gate_gen_ns = 0;
  zero.gate_tx_ns = 0;
  zero.tune_step_ns = 0;
  OnuState idle;
  idle.rtt = 0;
  CHECK(tc_min(ReportEvent{0, 0, 0, 1}, idle, 0, zero) == 0);
}

TEST_CASE("fixed delay bound") {
  OnuState onu;
  onu.rtt = 200'000;
  onu.d_max = 10'000'000;
  CHECK(fixed_delay_bound(onu) == 4'950'000);
  onu.d_max = 5'000'000;
  CHECK(fixed_delay_bound(onu) == 2'450'000);
  onu.d_max = onu.rtt / 2 + 2;
  CHECK(fixed_delay_bound(onu) == 1);
}

TEST_CASE("variable delay bound") {
  OnuState onu;
  onu.rtt = 200'000;
  onu.d_max = 10'000'000;
  onu.d_prev = 6'000'000;
  CHECK(variable_delay_bound(onu).value == 3'900'000);
  CHECK_FALSE(variable_delay_bound(onu).forced_eft);

  onu.d_const = 4'950'000;
  onu.d_prev = onu.d_const;  // reduces to the fixed value
  CHECK(variable_delay_bound(onu).value == 4'950'000);

  onu.d_prev = 9'950'000;  // budget already spent
  const DelayBound b = variable_delay_bound(onu);
  CHECK(b.value == 0);
  CHECK(b.forced_eft);
}

TEST_CASE("fixed policy falls back to the variable rule after a long gap") {
  SimConfig cfg;
  cfg.delay_policy = DelayPolicy::Fixed;
  OnuState onu;
  onu.rtt = 200'000;
  onu.d_max = 10'000'000;
  onu.d_const = 4'950'000;

  onu.d_prev = 4'950'000;
  CHECK(resolve_delay_bound(onu, cfg).value == 4'950'000);
  onu.d_prev = 6'000'000;  // deadline was missed last cycle
  CHECK(resolve_delay_bound(onu, cfg).value == 3'900'000);
}

TEST_CASE("window size") {
  SimConfig cfg;  // reference constants: 8 ns/B, 64 B report, 5 us guard
  CHECK(window_size(1'000, cfg) == 13'512);
  CHECK(window_size(0, cfg) == 5'512);
  CHECK(window_size(125'000, cfg) == 1'005'512);
}

TEST_CASE("valid voids clip against tc_min and the deadline") {
  SimConfig cfg = bare_config(2);
  OnuState onu = bare_onu(cfg);
  ReportEvent report{0, 0, 0, 1};

  VoidSet voids;
  voids.insert({0, 20'000, 1});
  CHECK(valid_voids(voids, report, onu, cfg, 15'000, 10'000) ==
        std::vector<int>{0});

  VoidSet narrow;
  narrow.insert({0, 11'000, 1});
  CHECK(valid_voids(narrow, report, onu, cfg, 15'000, 10'000).empty());

  VoidSet none;
  CHECK(valid_voids(none, report, onu, cfg, 15'000, 10'000).empty());
}

TEST_CASE("valid horizons against the deadline") {
  SimConfig cfg = bare_config(2);
  OnuState onu = bare_onu(cfg);
  ReportEvent report{0, 0, 0, 1};

  HorizonSet h(2, 0);
  h.set_lf(0, 3'000);
  h.set_lf(1, 12'000);
  h.refresh();
  CHECK(valid_horizons(h, report, onu, cfg, 15'000, 10'000) ==
        std::vector<int>{0});

  // window larger than the whole budget
  CHECK(valid_horizons(h, report, onu, cfg, 9'000, 10'000).empty());

  HorizonSet single(1, 0);
  single.refresh();  // lf = 0 < tc_min
  CHECK(valid_horizons(single, report, onu, cfg, 15'000, 10'000) ==
        std::vector<int>{0});
}

TEST_CASE("clubbing sets") {
  SimConfig cfg = bare_config(2);
  OnuState onu = bare_onu(cfg);
  ReportEvent report{0, 0, 0, 1};

  VoidSet voids;
  voids.insert({5'000, 20'000, 1});
  const auto v1 = valid_voids(voids, report, onu, cfg, 15'000, 10'000);
  auto [s1, e1] = clubbing_sets(v1, voids, report, onu, cfg, 15'000);
  CHECK(s1 == std::vector<int>{0});
  CHECK(e1.empty());

  VoidSet tail;
  tail.insert({1'000, 14'000, 1});
  const auto v2 = valid_voids(tail, report, onu, cfg, 15'000, 10'000);
  auto [s2, e2] = clubbing_sets(v2, tail, report, onu, cfg, 15'000);
  CHECK(s2.empty());
  CHECK(e2 == std::vector<int>{0});

  auto [s3, e3] = clubbing_sets({}, voids, report, onu, cfg, 15'000);
  CHECK(s3.empty());
  CHECK(e3.empty());
}

TEST_CASE("horizon clubbing set") {
  SimConfig cfg = bare_config(2);
  OnuState onu = bare_onu(cfg);
  ReportEvent report{0, 0, 0, 1};

  HorizonSet h(2, 0);
  h.set_lf(1, 3'000);
  h.refresh();
  CHECK(horizon_clubbing_set(h, report, onu, cfg, 15'000, 10'000) ==
        std::vector<int>{1});

  HorizonSet cold(2, 0);
  cold.refresh();  // all horizons at zero, tc_min positive
  CHECK(horizon_clubbing_set(cold, report, onu, cfg, 15'000, 10'000).empty());

  HorizonSet edge(2, 0);
  edge.set_lf(0, 2'000);  // exactly tc_min: inclusive
  edge.refresh();
  CHECK(horizon_clubbing_set(edge, report, onu, cfg, 15'000, 10'000) ==
        std::vector<int>{0});
}

TEST_CASE("decision tree: start-club beats a lone end opportunity") {
  SimConfig cfg = bare_config(2);
  OnuState onu = bare_onu(cfg);
  force_budget(cfg, onu, 15'000);
  ReportEvent report{0, 0, kGrantFor10us, 1};

  VoidSet voids;
  voids.insert({5'000, 20'000, 1});
  HorizonSet h(2, 0);
  h.set_lf(1, 20'000);
  h.refresh();

  Rng rng(1);
  const auto d = schedule(report, onu, voids, h, cfg, rng);
  CHECK(d.branch == Branch::VoidClubStart);
  CHECK(d.wavelength == 1);
  CHECK(d.first_bit == 5'000);
  CHECK(d.gate_time == 3'000);
  CHECK(d.window == 10'000);
  CHECK(d.window_end() == 15'000);
}

TEST_CASE("decision tree: start/end comparison is strict") {
  SimConfig cfg = bare_config(3);
  OnuState onu = bare_onu(cfg);
  force_budget(cfg, onu, 15'000);
  ReportEvent report{0, 0, kGrantFor10us, 1};

  VoidSet voids;
  voids.insert({5'000, 20'000, 1});
  voids.insert({1'000, 14'000, 2});
  HorizonSet h(3, 0);
  h.set_lf(1, 20'000);
  h.set_lf(2, 14'000);
  h.refresh();

  Rng rng(1);
  const auto d = schedule(report, onu, voids, h, cfg, rng);
  // start max 5000 + 10000 = 15000 > end max 14000: start-club wins
  CHECK(d.branch == Branch::VoidClubStart);
  CHECK(d.wavelength == 1);
  CHECK(d.first_bit == 5'000);
}

TEST_CASE("decision tree: overload falls back to earliest finish") {
  SimConfig cfg = bare_config(2);
  OnuState onu = bare_onu(cfg);
  force_budget(cfg, onu, 11'000);  // deadline below tc_min + t_w
  ReportEvent report{0, 0, kGrantFor10us, 1};

  VoidSet voids;
  HorizonSet h(2, 0);
  h.refresh();

  Rng rng(1);
  const auto d = schedule(report, onu, voids, h, cfg, rng);
  CHECK(d.branch == Branch::EftFallback);
  CHECK(d.wavelength == 0);  // tie broken toward the lowest index
  CHECK(d.first_bit == 2'000);
  CHECK(d.violation == 1'000);
}

TEST_CASE("decision tree: horizon club picks the highest horizon") {
  SimConfig cfg = bare_config(2);
  OnuState onu = bare_onu(cfg);
  force_budget(cfg, onu, 50'000);
  ReportEvent report{0, 0, kGrantFor10us, 1};

  VoidSet voids;
  HorizonSet h(2, 0);
  h.set_lf(0, 3'000);
  h.set_lf(1, 2'500);
  h.refresh();

  Rng rng(1);
  const auto d = schedule(report, onu, voids, h, cfg, rng);
  CHECK(d.branch == Branch::HorizonClub);
  CHECK(d.wavelength == 0);
  CHECK(d.first_bit == 3'000);
  CHECK(d.violation == 0);
}

TEST_CASE("eft placement enumerations") {
  SimConfig cfg = bare_config(2);
  cfg.guard_ns = 3'000;  // report-only window of 3 us
  OnuState onu = bare_onu(cfg);

  SUBCASE("cold start goes to the tuned wavelength's tc_min") {
    VoidSet voids;
    HorizonSet h(2, 0);
    h.refresh();
    const auto d = eft_schedule(ReportEvent{0, 0, 0, 1}, onu, h, voids, cfg);
    CHECK(d.wavelength == 0);
    CHECK(d.first_bit == 2'000);
  }

  SUBCASE("lower horizon wins") {
    VoidSet voids;
    HorizonSet h(2, 0);
    h.set_lf(0, 10'000);
    h.set_lf(1, 4'000);
    h.refresh();
    const auto d = eft_schedule(ReportEvent{0, 0, 0, 1}, onu, h, voids, cfg);
    CHECK(d.wavelength == 1);
    CHECK(d.first_bit == 4'000);
    CHECK(d.window_end() == 7'000);
  }

  SUBCASE("a fitting void beats every horizon") {
    VoidSet voids;
    voids.insert({2'000, 6'000, 0});
    HorizonSet h(2, 0);
    h.set_lf(0, 6'000);
    h.set_lf(1, 4'000);
    h.refresh();
    const auto d = eft_schedule(ReportEvent{0, 0, 0, 1}, onu, h, voids, cfg);
    CHECK(d.wavelength == 0);
    CHECK(d.first_bit == 2'000);
    CHECK(d.window_end() == 5'000);
  }
}

TEST_CASE("decision invariants on random instances") {
  Rng gen(77);
  int clubbed = 0;
  for (int i = 0; i < 4'000; ++i) {
    const Instance inst = eonovm::testing::random_instance(gen);
    Rng rng(inst.rng_state);
    const auto d = schedule(inst.report, inst.onu, inst.voids, inst.horizons,
                            inst.cfg, rng, inst.floors);

    const SimTime tc = tc_min(inst.report, inst.onu, d.wavelength, inst.cfg);
    const SimTime floor =
        inst.floors.empty()
            ? 0
            : inst.floors[static_cast<std::size_t>(d.wavelength)];
    CHECK(d.first_bit >= tc);
    CHECK(d.first_bit >= floor);
    CHECK(d.first_bit == d.gate_time + tc);

    if (d.branch != Branch::EftFallback) {
      CHECK(d.window_end() <= d.deadline);
      CHECK(d.violation == 0);
    }

    switch (d.branch) {
      case Branch::VoidClubStart:
      case Branch::VoidClubEnd: {
        bool flush = false;
        for (const Void& v : inst.voids)
          if (v.wavelength == d.wavelength &&
              (v.start == d.first_bit || v.end == d.window_end()))
            flush = true;
        CHECK(flush);
        ++clubbed;
        break;
      }
      case Branch::HorizonClub:
        CHECK(d.first_bit == inst.horizons.lf(d.wavelength));
        ++clubbed;
        break;
      case Branch::VoidLatest:
      case Branch::HorizonLatest:
        // latest admissible placement: the window closes on the deadline
        CHECK(d.window_end() == d.deadline);
        break;
      case Branch::EftFallback:
        break;
    }

    // latest-time maximality within the fired branch, by enumeration
    const SimTime d_q = eonovm::testing::reference_delay_bound(inst);
    const SimTime deadline = inst.report.arrival + d_q;
    auto avail = [&](Wavelength j) {
      const SimTime f =
          inst.floors.empty() ? 0
                              : inst.floors[static_cast<std::size_t>(j)];
      return std::max(tc_min(inst.report, inst.onu, j, inst.cfg), f);
    };
    if (d.branch == Branch::VoidClubStart) {
      for (const Void& v : inst.voids) {
        if (v.start < avail(v.wavelength)) continue;
        if (std::min(v.end, deadline) - v.start < d.window) continue;
        CHECK(v.start <= d.first_bit);
      }
    } else if (d.branch == Branch::VoidClubEnd) {
      for (const Void& v : inst.voids) {
        if (v.end > deadline) continue;
        if (v.end - std::max(v.start, avail(v.wavelength)) < d.window)
          continue;
        CHECK(v.end <= d.window_end());
      }
    } else if (d.branch == Branch::HorizonClub) {
      for (int j = 0; j < inst.horizons.wavelengths(); ++j) {
        const SimTime lf = inst.horizons.lf(j);
        if (lf < avail(j) || deadline - lf < d.window) continue;
        CHECK(lf <= d.first_bit);
      }
    }
  }
  CHECK(clubbed > 0);
}

TEST_CASE("horizon queries equal their linear scans") {
  Rng gen(4242);
  for (int i = 0; i < 100'000; ++i) {
    const Instance inst = eonovm::testing::random_instance(gen);
    const SimTime d_q = eonovm::testing::reference_delay_bound(inst);
    const SimTime t_w = window_size(inst.report.requested_bytes, inst.cfg);

    const auto got_valid = valid_horizons(inst.horizons, inst.report, inst.onu,
                                          inst.cfg, d_q, t_w, inst.floors);
    const auto want_valid =
        eonovm::testing::linear_valid_horizons(inst, d_q, t_w);
    REQUIRE(got_valid == want_valid);

    const auto got_club = horizon_clubbing_set(
        inst.horizons, inst.report, inst.onu, inst.cfg, d_q, t_w, inst.floors);
    const auto want_club =
        eonovm::testing::linear_horizon_clubbing(inst, d_q, t_w);
    REQUIRE(got_club == want_club);
  }
}

}  // namespace
