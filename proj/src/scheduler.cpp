#include "eonovm/scheduler.hpp"

#include <algorithm>
#include <cassert>
#include <optional>

namespace eonovm {

const char* to_string(Branch b) {
  switch (b) {
    case Branch::VoidClubStart: return "void_club_start";
    case Branch::VoidClubEnd: return "void_club_end";
    case Branch::HorizonClub: return "horizon_club";
    case Branch::VoidLatest: return "void_latest";
    case Branch::HorizonLatest: return "horizon_latest";
    case Branch::EftFallback: return "eft_fallback";
  }
  return "?";
}

SimTime tc_min(const ReportEvent& report, const OnuState& onu, Wavelength j,
               const SimConfig& cfg) {
  const SimTime hop =
      static_cast<SimTime>(std::abs(onu.tuned_wavelength - j));
  return report.arrival + cfg.gate_gen_ns + cfg.gate_tx_ns + onu.rtt +
         hop * cfg.tune_step_ns;
}

SimTime fixed_delay_bound(const OnuState& onu) {
  assert(onu.d_max > onu.rtt / 2 && "delay bound unsatisfiable");
  return (onu.d_max - onu.rtt / 2) / 2;
}

DelayBound variable_delay_bound(const OnuState& onu) {
  const SimTime v = onu.d_max - onu.d_prev - onu.rtt / 2;
  if (v <= 0) return {0, true};
  return {v, false};
}

DelayBound resolve_delay_bound(const OnuState& onu, const SimConfig& cfg) {
  if (cfg.delay_policy == DelayPolicy::Variable) {
    return variable_delay_bound(onu);
  }
  // Fixed policy holds only while the preceding gap fits under d_const; a
  // longer gap (a missed deadline stretched it) forces the variable rule
  // until the gap shrinks back.
  if (onu.d_prev <= onu.d_const) return {fixed_delay_bound(onu), false};
  return variable_delay_bound(onu);
}

SimTime window_size(std::int64_t grant_bytes, const SimConfig& cfg) {
  return cfg.window_ns(grant_bytes);
}

namespace {

// Shared per-decision quantities. `base` is the wavelength-independent part
// of tc_min; tc_min(j) = base + |tuned - j| * tune_step.
struct Ctx {
  Wavelength tuned;
  SimTime tune_step;
  SimTime base;
  SimTime deadline;
  SimTime t_w;
  SimTime x;  // latest admissible first-bit instant: deadline - t_w
  NotBefore floors;

  SimTime tc(Wavelength j) const {
    return base + static_cast<SimTime>(std::abs(tuned - j)) * tune_step;
  }
  SimTime floor(Wavelength j) const {
    return floors.empty() ? 0 : floors[static_cast<std::size_t>(j)];
  }
  // Earliest usable first-bit instant on j.
  SimTime avail(Wavelength j) const { return std::max(tc(j), floor(j)); }
};

Ctx make_ctx(const ReportEvent& report, const OnuState& onu,
             const SimConfig& cfg, SimTime d_q, SimTime t_w,
             NotBefore not_before) {
  Ctx ctx;
  ctx.tuned = onu.tuned_wavelength;
  ctx.tune_step = cfg.tune_step_ns;
  ctx.base = report.arrival + cfg.gate_gen_ns + cfg.gate_tx_ns + onu.rtt;
  ctx.deadline = report.arrival + d_q;
  ctx.t_w = t_w;
  ctx.x = ctx.deadline - t_w;
  ctx.floors = not_before;
  return ctx;
}

std::vector<int> valid_voids_impl(const VoidSet& voids, const Ctx& ctx) {
  std::vector<int> out;
  for (std::size_t i = 0; i < voids.size(); ++i) {
    const Void& v = voids[i];
    const SimTime lo = std::max(v.start, ctx.avail(v.wavelength));
    const SimTime hi = std::min(v.end, ctx.deadline);
    if (hi - lo >= ctx.t_w) out.push_back(static_cast<int>(i));
  }
  return out;
}

// First position in `view` whose sort key reaches `bound` (the views are
// ordered ascending, ties by wavelength index).
template <typename Key>
std::size_t first_at_least(const std::vector<int>& view, Key key,
                           SimTime bound) {
  auto it = std::partition_point(view.begin(), view.end(),
                                 [&](int j) { return key(j) < bound; });
  return static_cast<std::size_t>(it - view.begin());
}

std::vector<int> valid_horizons_impl(const HorizonSet& h, const Ctx& ctx) {
  std::vector<int> out;
  if (ctx.x < ctx.base) return out;  // even an untuned, idle wavelength is late
  const int w = h.wavelengths();

  // Wavelengths whose horizon dominates tuning: key >= base. Located by
  // binary search on the tuned view, then filtered against the deadline.
  const auto& tuned_view = h.by_tuned(ctx.tuned);
  const std::size_t split = first_at_least(
      tuned_view, [&](int j) { return h.tuned_key(ctx.tuned, j); }, ctx.base);
  for (std::size_t i = split; i < tuned_view.size(); ++i) {
    const int j = tuned_view[i];
    if (h.lf(j) <= ctx.x && ctx.floor(j) <= ctx.x) out.push_back(j);
  }

  // Wavelengths where tuning dominates: feasible iff the tuning distance
  // fits the slack, which is a contiguous index range around the tuned one.
  if (ctx.tune_step == 0) {
    for (int j = 0; j < w; ++j) {
      if (h.tuned_key(ctx.tuned, j) < ctx.base && ctx.floor(j) <= ctx.x)
        out.push_back(j);
    }
  } else {
    const SimTime hops =
        std::min<SimTime>((ctx.x - ctx.base) / ctx.tune_step, w);
    const int jlo = std::max(0, ctx.tuned - static_cast<int>(hops));
    const int jhi = std::min(w - 1, ctx.tuned + static_cast<int>(hops));
    for (int j = jlo; j <= jhi; ++j) {
      if (h.tuned_key(ctx.tuned, j) < ctx.base && ctx.floor(j) <= ctx.x)
        out.push_back(j);
    }
  }

  std::sort(out.begin(), out.end());
  return out;
}

// Best horizon-clubbing wavelength: the largest lf meeting
// tc_min <= lf <= x (and any wake floor). Walks the lf-sorted view downward
// from the deadline cut; stops once lf drops below `base`, past which no
// wavelength can club. Ties on lf resolve to the higher index.
std::optional<int> lf_club_best(const HorizonSet& h, const Ctx& ctx) {
  if (ctx.x < ctx.base) return std::nullopt;
  const auto& view = h.by_lf();
  std::size_t hi =
      first_at_least(view, [&](int j) { return h.lf(j); }, ctx.x + 1);
  while (hi > 0) {
    const int j = view[--hi];
    const SimTime lf = h.lf(j);
    if (lf < ctx.base) break;
    if (lf >= ctx.tc(j) && lf >= ctx.floor(j)) return j;
  }
  return std::nullopt;
}

std::vector<int> lf_club_all(const HorizonSet& h, const Ctx& ctx) {
  std::vector<int> out;
  if (ctx.x < ctx.base) return out;
  const auto& view = h.by_lf();
  std::size_t hi =
      first_at_least(view, [&](int j) { return h.lf(j); }, ctx.x + 1);
  while (hi > 0) {
    const int j = view[--hi];
    const SimTime lf = h.lf(j);
    if (lf < ctx.base) break;
    if (lf >= ctx.tc(j) && lf >= ctx.floor(j)) out.push_back(j);
  }
  std::sort(out.begin(), out.end());
  return out;
}

ScheduleDecision make_decision(const ReportEvent& report, const Ctx& ctx,
                               Branch branch, Wavelength w, SimTime first_bit) {
  ScheduleDecision d;
  d.onu = report.onu;
  d.wavelength = w;
  d.first_bit = first_bit;
  d.gate_time = first_bit - ctx.tc(w);
  d.window = ctx.t_w;
  d.grant_bytes = report.requested_bytes;
  d.branch = branch;
  d.deadline = ctx.deadline;
  d.violation = std::max<SimTime>(0, first_bit + ctx.t_w - ctx.deadline);
  return d;
}

}  // namespace

std::vector<int> valid_voids(const VoidSet& voids, const ReportEvent& report,
                             const OnuState& onu, const SimConfig& cfg,
                             SimTime d_q, SimTime t_w, NotBefore not_before) {
  return valid_voids_impl(voids, make_ctx(report, onu, cfg, d_q, t_w,
                                          not_before));
}

std::vector<int> valid_horizons(const HorizonSet& horizons,
                                const ReportEvent& report, const OnuState& onu,
                                const SimConfig& cfg, SimTime d_q, SimTime t_w,
                                NotBefore not_before) {
  return valid_horizons_impl(horizons, make_ctx(report, onu, cfg, d_q, t_w,
                                                not_before));
}

std::pair<std::vector<int>, std::vector<int>> clubbing_sets(
    std::span<const int> valid, const VoidSet& voids,
    const ReportEvent& report, const OnuState& onu, const SimConfig& cfg,
    SimTime d_q, NotBefore not_before) {
  const Ctx ctx = make_ctx(report, onu, cfg, d_q, 0, not_before);
  std::vector<int> start_club;
  std::vector<int> end_club;
  for (int i : valid) {
    const Void& v = voids[static_cast<std::size_t>(i)];
    if (v.start >= ctx.avail(v.wavelength)) start_club.push_back(i);
    if (v.end <= ctx.deadline) end_club.push_back(i);
  }
  return {std::move(start_club), std::move(end_club)};
}

std::vector<int> horizon_clubbing_set(const HorizonSet& horizons,
                                      const ReportEvent& report,
                                      const OnuState& onu,
                                      const SimConfig& cfg, SimTime d_q,
                                      SimTime t_w, NotBefore not_before) {
  return lf_club_all(horizons, make_ctx(report, onu, cfg, d_q, t_w,
                                        not_before));
}

ScheduleDecision schedule(const ReportEvent& report, const OnuState& onu,
                          const VoidSet& voids, const HorizonSet& horizons,
                          const SimConfig& cfg, Rng& rng,
                          NotBefore not_before) {
  assert(horizons.fresh());
  const DelayBound bound = resolve_delay_bound(onu, cfg);
  const SimTime t_w = window_size(report.requested_bytes, cfg);
  const Ctx ctx = make_ctx(report, onu, cfg, bound.value, t_w, not_before);

  const std::vector<int> valid = valid_voids_impl(voids, ctx);
  if (!valid.empty()) {
    std::vector<int> start_club;
    std::vector<int> end_club;
    for (int i : valid) {
      const Void& v = voids[static_cast<std::size_t>(i)];
      if (v.start >= ctx.avail(v.wavelength)) start_club.push_back(i);
      if (v.end <= ctx.deadline) end_club.push_back(i);
    }

    if (!start_club.empty() || !end_club.empty()) {
      // Latest applicable boundary wins; ties keep the earliest candidate in
      // canonical (wavelength, start) order.
      int sm = -1;
      for (int i : start_club) {
        if (sm < 0 || voids[static_cast<std::size_t>(i)].start >
                          voids[static_cast<std::size_t>(sm)].start)
          sm = i;
      }
      int em = -1;
      for (int i : end_club) {
        if (em < 0 || voids[static_cast<std::size_t>(i)].end >
                          voids[static_cast<std::size_t>(em)].end)
          em = i;
      }
      bool use_start;
      if (sm >= 0 && em >= 0) {
        // Strict comparison: an exact tie ends the window flush at the void
        // end rather than opening it at the start.
        use_start = voids[static_cast<std::size_t>(sm)].start + t_w >
                    voids[static_cast<std::size_t>(em)].end;
      } else {
        use_start = sm >= 0;
      }
      if (use_start) {
        const Void& v = voids[static_cast<std::size_t>(sm)];
        return make_decision(report, ctx, Branch::VoidClubStart, v.wavelength,
                             v.start);
      }
      const Void& v = voids[static_cast<std::size_t>(em)];
      return make_decision(report, ctx, Branch::VoidClubEnd, v.wavelength,
                           v.end - t_w);
    }

    if (auto fm = lf_club_best(horizons, ctx)) {
      return make_decision(report, ctx, Branch::HorizonClub, *fm,
                           horizons.lf(*fm));
    }

    // No clubbing anywhere: park the window as late as the bound allows in
    // one of the valid voids, chosen uniformly.
    const int pick =
        valid[static_cast<std::size_t>(rng.bounded(valid.size()))];
    const Void& v = voids[static_cast<std::size_t>(pick)];
    return make_decision(report, ctx, Branch::VoidLatest, v.wavelength,
                         ctx.deadline - t_w);
  }

  if (auto fm = lf_club_best(horizons, ctx)) {
    return make_decision(report, ctx, Branch::HorizonClub, *fm,
                         horizons.lf(*fm));
  }

  const std::vector<int> lf_valid = valid_horizons_impl(horizons, ctx);
  if (!lf_valid.empty()) {
    const Wavelength j =
        lf_valid[static_cast<std::size_t>(rng.bounded(lf_valid.size()))];
    return make_decision(report, ctx, Branch::HorizonLatest, j,
                         ctx.deadline - t_w);
  }

  return eft_schedule(report, onu, horizons, voids, cfg, not_before);
}

ScheduleDecision eft_schedule(const ReportEvent& report, const OnuState& onu,
                              const HorizonSet& horizons, const VoidSet& voids,
                              const SimConfig& cfg, NotBefore not_before) {
  const DelayBound bound = resolve_delay_bound(onu, cfg);
  const SimTime t_w = window_size(report.requested_bytes, cfg);
  const Ctx ctx = make_ctx(report, onu, cfg, bound.value, t_w, not_before);
  const int w = horizons.wavelengths();

  // Earliest fitting void per wavelength; one pass over the canonical order,
  // the first fit per wavelength is also the earliest start.
  std::vector<SimTime> void_fb(static_cast<std::size_t>(w), kNever);
  for (const Void& v : voids) {
    auto& slot = void_fb[static_cast<std::size_t>(v.wavelength)];
    if (slot != kNever) continue;
    const SimTime fb = std::max(v.start, ctx.avail(v.wavelength));
    if (v.end - fb >= t_w) slot = fb;
  }

  Wavelength best_w = 0;
  SimTime best_fb = kNever;
  for (int j = 0; j < w; ++j) {
    const SimTime horizon_fb = std::max(horizons.lf(j), ctx.avail(j));
    const SimTime fb = std::min(horizon_fb, void_fb[static_cast<std::size_t>(j)]);
    if (fb < best_fb) {  // strict: ties keep the lowest wavelength index
      best_fb = fb;
      best_w = j;
    }
  }
  return make_decision(report, ctx, Branch::EftFallback, best_w, best_fb);
}

}  // namespace eonovm
