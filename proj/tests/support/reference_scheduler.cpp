#include "support/reference_scheduler.hpp"

#include <algorithm>
#include <cstdlib>

namespace eonovm::testing {

namespace {

struct Ref {
  const Instance& inst;
  SimTime d_q;
  SimTime deadline;
  SimTime t_w;

  explicit Ref(const Instance& i) : inst(i) {
    d_q = reference_delay_bound(i);
    deadline = i.report.arrival + d_q;
    t_w = (i.report.requested_bytes + i.cfg.report_bytes) *
              i.cfg.byte_time_ns() +
          i.cfg.guard_ns;
  }

  SimTime tc(Wavelength j) const {
    return inst.report.arrival + inst.cfg.gate_gen_ns + inst.cfg.gate_tx_ns +
           inst.onu.rtt +
           std::abs(inst.onu.tuned_wavelength - j) * inst.cfg.tune_step_ns;
  }
  SimTime floor(Wavelength j) const {
    return inst.floors.empty() ? 0
                               : inst.floors[static_cast<std::size_t>(j)];
  }
  SimTime avail(Wavelength j) const { return std::max(tc(j), floor(j)); }

  ScheduleDecision make(Branch b, Wavelength w, SimTime fb) const {
    ScheduleDecision d;
    d.onu = inst.report.onu;
    d.wavelength = w;
    d.first_bit = fb;
    d.gate_time = fb - tc(w);
    d.window = t_w;
    d.grant_bytes = inst.report.requested_bytes;
    d.branch = b;
    d.deadline = deadline;
    d.violation = std::max<SimTime>(0, fb + t_w - deadline);
    return d;
  }
};

}  // namespace

SimTime reference_delay_bound(const Instance& inst) {
  const OnuState& o = inst.onu;
  const SimTime variable = o.d_max - o.d_prev - o.rtt / 2;
  if (inst.cfg.delay_policy == DelayPolicy::Variable)
    return std::max<SimTime>(variable, 0);
  if (o.d_prev <= o.d_const) return (o.d_max - o.rtt / 2) / 2;
  return std::max<SimTime>(variable, 0);
}

std::vector<int> linear_valid_horizons(const Instance& inst, SimTime d_q,
                                       SimTime t_w) {
  Ref ref(inst);
  ref.d_q = d_q;
  ref.deadline = inst.report.arrival + d_q;
  ref.t_w = t_w;
  std::vector<int> out;
  for (int j = 0; j < inst.horizons.wavelengths(); ++j) {
    const SimTime latest = std::max(
        {inst.horizons.lf(j), ref.tc(j), ref.floor(j)});
    if (ref.deadline - latest >= t_w) out.push_back(j);
  }
  return out;
}

std::vector<int> linear_horizon_clubbing(const Instance& inst, SimTime d_q,
                                         SimTime t_w) {
  Ref ref(inst);
  ref.d_q = d_q;
  ref.deadline = inst.report.arrival + d_q;
  ref.t_w = t_w;
  std::vector<int> out;
  for (int j = 0; j < inst.horizons.wavelengths(); ++j) {
    const SimTime lf = inst.horizons.lf(j);
    if (lf >= ref.tc(j) && lf >= ref.floor(j) &&
        ref.deadline - lf >= t_w)
      out.push_back(j);
  }
  return out;
}

ScheduleDecision reference_eft(const Instance& inst) {
  Ref ref(inst);
  const VoidSet& voids = inst.voids;
  Wavelength best_w = 0;
  SimTime best_fb = kNever;
  for (int j = 0; j < inst.horizons.wavelengths(); ++j) {
    SimTime fb = std::max(inst.horizons.lf(j), ref.avail(j));
    // earliest fitting void on j, if any
    SimTime void_fb = kNever;
    for (std::size_t i = 0; i < voids.size(); ++i) {
      const Void& v = voids[i];
      if (v.wavelength != j) continue;
      const SimTime cand = std::max(v.start, ref.avail(j));
      if (v.end - cand >= ref.t_w) {
        void_fb = std::min(void_fb, cand);
      }
    }
    fb = std::min(fb, void_fb);
    if (fb < best_fb) {
      best_fb = fb;
      best_w = j;
    }
  }
  return ref.make(Branch::EftFallback, best_w, best_fb);
}

ScheduleDecision reference_schedule(const Instance& inst, Rng& rng) {
  Ref ref(inst);
  const VoidSet& voids = inst.voids;
  const int w = inst.horizons.wavelengths();

  std::vector<int> v_valid;
  for (std::size_t i = 0; i < voids.size(); ++i) {
    const Void& v = voids[i];
    const SimTime lo = std::max(v.start, ref.avail(v.wavelength));
    const SimTime hi = std::min(v.end, ref.deadline);
    if (hi - lo >= ref.t_w) v_valid.push_back(static_cast<int>(i));
  }

  std::vector<int> lf_nv;
  for (int j = 0; j < w; ++j) {
    const SimTime lf = inst.horizons.lf(j);
    if (lf >= ref.tc(j) && lf >= ref.floor(j) &&
        ref.deadline - lf >= ref.t_w)
      lf_nv.push_back(j);
  }
  int f_m = -1;
  for (int j : lf_nv) {
    if (f_m < 0 || inst.horizons.lf(j) > inst.horizons.lf(f_m) ||
        (inst.horizons.lf(j) == inst.horizons.lf(f_m) && j > f_m))
      f_m = j;
  }

  if (!v_valid.empty()) {
    std::vector<int> v_s;
    std::vector<int> v_e;
    for (int i : v_valid) {
      const Void& v = voids[static_cast<std::size_t>(i)];
      if (v.start >= ref.avail(v.wavelength)) v_s.push_back(i);
      if (v.end <= ref.deadline) v_e.push_back(i);
    }
    if (!v_s.empty() || !v_e.empty()) {
      int sm = -1;
      for (int i : v_s)
        if (sm < 0 || voids[static_cast<std::size_t>(i)].start >
                          voids[static_cast<std::size_t>(sm)].start)
          sm = i;
      int em = -1;
      for (int i : v_e)
        if (em < 0 || voids[static_cast<std::size_t>(i)].end >
                          voids[static_cast<std::size_t>(em)].end)
          em = i;
      bool use_start;
      if (sm >= 0 && em >= 0)
        use_start = voids[static_cast<std::size_t>(sm)].start + ref.t_w >
                    voids[static_cast<std::size_t>(em)].end;
      else
        use_start = sm >= 0;
      if (use_start) {
        const Void& v = voids[static_cast<std::size_t>(sm)];
        return ref.make(Branch::VoidClubStart, v.wavelength, v.start);
      }
      const Void& v = voids[static_cast<std::size_t>(em)];
      return ref.make(Branch::VoidClubEnd, v.wavelength, v.end - ref.t_w);
    }

    if (f_m >= 0)
      return ref.make(Branch::HorizonClub, f_m, inst.horizons.lf(f_m));

    const int pick =
        v_valid[static_cast<std::size_t>(rng.bounded(v_valid.size()))];
    return ref.make(Branch::VoidLatest,
                    voids[static_cast<std::size_t>(pick)].wavelength,
                    ref.deadline - ref.t_w);
  }

  if (f_m >= 0)
    return ref.make(Branch::HorizonClub, f_m, inst.horizons.lf(f_m));

  std::vector<int> lf_valid;
  for (int j = 0; j < w; ++j) {
    const SimTime latest =
        std::max({inst.horizons.lf(j), ref.tc(j), ref.floor(j)});
    if (ref.deadline - latest >= ref.t_w) lf_valid.push_back(j);
  }
  if (!lf_valid.empty()) {
    const Wavelength j =
        lf_valid[static_cast<std::size_t>(rng.bounded(lf_valid.size()))];
    return ref.make(Branch::HorizonLatest, j, ref.deadline - ref.t_w);
  }

  return reference_eft(inst);
}

}  // namespace eonovm::testing
