#include "eonovm/engine.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <map>
#include <optional>
#include <queue>
#include <stdexcept>
#include <vector>

#include "eonovm/carve.hpp"
#include "eonovm/traffic.hpp"

namespace eonovm {

namespace {

// Processing order at equal timestamps; lower runs first. SimEnd preempts
// everything at its instant so nothing past the configured run time executes.
enum class EventKind : int {
  SimEnd = 0,
  ReceiverWake = 1,
  GateAtOnu = 2,
  UpstreamEnd = 3,
  UpstreamStart = 4,
  ReportEmit = 5,
  ReportAtOlt = 6,
  PacketArrival = 7,
};

struct Event {
  SimTime time = 0;
  EventKind kind = EventKind::SimEnd;
  int subject = 0;       // ONU or wavelength index, depending on kind
  std::int64_t arg = 0;  // payload: bytes, window key, target wavelength
  std::uint64_t stamp = 0;
};

struct EventAfter {
  bool operator()(const Event& a, const Event& b) const {
    if (a.time != b.time) return a.time > b.time;
    if (a.kind != b.kind) return a.kind > b.kind;
    if (a.subject != b.subject) return a.subject > b.subject;
    return a.stamp > b.stamp;
  }
};

struct Packet {
  SimTime arrival;
  int bytes;
};

enum class RxMode { Active, Asleep, Waking };

struct Receiver {
  RxMode mode = RxMode::Active;
  bool busy = false;
  SimTime last_change = 0;
  SimTime wake_deadline = 0;        // ramp completion, valid while Waking
  SimTime pending_wake = kNever;    // scheduled ramp start, valid while Asleep
  ReceiverAccount windowed;
  ReceiverAccount full;
};

struct OnuRuntime {
  OnuState st;
  std::deque<Packet> queue;
  std::optional<OnOffSource> onoff;
  std::optional<PoissonSource> poisson;
  SimTime last_report = 0;
  std::int64_t seq = 0;
  std::int64_t grant = 0;  // bytes granted in the in-flight window
  std::optional<std::int64_t> pending_report;  // sent, not yet served
};

class Engine {
 public:
  Engine(const SimConfig& cfg, RunObserver* obs)
      : cfg_(cfg),
        obs_(obs),
        warmup_(cfg.run_time_ns / 10),
        horizons_(cfg.n_wavelengths, cfg.tune_step_ns),
        sched_rng_(Rng::stream(cfg.seed, 0)) {}

  RunStats run();

 private:
  void push(SimTime t, EventKind k, int subject, std::int64_t arg = 0) {
    events_.push({t, k, subject, arg, stamp_++});
  }

  // --- receiver power accounting -----------------------------------------

  void account(Receiver& rx, RxMode m, SimTime a, SimTime b) {
    if (b <= a) return;
    auto add = [m](ReceiverAccount& acc, SimTime lo, SimTime hi) {
      switch (m) {
        case RxMode::Active: acc.active_ns += hi - lo; break;
        case RxMode::Waking: acc.waking_ns += hi - lo; break;
        case RxMode::Asleep: acc.asleep_ns += hi - lo; break;
      }
    };
    add(rx.full, a, b);
    const SimTime lo = std::max(a, warmup_);
    const SimTime hi = std::min(b, cfg_.run_time_ns);
    if (hi > lo) add(rx.windowed, lo, hi);
  }

  void sync_rx(Receiver& rx, SimTime now) {
    if (rx.mode == RxMode::Waking && now >= rx.wake_deadline) {
      account(rx, RxMode::Waking, rx.last_change, rx.wake_deadline);
      rx.mode = RxMode::Active;
      rx.last_change = rx.wake_deadline;
    }
    account(rx, rx.mode, rx.last_change, now);
    rx.last_change = now;
  }

  // Sleep rule: doze off only when the gap to the next scheduled window
  // exceeds one full wake ramp; the ramp itself is charged as on-time.
  void maybe_sleep(Wavelength w, SimTime now) {
    Receiver& rx = rx_[static_cast<std::size_t>(w)];
    sync_rx(rx, now);
    if (rx.mode != RxMode::Active || rx.busy) return;
    const auto& up = upcoming_[static_cast<std::size_t>(w)];
    const SimTime next = up.empty() ? kNever : up.begin()->first;
    if (next == kNever) {
      rx.mode = RxMode::Asleep;
      rx.pending_wake = kNever;
      return;
    }
    if (next - now > cfg_.sleep_wake_ns) {
      rx.mode = RxMode::Asleep;
      rx.pending_wake = next - cfg_.sleep_wake_ns;
      push(rx.pending_wake, EventKind::ReceiverWake, w);
    }
  }

  void on_commit_sleep(Wavelength w, SimTime start, SimTime now) {
    Receiver& rx = rx_[static_cast<std::size_t>(w)];
    sync_rx(rx, now);
    switch (rx.mode) {
      case RxMode::Asleep: {
        const SimTime ramp = start - cfg_.sleep_wake_ns;
        if (rx.pending_wake == kNever || ramp < rx.pending_wake) {
          if (ramp < now)
            throw std::logic_error("window committed inside a wake ramp");
          rx.pending_wake = ramp;
          push(ramp, EventKind::ReceiverWake, w);
        }
        break;
      }
      case RxMode::Waking:
        if (start < rx.wake_deadline)
          throw std::logic_error("window committed before ramp completion");
        break;
      case RxMode::Active:
        if (!rx.busy) maybe_sleep(w, now);
        break;
    }
  }

  // Earliest first-bit instant each wavelength can accept given receiver
  // power state; feeds the scheduler as a hard placement floor.
  NotBefore placement_floors(SimTime now) {
    floors_.assign(static_cast<std::size_t>(cfg_.n_wavelengths), 0);
    for (int w = 0; w < cfg_.n_wavelengths; ++w) {
      Receiver& rx = rx_[static_cast<std::size_t>(w)];
      sync_rx(rx, now);
      if (rx.mode == RxMode::Asleep)
        floors_[static_cast<std::size_t>(w)] = now + cfg_.sleep_wake_ns;
      else if (rx.mode == RxMode::Waking)
        floors_[static_cast<std::size_t>(w)] = rx.wake_deadline;
    }
    return floors_;
  }

  // --- window commitment ---------------------------------------------------

  void commit(const ScheduleDecision& d, SimTime now, bool from_scheduler) {
    const CarveResult carve = carve_window(voids_, horizons_, d);
    if (voids_.size() > static_cast<std::size_t>(cfg_.n_onus))
      throw std::logic_error("void count exceeded the ONU bound");
    if (from_scheduler && now >= warmup_ && carve.net_new_voids() > 0)
      ++voids_created_;

    OnuRuntime& o = onus_[static_cast<std::size_t>(d.onu)];
    const SimTime hop =
        std::abs(o.st.tuned_wavelength - d.wavelength) * cfg_.tune_step_ns;
    const SimTime end = d.window_end();
    upcoming_[static_cast<std::size_t>(d.wavelength)][d.first_bit] = {end,
                                                                      d.onu};
    push(d.first_bit - o.st.rtt / 2 - hop, EventKind::GateAtOnu, d.onu,
         d.wavelength);
    push(d.first_bit, EventKind::UpstreamStart, d.wavelength, d.onu);
    push(end, EventKind::UpstreamEnd, d.wavelength, d.first_bit);
    push(end - cfg_.guard_ns - cfg_.report_bytes * cfg_.byte_time_ns() -
             o.st.rtt / 2,
         EventKind::ReportEmit, d.onu);

    o.st.in_flight = d;
    o.grant = d.grant_bytes;
    granted_bytes_ += d.grant_bytes;
    if (obs_) obs_->on_window(d.wavelength, d.first_bit, end, d.onu);
    on_commit_sleep(d.wavelength, d.first_bit, now);
  }

  // --- event handlers ------------------------------------------------------

  void pull_arrival(OnuId k) {
    OnuRuntime& o = onus_[static_cast<std::size_t>(k)];
    std::optional<SimTime> t;
    int bytes = cfg_.packet_bytes;
    if (o.onoff) {
      t = o.onoff->next();
    } else if (o.poisson) {
      t = o.poisson->next();
    }
    if (t && *t <= cfg_.run_time_ns)
      push(*t, EventKind::PacketArrival, k, bytes);
  }

  void on_packet(const Event& e) {
    OnuRuntime& o = onus_[static_cast<std::size_t>(e.subject)];
    o.queue.push_back({e.time, static_cast<int>(e.arg)});
    o.st.queue_bytes += e.arg;
    arrived_bytes_ += e.arg;
    if (e.time >= warmup_) arrived_bytes_measured_ += e.arg;
    pull_arrival(e.subject);
  }

  void on_report_emit(const Event& e) {
    OnuRuntime& o = onus_[static_cast<std::size_t>(e.subject)];
    const ScheduleDecision& d = *o.st.in_flight;

    // The granted bytes have just finished leaving the ONU; account their
    // per-packet delivery at the OLT (first-in-first-out within the window).
    std::int64_t remaining = o.grant;
    std::int64_t cum = 0;
    while (remaining > 0) {
      if (o.queue.empty() || o.queue.front().bytes > remaining)
        throw std::logic_error("grant exceeds buffered bytes");
      const Packet p = o.queue.front();
      o.queue.pop_front();
      o.st.queue_bytes -= p.bytes;
      cum += p.bytes;
      remaining -= p.bytes;
      delivered_bytes_ += p.bytes;
      const SimTime delivered = d.first_bit + cum * cfg_.byte_time_ns();
      if (p.arrival >= warmup_) {
        const SimTime delay = delivered - p.arrival;
        ++packets_delivered_;
        delay_sum_ += static_cast<double>(delay);
        max_delay_ = std::max(max_delay_, delay);
        if (delay > o.st.d_max) {
          ++packets_over_dmax_;
          if (d.branch != Branch::EftFallback) ++packets_over_dmax_noneft_;
        }
      }
    }
    const std::int64_t requested = o.st.queue_bytes;
    reported_bytes_ += requested;
    o.pending_report = requested;
    push(e.time + o.st.rtt / 2 + cfg_.report_bytes * cfg_.byte_time_ns(),
         EventKind::ReportAtOlt, e.subject, requested);
  }

  void on_report_at_olt(const Event& e) {
    const SimTime now = e.time;
    OnuRuntime& o = onus_[static_cast<std::size_t>(e.subject)];
    voids_.gc(now);

    o.st.d_prev = o.seq == 0 ? o.st.d_const : now - o.last_report;
    o.last_report = now;
    ++o.seq;
    o.pending_report.reset();
    if (now >= warmup_) ++report_count_;

    const ReportEvent report{e.subject, now, e.arg, o.seq};
    const DelayBound bound = resolve_delay_bound(o.st, cfg_);
    if (bound.forced_eft && now >= warmup_) ++forced_eft_;

    const NotBefore floors = placement_floors(now);
    const ScheduleDecision d =
        cfg_.scheduler == SchedulerKind::EoNovm
            ? schedule(report, o.st, voids_, horizons_, cfg_, sched_rng_,
                       floors)
            : eft_schedule(report, o.st, horizons_, voids_, cfg_, floors);
    if (obs_) obs_->on_decision(report, d);
    if (now >= warmup_) {
      ++branch_counts_[static_cast<std::size_t>(d.branch)];
      if (d.violation > 0) {
        ++deadline_violations_;
        violation_excess_ += d.violation;
      }
    }
    commit(d, now, /*from_scheduler=*/true);
  }

  void on_gate(const Event& e) {
    onus_[static_cast<std::size_t>(e.subject)].st.tuned_wavelength =
        static_cast<Wavelength>(e.arg);
  }

  void on_upstream_start(const Event& e) {
    Receiver& rx = rx_[static_cast<std::size_t>(e.subject)];
    sync_rx(rx, e.time);
    if (rx.mode != RxMode::Active)
      throw std::logic_error("upstream data arrived at a sleeping receiver");
    rx.busy = true;
  }

  void on_upstream_end(const Event& e) {
    const auto w = static_cast<std::size_t>(e.subject);
    Receiver& rx = rx_[w];
    sync_rx(rx, e.time);
    if (rx.mode != RxMode::Active)
      throw std::logic_error("receiver slept through an active window");
    rx.busy = false;
    auto it = upcoming_[w].find(e.arg);
    if (it == upcoming_[w].end())
      throw std::logic_error("window end without matching commitment");
    add_busy(e.subject, it->first, it->second.first);
    upcoming_[w].erase(it);
    maybe_sleep(e.subject, e.time);
  }

  void on_receiver_wake(const Event& e) {
    Receiver& rx = rx_[static_cast<std::size_t>(e.subject)];
    if (rx.mode != RxMode::Asleep || rx.pending_wake != e.time)
      return;  // superseded by an earlier re-scheduled ramp
    sync_rx(rx, e.time);
    rx.mode = RxMode::Waking;
    rx.wake_deadline = e.time + cfg_.sleep_wake_ns;
    rx.pending_wake = kNever;
    ++rx.full.sleep_count;
    if (e.time >= warmup_) ++rx.windowed.sleep_count;
  }

  void add_busy(Wavelength w, SimTime start, SimTime end) {
    const SimTime lo = std::max(start, warmup_);
    const SimTime hi = std::min(end, cfg_.run_time_ns);
    if (hi > lo) busy_ns_[static_cast<std::size_t>(w)] += hi - lo;
  }

  void bootstrap();
  RunStats finalize();

  // --- state ---------------------------------------------------------------

  const SimConfig cfg_;
  RunObserver* obs_;
  const SimTime warmup_;

  std::priority_queue<Event, std::vector<Event>, EventAfter> events_;
  std::uint64_t stamp_ = 0;

  std::vector<OnuRuntime> onus_;
  std::vector<Receiver> rx_;
  VoidSet voids_;
  HorizonSet horizons_;
  // Committed windows per wavelength: start -> (end, onu).
  std::vector<std::map<SimTime, std::pair<SimTime, OnuId>>> upcoming_;
  std::vector<SimTime> floors_;
  std::vector<SimTime> busy_ns_;
  Rng sched_rng_;

  std::int64_t report_count_ = 0;
  std::array<std::int64_t, kBranchCount> branch_counts_{};
  std::int64_t deadline_violations_ = 0;
  SimTime violation_excess_ = 0;
  std::int64_t forced_eft_ = 0;
  std::int64_t voids_created_ = 0;
  std::int64_t packets_delivered_ = 0;
  std::int64_t packets_over_dmax_ = 0;
  std::int64_t packets_over_dmax_noneft_ = 0;
  double delay_sum_ = 0;
  SimTime max_delay_ = 0;
  std::int64_t arrived_bytes_ = 0;
  std::int64_t arrived_bytes_measured_ = 0;
  std::int64_t delivered_bytes_ = 0;
  std::int64_t granted_bytes_ = 0;
  std::int64_t reported_bytes_ = 0;
};

void Engine::bootstrap() {
  const int n = cfg_.n_onus;
  const int w = cfg_.n_wavelengths;
  onus_.resize(static_cast<std::size_t>(n));
  rx_.resize(static_cast<std::size_t>(w));
  upcoming_.resize(static_cast<std::size_t>(w));
  busy_ns_.assign(static_cast<std::size_t>(w), 0);

  for (int k = 0; k < n; ++k) {
    OnuRuntime& o = onus_[static_cast<std::size_t>(k)];
    o.st.id = k;
    o.st.tuned_wavelength = k % w;
    o.st.rtt = cfg_.rtt_ns;
    o.st.d_max = cfg_.d_max_ns;
    o.st.d_const = cfg_.d_const_ns();
    o.st.d_prev = o.st.d_const;
    if (cfg_.traffic == TrafficModel::ParetoOnOff) {
      o.onoff.emplace(TrafficParams::from_config(cfg_),
                      Rng::stream(cfg_.seed, 1000 + static_cast<unsigned>(k)));
    } else {
      o.poisson.emplace(TrafficParams::from_config(cfg_),
                        Rng::stream(cfg_.seed, 1000 + static_cast<unsigned>(k)));
    }
    pull_arrival(k);
  }

  // Initial polling round: every ONU gets a REPORT-only window on its
  // home wavelength, packed back to back.
  const SimTime t_w = cfg_.window_ns(0);
  std::vector<SimTime> next_fb(static_cast<std::size_t>(w),
                               cfg_.gate_gen_ns + cfg_.gate_tx_ns +
                                   cfg_.rtt_ns);
  for (int k = 0; k < n; ++k) {
    const Wavelength lambda = k % w;
    ScheduleDecision d;
    d.onu = k;
    d.wavelength = lambda;
    d.first_bit = next_fb[static_cast<std::size_t>(lambda)];
    d.gate_time = 0;
    d.window = t_w;
    d.grant_bytes = 0;
    d.branch = Branch::HorizonClub;
    d.deadline = d.first_bit + t_w;
    commit(d, 0, /*from_scheduler=*/false);
    next_fb[static_cast<std::size_t>(lambda)] += t_w;
  }
  for (int j = 0; j < w; ++j) maybe_sleep(j, 0);
}

RunStats Engine::finalize() {
  RunStats s;
  s.run_time_ns = cfg_.run_time_ns;
  s.warmup_ns = warmup_;
  s.measured_time_ns = cfg_.run_time_ns - warmup_;

  for (int j = 0; j < cfg_.n_wavelengths; ++j) {
    Receiver& rx = rx_[static_cast<std::size_t>(j)];
    sync_rx(rx, cfg_.run_time_ns);
    const SimTime total =
        rx.full.active_ns + rx.full.waking_ns + rx.full.asleep_ns;
    if (total != cfg_.run_time_ns)
      throw std::logic_error("receiver accounting does not cover the run");
    s.receivers.push_back(rx.windowed);
    s.receivers_full.push_back(rx.full);
    s.voids_exploited += rx.windowed.sleep_count;
    // Windows still committed when the run ends occupy the line too.
    for (const auto& [start, rest] : upcoming_[static_cast<std::size_t>(j)])
      add_busy(j, start, std::min(rest.first, cfg_.run_time_ns));
  }

  std::int64_t backlog = 0;
  for (const auto& o : onus_) backlog += o.st.queue_bytes;
  if (arrived_bytes_ != delivered_bytes_ + backlog)
    throw std::logic_error("byte conservation failed");

  std::int64_t pending = 0;
  for (const auto& o : onus_)
    if (o.pending_report) pending += *o.pending_report;
  if (granted_bytes_ + pending != reported_bytes_)
    throw std::logic_error("gated grant accounting failed");

  s.efficiency_pct = efficiency_from_accounting(s.receivers,
                                                s.measured_time_ns);
  s.eta_max_pct = eta_max(cfg_);
  s.packets_delivered = packets_delivered_;
  s.avg_delay_ns =
      packets_delivered_ > 0 ? delay_sum_ / static_cast<double>(
                                                packets_delivered_)
                             : 0.0;
  s.max_delay_ns = max_delay_;
  s.packets_over_dmax = packets_over_dmax_;
  s.packets_over_dmax_noneft = packets_over_dmax_noneft_;
  s.deadline_violations = deadline_violations_;
  s.deadline_violation_excess_ns = violation_excess_;
  s.forced_eft = forced_eft_;
  s.report_count = report_count_;
  s.voids_created = voids_created_;
  s.branch_counts = branch_counts_;

  SimTime busy_total = 0;
  for (SimTime b : busy_ns_) busy_total += b;
  s.t_v_agg_ns = (static_cast<SimTime>(cfg_.n_wavelengths) *
                      s.measured_time_ns -
                  busy_total) /
                 cfg_.n_wavelengths;

  s.arrived_bytes = arrived_bytes_;
  s.delivered_bytes = delivered_bytes_;
  s.final_backlog_bytes = backlog;
  s.offered_load =
      s.measured_time_ns > 0 && cfg_.n_onus > 0
          ? static_cast<double>(arrived_bytes_measured_) * 8.0 * 1e9 /
                (static_cast<double>(s.measured_time_ns) *
                 static_cast<double>(cfg_.n_onus) *
                 static_cast<double>(cfg_.peak_rate_bps))
          : 0.0;
  // A healthy gated system holds at most a couple of polling cycles of
  // inventory; several delay bounds' worth means the queues kept growing.
  const double offered_rate_bytes =
      static_cast<double>(cfg_.n_onus) *
      static_cast<double>(cfg_.peak_rate_bps) * cfg_.load / 8.0;
  const double backlog_limit = std::max(
      static_cast<double>(arrived_bytes_) / 10.0,
      offered_rate_bytes * 4.0 * static_cast<double>(cfg_.d_max_ns) / 1e9);
  s.stable = !cfg_.overloaded() &&
             (arrived_bytes_ == 0 || static_cast<double>(backlog) <=
                                         backlog_limit);
  return s;
}

RunStats Engine::run() {
  cfg_.validate();
  bootstrap();
  push(cfg_.run_time_ns, EventKind::SimEnd, 0);

  while (!events_.empty()) {
    const Event e = events_.top();
    events_.pop();
    if (e.kind == EventKind::SimEnd) break;
    switch (e.kind) {
      case EventKind::PacketArrival: on_packet(e); break;
      case EventKind::ReportEmit: on_report_emit(e); break;
      case EventKind::ReportAtOlt: on_report_at_olt(e); break;
      case EventKind::GateAtOnu: on_gate(e); break;
      case EventKind::UpstreamStart: on_upstream_start(e); break;
      case EventKind::UpstreamEnd: on_upstream_end(e); break;
      case EventKind::ReceiverWake: on_receiver_wake(e); break;
      case EventKind::SimEnd: break;
    }
  }
  return finalize();
}

}  // namespace

RunStats run(const SimConfig& cfg, RunObserver* observer) {
  Engine engine(cfg, observer);
  return engine.run();
}

}  // namespace eonovm
