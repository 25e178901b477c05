#include "eonovm/traffic.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>

namespace eonovm {

TrafficParams TrafficParams::from_config(const SimConfig& cfg) {
  TrafficParams p;
  p.alpha_on = cfg.alpha_on;
  p.alpha_off = cfg.alpha_off;
  p.load = cfg.load;
  p.peak_rate_bps = cfg.peak_rate_bps;
  p.packet_bytes = cfg.packet_bytes;
  p.min_on_ns = static_cast<double>(cfg.mean_on_ns) * (cfg.alpha_on - 1.0) /
                cfg.alpha_on;
  p.cap_ratio = cfg.burst_cap_ratio;
  if (p.load > 0.0 && p.load < 1.0)
    p.min_off_ns = calibrate_off_scale_capped(p);
  return p;
}

double TrafficParams::capped_pareto_mean(double shape, double scale,
                                         double ratio) {
  // E[min(X, ratio*scale)] for Pareto(shape, scale).
  return scale * (shape - std::pow(ratio, 1.0 - shape)) / (shape - 1.0);
}

double pareto_sample(double shape, double scale, double u) {
  assert(u > 0.0 && u < 1.0);
  assert(shape > 1.0 && scale > 0.0);
  return scale * std::pow(u, -1.0 / shape);
}

double calibrate_off_scale(const TrafficParams& p) {
  assert(p.load > 0.0 && p.load < 1.0);
  const double mean_off = p.mean_on_ns() * (1.0 - p.load) / p.load;
  return mean_off * (p.alpha_off - 1.0) / p.alpha_off;
}

double calibrate_off_scale_capped(const TrafficParams& p) {
  assert(p.load > 0.0 && p.load < 1.0);
  const double mean_off = p.capped_mean_on_ns() * (1.0 - p.load) / p.load;
  // capped mean is linear in the scale when the cap is a fixed multiple
  return mean_off * (p.alpha_off - 1.0) /
         (p.alpha_off - std::pow(p.cap_ratio, 1.0 - p.alpha_off));
}

OnOffSource::OnOffSource(const TrafficParams& params, Rng rng)
    : params_(params), rng_(rng) {}

std::optional<SimTime> OnOffSource::next() {
  if (params_.load <= 0.0) return std::nullopt;
  const double interval = params_.packet_interval_ns();

  if (params_.load >= 1.0) {  // OFF disabled: continuous stream
    clock_ns_ += interval - credit_ns_;
    credit_ns_ = 0;
    return static_cast<SimTime>(std::llround(clock_ns_));
  }

  for (;;) {
    if (!in_on_) {
      clock_ns_ += std::min(
          pareto_sample(params_.alpha_off, params_.min_off_ns,
                        rng_.unit_open()),
          params_.cap_ratio * params_.min_off_ns);
      on_end_ns_ =
          clock_ns_ + std::min(pareto_sample(params_.alpha_on,
                                             params_.min_on_ns,
                                             rng_.unit_open()),
                               params_.cap_ratio * params_.min_on_ns);
      in_on_ = true;
    }
    const double need = interval - credit_ns_;
    if (clock_ns_ + need <= on_end_ns_) {
      clock_ns_ += need;
      credit_ns_ = 0;
      return static_cast<SimTime>(std::llround(clock_ns_));
    }
    // Burst too short for another packet; bank the remainder.
    credit_ns_ += on_end_ns_ - clock_ns_;
    clock_ns_ = on_end_ns_;
    in_on_ = false;
  }
}

PoissonSource::PoissonSource(const TrafficParams& params, Rng rng)
    : params_(params), rng_(rng) {
  const double bytes_per_ns = static_cast<double>(params_.peak_rate_bps) *
                              params_.load / 8.0e9;
  rate_per_ns_ = bytes_per_ns / static_cast<double>(params_.packet_bytes);
}

std::optional<SimTime> PoissonSource::next() {
  if (rate_per_ns_ <= 0.0) return std::nullopt;
  clock_ns_ += -std::log(rng_.unit_open()) / rate_per_ns_;
  return static_cast<SimTime>(std::llround(clock_ns_));
}

}  // namespace eonovm
