#include "eonovm/carve.hpp"

#include <stdexcept>
#include <string>

namespace eonovm {

namespace {

[[noreturn]] void overlap_error(const ScheduleDecision& d, const char* what) {
  throw std::logic_error(
      "carve_window: window [" + std::to_string(d.first_bit) + ", " +
      std::to_string(d.window_end()) + ") on wavelength " +
      std::to_string(d.wavelength) + " " + what);
}

}  // namespace

CarveResult carve_window(VoidSet& voids, HorizonSet& horizons,
                         const ScheduleDecision& d) {
  CarveResult result;
  const SimTime ws = d.first_bit;
  const SimTime we = d.window_end();
  const SimTime lf = horizons.lf(d.wavelength);

  if (we <= lf) {
    // Window lies before the horizon: it must sit inside one void.
    auto idx = voids.find_covering(d.wavelength, ws, we);
    if (!idx) overlap_error(d, "overlaps scheduled transmissions");
    Void v = voids[*idx];
    voids.erase(*idx);
    result.voids_removed = 1;
    if (voids.insert({v.start, ws, v.wavelength})) ++result.voids_added;
    if (voids.insert({we, v.end, v.wavelength})) ++result.voids_added;
  } else {
    if (ws < lf) overlap_error(d, "straddles the scheduling horizon");
    if (ws > lf && voids.insert({lf, ws, d.wavelength})) ++result.voids_added;
    horizons.set_lf(d.wavelength, we);
    result.extended_horizon = true;
  }

  horizons.refresh();
  return result;
}

}  // namespace eonovm
