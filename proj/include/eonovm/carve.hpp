#pragma once

#include "eonovm/decision.hpp"
#include "eonovm/horizons.hpp"
#include "eonovm/voids.hpp"

namespace eonovm {

struct CarveResult {
  int voids_added = 0;
  int voids_removed = 0;
  bool extended_horizon = false;

  int net_new_voids() const { return voids_added - voids_removed; }
};

/// Commits a decision's window into the void/horizon bookkeeping: splits the
/// covering void, or advances the horizon (opening a gap void when the
/// window starts past it). Throws std::logic_error if the window overlaps
/// anything already scheduled; that means the decision procedure is broken
/// and the run must not continue. Sorted horizon views are refreshed before
/// returning.
CarveResult carve_window(VoidSet& voids, HorizonSet& horizons,
                         const ScheduleDecision& d);

}  // namespace eonovm
