#pragma once

#include <cstdlib>
#include <vector>

#include "eonovm/types.hpp"

namespace eonovm {

/// Per-wavelength latest scheduling horizon lf_j plus the sorted auxiliary
/// views the online decision relies on: one permutation ordered by lf_j and,
/// for each possible currently-tuned wavelength c, one ordered by
/// lf_j - |c-j| * tune_step. Views are rebuilt lazily after horizon updates;
/// readers must refresh() first (the decision procedure requires current
/// views, and keeping the sort off the hot path is what makes it cheap).
class HorizonSet {
 public:
  HorizonSet(int wavelengths, SimTime tune_step);

  int wavelengths() const { return static_cast<int>(lf_.size()); }
  SimTime tune_step() const { return tune_step_; }

  SimTime lf(Wavelength j) const { return lf_[static_cast<std::size_t>(j)]; }
  void set_lf(Wavelength j, SimTime value);

  SimTime tune(Wavelength c, Wavelength j) const {
    return static_cast<SimTime>(std::abs(c - j)) * tune_step_;
  }
  SimTime tuned_key(Wavelength c, Wavelength j) const {
    return lf(j) - tune(c, j);
  }

  bool fresh() const { return !stale_; }
  void refresh();

  /// Wavelengths ordered by (lf_j, j) ascending.
  const std::vector<int>& by_lf() const;
  /// Wavelengths ordered by (lf_j - |c-j|*tune_step, j) ascending.
  const std::vector<int>& by_tuned(Wavelength c) const;

 private:
  SimTime tune_step_;
  std::vector<SimTime> lf_;
  std::vector<int> by_lf_;
  std::vector<std::vector<int>> by_tuned_;
  bool stale_ = true;
};

}  // namespace eonovm
