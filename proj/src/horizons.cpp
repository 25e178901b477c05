#include "eonovm/horizons.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>

namespace eonovm {

HorizonSet::HorizonSet(int wavelengths, SimTime tune_step)
    : tune_step_(tune_step),
      lf_(static_cast<std::size_t>(wavelengths), 0),
      by_lf_(static_cast<std::size_t>(wavelengths)),
      by_tuned_(static_cast<std::size_t>(wavelengths)) {
  assert(wavelengths >= 1);
  refresh();
}

void HorizonSet::set_lf(Wavelength j, SimTime value) {
  lf_[static_cast<std::size_t>(j)] = value;
  stale_ = true;
}

void HorizonSet::refresh() {
  if (!stale_) return;
  const int w = wavelengths();
  std::iota(by_lf_.begin(), by_lf_.end(), 0);
  // Ties broken by wavelength index: every view is a deterministic
  // permutation, so re-derivation from scratch is reproducible.
  std::sort(by_lf_.begin(), by_lf_.end(), [this](int a, int b) {
    if (lf(a) != lf(b)) return lf(a) < lf(b);
    return a < b;
  });
  for (int c = 0; c < w; ++c) {
    auto& view = by_tuned_[static_cast<std::size_t>(c)];
    view.resize(static_cast<std::size_t>(w));
    std::iota(view.begin(), view.end(), 0);
    std::sort(view.begin(), view.end(), [this, c](int a, int b) {
      if (tuned_key(c, a) != tuned_key(c, b))
        return tuned_key(c, a) < tuned_key(c, b);
      return a < b;
    });
  }
  stale_ = false;
}

const std::vector<int>& HorizonSet::by_lf() const {
  assert(!stale_);
  return by_lf_;
}

const std::vector<int>& HorizonSet::by_tuned(Wavelength c) const {
  assert(!stale_);
  return by_tuned_[static_cast<std::size_t>(c)];
}

}  // namespace eonovm
