#include "eonovm/voids.hpp"

#include <algorithm>

namespace eonovm {

namespace {

bool before(const Void& a, const Void& b) {
  if (a.wavelength != b.wavelength) return a.wavelength < b.wavelength;
  return a.start < b.start;
}

}  // namespace

bool VoidSet::insert(const Void& v) {
  if (v.width() <= 0) return false;
  auto it = std::upper_bound(voids_.begin(), voids_.end(), v, before);
  voids_.insert(it, v);
  return true;
}

void VoidSet::erase(std::size_t index) {
  voids_.erase(voids_.begin() + static_cast<std::ptrdiff_t>(index));
}

std::optional<std::size_t> VoidSet::find_covering(Wavelength w, SimTime start,
                                                  SimTime end) const {
  for (std::size_t i = 0; i < voids_.size(); ++i) {
    const Void& v = voids_[i];
    if (v.wavelength != w) continue;
    if (v.start > start) break;  // sorted by start within a wavelength
    if (v.start <= start && end <= v.end) return i;
  }
  return std::nullopt;
}

std::size_t VoidSet::gc(SimTime now) {
  std::size_t before_count = voids_.size();
  std::erase_if(voids_, [now](const Void& v) { return v.end <= now; });
  return before_count - voids_.size();
}

}  // namespace eonovm
