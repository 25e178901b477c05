#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "eonovm/types.hpp"

namespace eonovm {

/// A maximal idle interval [start, end) on one wavelength.
struct Void {
  SimTime start = 0;
  SimTime end = 0;
  Wavelength wavelength = 0;

  SimTime width() const { return end - start; }
};

/// All idle intervals, kept sorted by (wavelength, start). Indices into this
/// canonical order are the identities used by the scheduler's candidate
/// sets, so iteration order is part of the contract.
class VoidSet {
 public:
  std::size_t size() const { return voids_.size(); }
  bool empty() const { return voids_.empty(); }
  const Void& operator[](std::size_t i) const { return voids_[i]; }
  auto begin() const { return voids_.begin(); }
  auto end() const { return voids_.end(); }

  /// Inserts preserving canonical order. Zero- or negative-width voids are
  /// dropped. Returns true when the void was actually stored.
  bool insert(const Void& v);

  void erase(std::size_t index);

  /// Index of the void on `w` containing [start, end), if any.
  std::optional<std::size_t> find_covering(Wavelength w, SimTime start,
                                           SimTime end) const;

  /// Drops voids that ended at or before `now`; they can never be filled.
  /// Returns the number removed.
  std::size_t gc(SimTime now);

  void clear() { voids_.clear(); }

 private:
  std::vector<Void> voids_;
};

}  // namespace eonovm
