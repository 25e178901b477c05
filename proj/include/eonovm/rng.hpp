#pragma once

#include <cstdint>

namespace eonovm {

// splitmix64 generator. Chosen over <random> engines so that every stream is
// a couple of machine words and the draw sequence is identical on any
// conforming compiler. Reproducibility of runs depends on it.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  // Decorrelated stream derived from (seed, stream_id). Used to give the
  // scheduler and each traffic source an independent sequence.
  static Rng stream(std::uint64_t seed, std::uint64_t stream_id) {
    Rng mixer(seed + 0x9e3779b97f4a7c15ull * (stream_id + 1));
    mixer.next_u64();
    return mixer;
  }

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Uniform in [0, n). Plain modulo: the bias at n << 2^64 is irrelevant here
  // and the result does not depend on library internals.
  std::uint64_t bounded(std::uint64_t n) { return n <= 1 ? 0 : next_u64() % n; }

  // Uniform double in [0, 1) with 53 significant bits.
  double unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform double in (0, 1); resamples the (astronomically rare) zero.
  double unit_open() {
    double u = unit();
    while (u == 0.0) u = unit();
    return u;
  }

  std::uint64_t state() const { return state_; }

 private:
  std::uint64_t state_;
};

}  // namespace eonovm
