#pragma once

#include <cstdint>
#include <cstddef>

namespace mwer {

// Deterministic splitmix64 stream. We avoid <random> distributions because
// their output is implementation-defined; every sample here is a pure
// function of the seed, so audits replay identically everywhere.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1), 53 bits.
  double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform index in [0, n). n must be positive.
  std::size_t next_index(std::size_t n) {
    return static_cast<std::size_t>(
        (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
  }

  double next_real(double lo, double hi) { return lo + (hi - lo) * next_unit(); }

  bool next_bool(double p_true = 0.5) { return next_unit() < p_true; }

  // Derives an independent stream for (seed, stream) pairs; used to make
  // trials order- and scheduling-independent.
  static std::uint64_t derive(std::uint64_t seed, std::uint64_t stream) {
    Rng r(seed ^ (0x9e3779b97f4a7c15ULL * (stream + 1)));
    r.next_u64();
    return r.next_u64();
  }

 private:
  std::uint64_t state_;
};

}  // namespace mwer
