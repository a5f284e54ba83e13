#pragma once

// Deterministic, platform-independent random streams.  Every random choice
// in the library derives from a 64-bit seed through derive_seed, so a run
// is reproducible bit-for-bit regardless of thread count.

#include <complex>
#include <cstdint>

namespace trop {

// splitmix64 step (Vigna); full-period mixer on 64-bit state
inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Mixes a base seed with up to three stream tags.  Used to hand out
// independent substreams (gamma choices, slice phases, per-path seeds).
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a,
                                 std::uint64_t b = 0, std::uint64_t c = 0) {
  std::uint64_t s = base;
  splitmix64(s);
  s ^= a + 0x9e3779b97f4a7c15ULL;
  splitmix64(s);
  s ^= b + 0xd1b54a32d192ed03ULL;
  splitmix64(s);
  s ^= c + 0x8cb92ba72f3d8dd7ULL;
  std::uint64_t state = s;
  return splitmix64(state);
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() { return splitmix64(state_); }

  // uniform in [0,1), 53 bits of the next word
  double uniform01() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // uniform integer in [lo, hi] inclusive
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<std::int64_t>(next_u64() % span);
  }

  // point on the unit circle; the standard generic-constant choice
  std::complex<double> unit_complex() {
    const double theta = 2.0 * 3.14159265358979323846 * uniform01();
    return {std::cos(theta), std::sin(theta)};
  }

 private:
  std::uint64_t state_;
};

}  // namespace trop
