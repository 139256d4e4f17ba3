#pragma once

#include <cstdint>
#include <random>

namespace phasefit {

/// SplitMix64 step; used to scramble seeds so that nearby (root, index)
/// pairs produce unrelated streams.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Derive a child seed from a root seed plus a (domain, index) address.
/// Statically assigned substreams keep stochastic runs reproducible and
/// independent of evaluation order and worker count.
inline std::uint64_t derive_seed(std::uint64_t root, std::uint64_t domain, std::uint64_t index) {
  std::uint64_t s = root;
  s ^= splitmix64(domain);
  std::uint64_t d = domain + 0x632be59bd9b4e019ULL * (index + 1);
  s ^= splitmix64(d);
  return splitmix64(s);
}

/// Seeded mt19937_64 with a canonical [0,1) double generator. The stream is
/// the unit of determinism: identical seed, identical draw sequence.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) {
    std::uint64_t s = seed;
    std::seed_seq seq{static_cast<std::uint32_t>(splitmix64(s)), static_cast<std::uint32_t>(splitmix64(s)),
                      static_cast<std::uint32_t>(splitmix64(s)), static_cast<std::uint32_t>(splitmix64(s)),
                      static_cast<std::uint32_t>(splitmix64(s)), static_cast<std::uint32_t>(splitmix64(s))};
    eng_.seed(seq);
  }

  RngStream(std::uint64_t root, std::uint64_t domain, std::uint64_t index)
      : RngStream(derive_seed(root, domain, index)) {}

  std::uint64_t next_u64() { return eng_(); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  double uniform(double a, double b) { return a + (b - a) * uniform(); }

 private:
  std::mt19937_64 eng_;
};

}  // namespace phasefit
