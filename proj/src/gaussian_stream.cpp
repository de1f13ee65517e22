#include "rlhaar/gaussian_stream.hpp"

#include <cmath>
#include <numbers>

namespace rlhaar {

namespace {

constexpr std::uint64_t kGoldenGamma = 0x9e3779b97f4a7c15ULL;

// SplitMix64 finalizer.
inline std::uint64_t mix(std::uint64_t z) {
  z += kGoldenGamma;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Uniform in the open interval (0,1): 53 high bits, offset by half an ulp.
inline double open_uniform(std::uint64_t w) {
  return (static_cast<double>(w >> 11) + 0.5) * 0x1.0p-53;
}

}  // namespace

double GaussianStream::normal(std::uint64_t replica, std::uint64_t counter) const {
  const std::uint64_t s0 = mix(master_seed_);
  const std::uint64_t s1 = mix(s0 ^ replica);
  const std::uint64_t s2 = mix(s1 ^ counter);
  const double u0 = open_uniform(mix(s2));
  const double u1 = open_uniform(mix(s2 ^ kGoldenGamma));
  return std::sqrt(-2.0 * std::log(u0)) * std::cos(2.0 * std::numbers::pi * u1);
}

}  // namespace rlhaar
