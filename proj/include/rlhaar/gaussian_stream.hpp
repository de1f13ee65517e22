#pragma once

#include <cstdint>

#include "rlhaar/basis.hpp"

namespace rlhaar {

/// Counter-based standard-normal generator: the variate for a cell
/// (master_seed, replica, counter) is a pure function of the triple, so any
/// worker may evaluate any cell in any order and always reproduce the same
/// number.
///
/// Mapping (documented contract, stable across releases):
///   s0 = mix(master_seed), s1 = mix(s0 ^ replica), s2 = mix(s1 ^ counter)
///   w0 = mix(s2), w1 = mix(s2 ^ 0x9e3779b97f4a7c15)
/// where mix is the SplitMix64 finalizer (add golden gamma, xor-shift-multiply
/// twice).  w0, w1 are mapped to open-interval uniforms u = (w >> 11 + 1/2) /
/// 2^53 and combined by the Box-Muller cosine branch
///   z = sqrt(-2 ln u0) * cos(2 pi u1).
///
/// Basis-term coefficients use counter = BasisIndex::key(), which ties every
/// xi to its basis function independently of any truncation plan.
class GaussianStream {
 public:
  explicit GaussianStream(std::uint64_t master_seed) : master_seed_(master_seed) {}

  std::uint64_t master_seed() const { return master_seed_; }

  double normal(std::uint64_t replica, std::uint64_t counter) const;
  double normal_for(std::uint64_t replica, const BasisIndex& index) const {
    return normal(replica, index.key());
  }

 private:
  std::uint64_t master_seed_;
};

}  // namespace rlhaar
