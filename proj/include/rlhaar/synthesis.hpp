#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Core>
#include <unsupported/Eigen/FFT>

namespace rlhaar::synthesis {

/// Scratch buffers plus an FFT object (which caches plans per size).  One per
/// worker thread; contents carry no state between calls.
struct ConvWorkspace {
  std::vector<double> time;
  std::vector<std::complex<double>> freq;
  Eigen::FFT<double> fft;
  ConvWorkspace() { fft.SetFlag(Eigen::FFT<double>::HalfSpectrum); }
};

/// A term of a sparse-shift convolution: path[offset + g] += coeff * table[g].
struct ShiftTerm {
  std::int64_t offset;
  double coeff;
};

/// Half-spectrum FFT of `table` zero-padded to `fft_size`; pairs with
/// add_shifted_kernels' FFT route.
std::vector<std::complex<double>> kernel_spectrum(const Eigen::VectorXd& table,
                                                  std::int64_t fft_size);

/// Adds sum_i coeff_i * table[g - offset_i] over the first `path.size()`
/// entries.  Chooses between the direct per-term loop and one circular FFT
/// convolution by an operation-count model; `spectrum` may be null to force
/// the direct route.  `extent` bounds the nonzero part of the table (index of
/// last nonzero entry) and table[0] must be zero (true of every integrated
/// Haar kernel).  Both routes are deterministic for a fixed term list.
void add_shifted_kernels(Eigen::Ref<Eigen::VectorXd> path,
                         std::span<const ShiftTerm> terms,
                         const Eigen::VectorXd& table, std::int64_t extent,
                         const std::vector<std::complex<double>>* spectrum,
                         std::int64_t fft_size, ConvWorkspace& workspace);

/// Direct-route operation count for the cost model (exact sum of loop trips).
double direct_cost(std::span<const ShiftTerm> terms, std::int64_t extent,
                   std::int64_t path_size);

/// Equivalent-operation cost of the FFT route for the model.
double fft_cost(std::int64_t fft_size);

}  // namespace rlhaar::synthesis
