#include "rlhaar/synthesis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rlhaar::synthesis {

namespace {
// Measured on this project's workloads: one kissfft half-spectrum transform of
// size M costs about as much as 2 * M * log2(M) direct fused adds, and the
// route needs two transforms plus the spectral product.
constexpr double kFftOpsPerNLogN = 5.0;
}  // namespace

std::vector<std::complex<double>> kernel_spectrum(const Eigen::VectorXd& table,
                                                  std::int64_t fft_size) {
  if (fft_size < table.size()) {
    throw std::invalid_argument("kernel_spectrum: fft_size must cover the table");
  }
  std::vector<double> padded(static_cast<std::size_t>(fft_size), 0.0);
  std::copy(table.data(), table.data() + table.size(), padded.begin());
  std::vector<std::complex<double>> spectrum;
  Eigen::FFT<double> fft;
  fft.SetFlag(Eigen::FFT<double>::HalfSpectrum);
  fft.fwd(spectrum, padded);
  return spectrum;
}

double direct_cost(std::span<const ShiftTerm> terms, std::int64_t extent,
                   std::int64_t path_size) {
  double ops = 0.0;
  for (const auto& term : terms) {
    const std::int64_t span = std::min(extent + 1, path_size - term.offset);
    if (span > 0) ops += static_cast<double>(span);
  }
  return ops;
}

double fft_cost(std::int64_t fft_size) {
  const double m = static_cast<double>(fft_size);
  return kFftOpsPerNLogN * m * std::log2(m);
}

void add_shifted_kernels(Eigen::Ref<Eigen::VectorXd> path,
                         std::span<const ShiftTerm> terms,
                         const Eigen::VectorXd& table, std::int64_t extent,
                         const std::vector<std::complex<double>>* spectrum,
                         std::int64_t fft_size, ConvWorkspace& workspace) {
  const std::int64_t path_size = path.size();
  if (terms.empty()) return;

  const bool use_fft =
      spectrum != nullptr && direct_cost(terms, extent, path_size) > fft_cost(fft_size);

  if (!use_fft) {
    double* p = path.data();
    const double* tb = table.data();
    for (const auto& term : terms) {
      const std::int64_t off = term.offset;
      const std::int64_t span = std::min(extent + 1, path_size - off);
      const double c = term.coeff;
      for (std::int64_t g = 1; g < span; ++g) p[off + g] += c * tb[g];
    }
    return;
  }

  auto& coeffs = workspace.time;
  coeffs.assign(static_cast<std::size_t>(fft_size), 0.0);
  for (const auto& term : terms) {
    coeffs[static_cast<std::size_t>(term.offset)] += term.coeff;
  }
  workspace.fft.fwd(workspace.freq, coeffs);
  for (std::size_t i = 0; i < workspace.freq.size(); ++i) {
    workspace.freq[i] *= (*spectrum)[i];
  }
  workspace.fft.inv(coeffs, workspace.freq);
  for (std::int64_t i = 0; i < path_size; ++i) path[i] += coeffs[static_cast<std::size_t>(i)];
}

}  // namespace rlhaar::synthesis
