#pragma once

#include <cstdint>

namespace rlhaar {

/// Order parameter of the Riemann-Liouville process together with the
/// gamma-function values every kernel evaluation needs.
///
/// Construction rejects alpha <= 1/2 (the process has no continuous version
/// there and none of the formulas in this library apply).  When 2*alpha is an
/// integer the gamma values are computed by the exact half-integer/factorial
/// recurrences; otherwise std::tgamma is used (relative accuracy of a few ulp
/// on this platform's libm, well inside the 1e-13 requirement).
struct RLParams {
  double alpha;
  double gamma_alpha;         // Gamma(alpha)
  double gamma_alpha_plus_1;  // Gamma(alpha + 1)

  static RLParams make(double alpha);

  bool is_critical() const { return alpha == 1.5; }
};

/// Gamma(x) for x > 0, exact recurrence for integer and half-integer x,
/// std::tgamma otherwise.
double gamma_positive(double x);

}  // namespace rlhaar
