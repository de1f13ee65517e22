#pragma once

#include "rlhaar/params.hpp"

namespace rlhaar {

/// Covariance of R^alpha from the white-noise representation,
///   Cov(s,t) = Gamma(alpha)^{-2} Int_0^{min(s,t)} (t-u)^{alpha-1} (s-u)^{alpha-1} du,
/// evaluated by tanh-sinh quadrature with the endpoint singularity at
/// u = min(s,t) absorbed by the transformation (absolute error <= 1e-10).
/// The diagonal uses the closed form t^{2 alpha - 1} / ((2 alpha - 1) Gamma(alpha)^2).
double exact_covariance(const RLParams& params, double s, double t);

/// Finite Parseval sum of the Haar expansion:
///   drift(s) drift(t) + sum_{j<=J} sum_k (R_alpha h_{j,k})(s) (R_alpha h_{j,k})(t).
/// Monotone nondecreasing in J on the diagonal.
double basis_covariance(const RLParams& params, double s, double t, int max_level);

}  // namespace rlhaar
