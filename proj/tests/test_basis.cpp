#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "rlhaar/basis.hpp"
#include "rlhaar/params.hpp"

using namespace rlhaar;

namespace {

// Independent long-double oracle for the three-term kernel; ~19 significant
// digits, enough to referee the double-precision branches below t ~ 1e4.
long double h_oracle(long double t) {
  const auto p = [](long double x) { return x > 0.0L ? std::powl(x, 1.5L) : 0.0L; };
  return p(t) - 2.0L * p(t - 1.0L) + p(t - 2.0L);
}

long double gamma52_oracle() { return 0.75L * std::sqrtl(std::numbers::pi_v<long double>); }

}  // namespace

TEST_CASE("RLParams gamma values") {
  const RLParams p = RLParams::make(1.5);
  CHECK(p.gamma_alpha == doctest::Approx(std::sqrt(std::numbers::pi) / 2.0).epsilon(1e-15));
  CHECK(p.gamma_alpha_plus_1 ==
        doctest::Approx(static_cast<double>(gamma52_oracle())).epsilon(1e-15));

  for (double alpha : {0.6, 0.75, 1.0, 1.25, 1.5, 2.0, 2.7182818, 5.5}) {
    const RLParams q = RLParams::make(alpha);
    CHECK(q.gamma_alpha_plus_1 == doctest::Approx(alpha * q.gamma_alpha).epsilon(1e-12));
  }
  CHECK(gamma_positive(4.0) == 6.0);
  CHECK(gamma_positive(1.0) == 1.0);

  CHECK_THROWS_AS(RLParams::make(0.5), std::invalid_argument);
  CHECK_THROWS_AS(RLParams::make(0.0), std::invalid_argument);
  CHECK_THROWS_AS(RLParams::make(-1.0), std::invalid_argument);
}

TEST_CASE("BasisIndex keys and validation") {
  CHECK(BasisIndex::drift().key() == 0);
  CHECK(BasisIndex::haar(0, 0).key() == 1);
  CHECK(BasisIndex::haar(3, 5).key() == 13);

  for (std::uint64_t key = 0; key < 4096; ++key) {
    CHECK(BasisIndex::from_key(key).key() == key);
  }
  CHECK_THROWS_AS(BasisIndex::haar(2, 4), std::invalid_argument);
  CHECK_THROWS_AS(BasisIndex::haar(2, -1), std::invalid_argument);
  CHECK_THROWS_AS(BasisIndex::haar(-1, 0), std::invalid_argument);
  CHECK_THROWS_AS(BasisIndex::drift().level(), std::logic_error);
}

TEST_CASE("eval_haar pointwise values") {
  CHECK(eval_haar(0, 0, 0.25) == 1.0);
  CHECK(eval_haar(0, 0, 0.5) == -1.0);   // left endpoint of the negative half
  CHECK(eval_haar(2, 1, 0.3) == 2.0);    // t in [2/8, 3/8), amplitude 2^{2/2}
  CHECK(eval_haar(0, 0, 1.0) == 0.0);    // half-open right end
  CHECK(eval_haar(4, 15, 1.0) == 0.0);
  CHECK(eval_haar(3, 2, 0.1) == 0.0);    // outside the support
  CHECK_THROWS_AS(eval_haar(2, 1, 1.5), std::invalid_argument);
}

TEST_CASE("Haar orthonormality via exact piecewise integration") {
  // Products of two Haar functions with levels <= 6 are constant on the
  // dyadic cells of level 8, so midpoint sums are exact integrals.
  constexpr int kMaxJ = 6;
  constexpr int kCellLevel = 8;
  const int cells = 1 << kCellLevel;

  std::vector<BasisIndex> indices;
  for (int j = 0; j <= kMaxJ; ++j) {
    for (std::int64_t k = 0; k < (std::int64_t{1} << j); ++k) {
      indices.push_back(BasisIndex::haar(j, k));
    }
  }
  std::vector<std::vector<double>> values(indices.size(), std::vector<double>(cells));
  for (std::size_t a = 0; a < indices.size(); ++a) {
    for (int c = 0; c < cells; ++c) {
      const double mid = (c + 0.5) / cells;
      values[a][c] = eval_haar(indices[a].level(), indices[a].shift(), mid);
    }
  }
  double worst = 0.0;
  for (std::size_t a = 0; a < indices.size(); ++a) {
    for (std::size_t b = a; b < indices.size(); ++b) {
      double dot = 0.0;
      for (int c = 0; c < cells; ++c) dot += values[a][c] * values[b][c];
      dot /= cells;
      const double expected = a == b ? 1.0 : 0.0;
      worst = std::max(worst, std::abs(dot - expected));
    }
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("eval_H pointwise and branch agreement") {
  CHECK(eval_H(0.0) == 0.0);
  CHECK(eval_H(-3.0) == 0.0);
  CHECK(eval_H(1.0) == 1.0);
  CHECK(eval_H(2.0) == doctest::Approx(std::pow(2.0, 1.5) - 2.0).epsilon(1e-15));

  // Global maximum at t = 4/3 with value 2/sqrt(3).
  CHECK(eval_H(4.0 / 3.0) == doctest::Approx(2.0 / std::sqrt(3.0)).epsilon(1e-14));

  // Spot values against the long-double oracle.
  for (double t : {0.37, 1.2, 2.9, 3.999, 4.001, 7.5, 55.0, 100.0, 4321.0}) {
    CHECK(eval_H(t) ==
          doctest::Approx(static_cast<double>(h_oracle(static_cast<long double>(t))))
              .epsilon(1e-12));
  }
  // t = 100 matches the leading asymptotic at t - 1 to 0.1%.
  CHECK(std::abs(eval_H(100.0) / (0.75 / std::sqrt(99.0)) - 1.0) < 1e-3);

  // The two branches agree in an overlap window around the threshold.
  for (double t = 4.0; t <= 1.0e4; t *= 1.17) {
    const double direct = detail::eval_H_three_term(t);
    const double tail = detail::eval_H_integral_tail(t);
    CHECK(std::abs(direct - tail) <= 1e-9);
    CHECK(std::abs(direct / tail - 1.0) <= 1e-7);
  }
}

TEST_CASE("eval_H sign, monotone tail, asymptotics") {
  double prev = eval_H(2.01);
  CHECK(prev > 0.0);
  for (double t = 2.01 * 1.03; t <= 1.0e6; t *= 1.03) {
    const double h = eval_H(t);
    CHECK(h > 0.0);
    CHECK(h < prev);  // strictly decreasing past t = 2
    prev = h;
  }
  for (double t = 0.01; t <= 2.0; t *= 1.25) CHECK(eval_H(t) >= 0.0);

  // |H(t) (4/3) sqrt(t) - 1| <= 0.01 for t >= 200.
  for (double t = 200.0; t <= 1.0e8; t *= 1.5) {
    CHECK(std::abs(eval_H(t) * (4.0 / 3.0) * std::sqrt(t) - 1.0) <= 0.01);
  }
  CHECK(std::abs(eval_H(1.0e4) / eval_H_asymptotic(1.0e4) - 1.0) <= 1e-3);

  CHECK(eval_H_asymptotic(4.0) == 0.375);
  CHECK(eval_H_asymptotic(100.0) == 0.075);
  CHECK_THROWS_AS(eval_H_asymptotic(1.999), std::invalid_argument);
}

TEST_CASE("integrated_haar values and support") {
  const RLParams critical = RLParams::make(1.5);

  // (alpha=3/2, j=0, k=0, t=1) = (1 - 2 (1/2)^{3/2}) / Gamma(5/2).
  const double expected00 =
      static_cast<double>((1.0L - 2.0L * std::powl(0.5L, 1.5L)) / gamma52_oracle());
  CHECK(integrated_haar(critical, 0, 0, 1.0) == doctest::Approx(expected00).epsilon(1e-13));
  CHECK(expected00 == doctest::Approx(0.2203296).epsilon(1e-6));

  // Support starts at the left edge: zero at and below t = 2k/2^{j+1}.
  for (int j : {0, 2, 5, 8}) {
    for (std::int64_t k : {std::int64_t{0}, (std::int64_t{1} << j) / 2,
                           (std::int64_t{1} << j) - 1}) {
      const double edge = std::ldexp(static_cast<double>(k), -j);
      CHECK(integrated_haar(critical, j, k, edge) == 0.0);
      if (edge > 0.0) CHECK(integrated_haar(critical, j, k, 0.5 * edge) == 0.0);
      CHECK(integrated_haar(critical, j, k, std::nextafter(edge, 1.0) + 1e-4 * (1 - edge)) >=
            0.0);
    }
  }

  // Scale identity spot check (j=3, k=5, t=0.9) against the H route.
  const double lhs = integrated_haar(critical, 3, 5, 0.9);
  const double rhs = eval_H(std::ldexp(0.9, 4) - 10.0) /
                     (std::exp2(1.5 + 3.0) * critical.gamma_alpha_plus_1);
  CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));

  CHECK_THROWS_AS(integrated_haar(critical, 2, 4, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(integrated_haar(critical, 2, 1, -0.1), std::invalid_argument);
}

TEST_CASE("scale identity across levels at alpha = 3/2") {
  const RLParams critical = RLParams::make(1.5);
  const double norm_gamma = critical.gamma_alpha_plus_1;
  double worst = 0.0;
  for (int j = 0; j <= 6; ++j) {
    const double scale = std::exp2(1.5 + j) * norm_gamma;
    for (std::int64_t k = 0; k < (std::int64_t{1} << j); ++k) {
      for (int i = 1; i <= 200; ++i) {
        const double t = i / 200.0;
        const double direct = integrated_haar(critical, j, k, t);
        const double via_h = eval_H(std::ldexp(t, j + 1) - 2.0 * static_cast<double>(k)) / scale;
        if (via_h != 0.0) worst = std::max(worst, std::abs(direct / via_h - 1.0));
        else CHECK(direct == 0.0);
      }
    }
  }
  CHECK(worst <= 1e-10);
}

TEST_CASE("integrated_haar for general alpha") {
  const RLParams brownian = RLParams::make(1.0);
  // alpha = 1 gives the Schauder hat: compact support, exact zeros past it.
  CHECK(base_kernel(brownian, 2.0) == 0.0);
  CHECK(base_kernel(brownian, 2.5) == 0.0);
  CHECK(base_kernel(brownian, 17.25) == 0.0);
  CHECK(base_kernel(brownian, 4096.0 + 0.375) == 0.0);
  CHECK(base_kernel(brownian, 1.0) == 1.0);
  // Hat peak of R_1 h_{j,k} is 2^{j/2} / 2^{j+1} at the middle breakpoint.
  for (int j : {0, 1, 3}) {
    const double mid = std::ldexp(1.0, -(j + 1));
    CHECK(integrated_haar(brownian, j, 0, mid) ==
          doctest::Approx(std::exp2(0.5 * j) * std::ldexp(1.0, -(j + 1))).epsilon(1e-14));
  }

  // Continuity: increments over a fine grid bounded by the Hoelder modulus.
  for (double alpha : {0.6, 1.0, 1.5}) {
    const RLParams p = RLParams::make(alpha);
    const int j = 3;
    const std::int64_t k = 2;
    const double h = std::ldexp(1.0, -12);
    const double amp = std::exp2(0.5 * j) / p.gamma_alpha_plus_1;
    const double bound = 4.0 * amp * std::max(1.0, alpha) * std::pow(h, std::min(alpha, 1.0));
    double prev = integrated_haar(p, j, k, 0.0);
    double max_jump = 0.0;
    for (double t = h; t <= 1.0; t += h) {
      const double cur = integrated_haar(p, j, k, t);
      max_jump = std::max(max_jump, std::abs(cur - prev));
      prev = cur;
    }
    CHECK(max_jump < bound);
  }
}

TEST_CASE("drift term") {
  const RLParams critical = RLParams::make(1.5);
  CHECK(drift_term(critical, 0.0) == 0.0);
  CHECK(drift_term(critical, 1.0) ==
        doctest::Approx(static_cast<double>(1.0L / gamma52_oracle())).epsilon(1e-14));
  CHECK(drift_term(critical, 1.0) == doctest::Approx(0.7522528).epsilon(1e-6));
  const RLParams brownian = RLParams::make(1.0);
  CHECK(drift_term(brownian, 0.5) == 0.5);
  CHECK(eval_term(critical, BasisIndex::drift(), 1.0) == drift_term(critical, 1.0));
  CHECK(eval_term(critical, BasisIndex::haar(0, 0), 1.0) ==
        integrated_haar(critical, 0, 0, 1.0));
}
