#pragma once

#include <cmath>
#include <numbers>

namespace regiospec {

namespace detail {

// Lanczos approximation, N = 13, g = 6.0246800407767296, as a rational function
// in z. Relative error is a few ulps in double precision.
template <typename Scalar>
Scalar lanczos_sum(Scalar z) {
  static constexpr double num[13] = {
      23531376880.41075968857200767445163675473,
      42919803642.64909876895789904700198885093,
      35711959237.35566804944018545154716670596,
      17921034426.03720969991975575445893111267,
      6039542586.35202800506429164430729792107,
      1439720407.311721673663223072794912393972,
      248874557.8620541565114603864132294232163,
      31426415.58540019438061423162831820536287,
      2876370.628935372441225409051620849613599,
      186056.2653952234950402949897160456992822,
      8071.672002365816210638002902272250613822,
      210.8242777515793458725097339207133627117,
      2.506628274631000270164908177133837338626};
  static constexpr double denom[13] = {0.0,      39916800.0, 120543840.0, 150917976.0, 105258076.0,
                                       45995730.0, 13339535.0, 2637558.0,  357423.0,    32670.0,
                                       1925.0,     66.0,       1.0};
  Scalar n(0), d(0);
  if (z <= Scalar(1)) {
    for (int i = 12; i >= 0; --i) {
      n = n * z + Scalar(num[i]);
      d = d * z + Scalar(denom[i]);
    }
  } else {
    const Scalar w = Scalar(1) / z;
    for (int i = 0; i <= 12; ++i) {
      n = n * w + Scalar(num[i]);
      d = d * w + Scalar(denom[i]);
    }
  }
  return n / d;
}

inline constexpr double kLanczosG = 6.024680040776729583740234375;

}  // namespace detail

/// Gamma function for real arguments, with reflection below 1/2.
template <typename Scalar>
Scalar lanczos_gamma(Scalar x) {
  using std::exp;
  using std::pow;
  using std::sin;
  const Scalar pi = Scalar(std::numbers::pi);
  if (x < Scalar(0.5)) {
    return pi / (sin(pi * x) * lanczos_gamma(Scalar(1) - x));
  }
  const Scalar zgh = x + Scalar(detail::kLanczosG) - Scalar(0.5);
  const Scalar sum = detail::lanczos_sum(x);
  // Split the power to delay overflow for large arguments.
  const Scalar half_pow = pow(zgh, (x - Scalar(0.5)) / Scalar(2));
  return sum * (half_pow / exp(zgh)) * half_pow;
}

/// Surface measure of the unit sphere S^{N-1} in R^N.
template <typename Scalar = double>
Scalar sphere_measure(int N) {
  const Scalar pi = Scalar(std::numbers::pi);
  return Scalar(2) * std::pow(pi, Scalar(N) / Scalar(2)) / lanczos_gamma(Scalar(N) / Scalar(2));
}

}  // namespace regiospec
