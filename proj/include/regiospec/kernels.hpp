#pragma once

#include <cmath>
#include <numbers>

#include "regiospec/error.hpp"
#include "regiospec/special.hpp"
#include "regiospec/types.hpp"

namespace regiospec {

/// Normalization constant c_{N,s} = s 4^s Gamma((N+2s)/2) / (pi^{N/2} Gamma(1-s)).
template <typename Scalar = double>
Scalar c_frac(int N, Scalar s) {
  if (!(s > Scalar(0) && s < Scalar(1))) throw Error(ErrorCode::InvalidOrder, "c_frac needs s in (0, 1)");
  const Scalar pi = Scalar(std::numbers::pi);
  return s * std::pow(Scalar(4), s) * lanczos_gamma((Scalar(N) + Scalar(2) * s) / Scalar(2)) /
         (std::pow(pi, Scalar(N) / Scalar(2)) * lanczos_gamma(Scalar(1) - s));
}

/// Equivalent form s(1-s) 4^s Gamma((N+2s)/2) / (pi^{N/2} Gamma(2-s)).
template <typename Scalar = double>
Scalar c_frac_alt(int N, Scalar s) {
  if (!(s > Scalar(0) && s < Scalar(1))) throw Error(ErrorCode::InvalidOrder, "c_frac needs s in (0, 1)");
  const Scalar pi = Scalar(std::numbers::pi);
  return s * (Scalar(1) - s) * std::pow(Scalar(4), s) * lanczos_gamma((Scalar(N) + Scalar(2) * s) / Scalar(2)) /
         (std::pow(pi, Scalar(N) / Scalar(2)) * lanczos_gamma(Scalar(2) - s));
}

/// c_N = pi^{-N/2} Gamma(N/2), the derivative of c_{N,s} at s = 0.
template <typename Scalar = double>
Scalar c_log(int N) {
  if (N < 1) throw Error(ErrorCode::InvalidArgument, "c_log needs N >= 1");
  const Scalar pi = Scalar(std::numbers::pi);
  return lanczos_gamma(Scalar(N) / Scalar(2)) / std::pow(pi, Scalar(N) / Scalar(2));
}

/// Hoelder data for the coefficient bounds of the small-order expansion.
struct ExpansionBoundParams {
  double alpha = 1.0;           // Hoelder exponent in (0, 1]
  double R = 1.0;               // Omega lies in B_R(x) for every x in Omega
  double holderSeminorm = 0.0;  // [u]_alpha
};

void validate(const ExpansionBoundParams& p);

/// c_k = 2^k / alpha^{k+1} + R^alpha (2 |log R|)^k / k!.
double expansion_coeff(const ExpansionBoundParams& p, int k);

/// d_j(s) = sum_{k >= j} c_k s^k, for 0 <= s < alpha/2.
double tail_bound(const ExpansionBoundParams& p, double s, int j);

/// |z|^{-N-2s}.
template <typename Derived>
double riesz_kernel(const Eigen::MatrixBase<Derived>& z, int N, double s) {
  const double r = z.norm();
  if (r == 0.0) throw Error(ErrorCode::SingularPoint, "kernel evaluated at z = 0");
  return std::pow(r, -double(N) - 2.0 * s);
}

/// (-1)^k 2^k log^k|z| |z|^{-N}.
template <typename Derived>
double log_kernel(const Eigen::MatrixBase<Derived>& z, int N, int k) {
  const double r = z.norm();
  if (r == 0.0) throw Error(ErrorCode::SingularPoint, "kernel evaluated at z = 0");
  return std::pow(-2.0 * std::log(r), k) * std::pow(r, -double(N));
}

}  // namespace regiospec
