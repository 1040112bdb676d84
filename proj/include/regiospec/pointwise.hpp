#pragma once

#include <functional>
#include <string>
#include <vector>

#include "regiospec/geometry.hpp"
#include "regiospec/types.hpp"

namespace regiospec {

/// A function on the closure of the domain with caller-supplied Hoelder data:
/// |u(x) - u(y)| <= holderSeminorm |x - y|^alpha.
struct ScalarField {
  std::function<double(const Point&)> evaluate;
  double alpha = 1.0;
  double holderSeminorm = 0.0;
  std::string name;

  double operator()(const Point& x) const { return evaluate(x); }
};

/// Controls the principal-value limit. Exclusion radii are epsilonLadder[m] times
/// the distance from x to the boundary and must shrink geometrically; each dyadic
/// radial shell near x is split into gradedLevels Gauss panels.
struct QuadratureSpec {
  std::vector<double> epsilonLadder = default_ladder();
  int gradedLevels = 4;
  double absTol = 1e-10;
  double relTol = 1e-9;

  static std::vector<double> default_ladder();
};

void validate(const QuadratureSpec& q);

struct EvalResult {
  double value = 0.0;
  double errEstimate = 0.0;
};

/// D^s u(x) = P.V. integral over the domain of (u(x) - u(y)) |x - y|^{-N-2s} dy.
EvalResult eval_Ds(const ScalarField& u, const Domain& d, const Point& x, double s,
                   const QuadratureSpec& q = {});

/// D_k u(x) = integral of (u(x) - u(y)) (-2 log|x - y|)^k |x - y|^{-N} dy; D_0 = D^0.
EvalResult eval_Dk(const ScalarField& u, const Domain& d, const Point& x, int k, const QuadratureSpec& q = {});

/// Regional logarithmic Laplacian c_N D^0 u(x).
EvalResult eval_Llog(const ScalarField& u, const Domain& d, const Point& x, const QuadratureSpec& q = {});

/// kappa(x) = c_{N,s} times the complement integral of |x - y|^{-N-2s}.
double eval_kappa(const Domain& d, const Point& x, double s);

/// Regional fractional Laplacian c_{N,s} D^s u(x).
EvalResult eval_regional_fraclap(const ScalarField& u, const Domain& d, const Point& x, double s,
                                 const QuadratureSpec& q = {});

/// D^0 u(x) + sum_{k=1}^{j-1} s^k / k! D_k u(x), the truncated expansion in s.
EvalResult series_partial(const ScalarField& u, const Domain& d, const Point& x, double s, int j,
                          const QuadratureSpec& q = {});

}  // namespace regiospec
