#include "regiospec/kernels.hpp"

#include <cmath>
#include <limits>

namespace regiospec {

void validate(const ExpansionBoundParams& p) {
  if (!(p.alpha > 0.0 && p.alpha <= 1.0)) throw Error(ErrorCode::InvalidArgument, "alpha must lie in (0, 1]");
  if (!(p.R > 0.0)) throw Error(ErrorCode::InvalidArgument, "R must be positive");
  if (!(p.holderSeminorm >= 0.0)) throw Error(ErrorCode::InvalidArgument, "seminorm must be nonnegative");
}

double expansion_coeff(const ExpansionBoundParams& p, int k) {
  validate(p);
  if (k < 0) throw Error(ErrorCode::InvalidArgument, "k must be nonnegative");
  const double geo = std::pow(2.0 / p.alpha, k) / p.alpha;
  const double t = 2.0 * std::abs(std::log(p.R));
  return geo + std::pow(p.R, p.alpha) * std::pow(t, k) / std::tgamma(k + 1.0);
}

double tail_bound(const ExpansionBoundParams& p, double s, int j) {
  validate(p);
  if (j < 1) throw Error(ErrorCode::InvalidArgument, "j must be positive");
  if (!(s >= 0.0)) throw Error(ErrorCode::InvalidOrder, "s must be nonnegative");
  if (!(s < p.alpha / 2.0)) throw Error(ErrorCode::OutsideConvergence, "series needs s < alpha/2");
  if (s == 0.0) return 0.0;
  const double q = 2.0 * s / p.alpha;
  const double geo = std::pow(q, j) / (p.alpha * (1.0 - q));
  // Exponential tail summed directly: e^t minus its partial sum loses everything
  // to cancellation when t is small.
  const double t = 2.0 * s * std::abs(std::log(p.R));
  double expo = 0.0;
  if (t > 0.0) {
    double term = std::exp(j * std::log(t) - std::lgamma(j + 1.0));
    for (int k = j; term > 0.0 && k < j + 10000; ++k) {
      expo += term;
      if (term <= std::numeric_limits<double>::epsilon() * expo && k > t) break;
      term *= t / (k + 1.0);
    }
  }
  return geo + std::pow(p.R, p.alpha) * expo;
}

}  // namespace regiospec
