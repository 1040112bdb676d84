#include "regiospec/pointwise.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "regiospec/error.hpp"
#include "regiospec/kernels.hpp"
#include "regiospec/quadrature.hpp"

namespace regiospec {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr int kShellOrder = 20;

// Radial weight r^{-1-2s} (-2 log r)^k; the polar Jacobian r^{N-1} is folded in.
struct RadialWeight {
  double s;
  int k;
  double operator()(double r) const {
    const double base = std::pow(r, -1.0 - 2.0 * s);
    return k == 0 ? base : base * std::pow(-2.0 * std::log(r), k);
  }
};

struct LineValues {
  Vector ladder;      // integral over the line with |r| > eps_m, one entry per m
  double quadError;   // adaptive error of the eps-independent part
  double noise;       // roundoff scale of the symmetric differences
};

// Integral of (u(x) - u(x + r e)) w(|r|) over r in (-rhoMinus, rhoPlus), |r| > eps_m.
LineValues line_integral(const ScalarField& u, const Point& x, const Point& e, double rhoPlus, double rhoMinus,
                         const std::vector<double>& eps, const RadialWeight& w, const QuadratureSpec& q,
                         double tol) {
  const double u0 = u(x);
  const double rho0 = std::min(rhoPlus, rhoMinus);
  const double rho1 = std::max(rhoPlus, rhoMinus);
  const double side = rhoPlus >= rhoMinus ? 1.0 : -1.0;
  auto sym = [&](double r) { return (2.0 * u0 - u(x + r * e) - u(x - r * e)) * w(r); };
  auto one = [&](double r) { return (u0 - u(x + (side * r) * e)) * w(r); };

  std::vector<double> br;
  for (double r = eps.front(); r < rho0; r *= 2.0) br.push_back(r);
  br.push_back(rho0);
  const auto inner = adaptive_gauss_kronrod<double>(sym, br, tol, q.relTol * 1e-2, 4000);
  br.clear();
  for (double r = rho0; r < rho1; r *= 2.0) br.push_back(r);
  br.push_back(rho1);
  const auto outer = adaptive_gauss_kronrod<double>(one, br, tol, q.relTol * 1e-2, 4000);

  LineValues out;
  out.ladder.resize(static_cast<Eigen::Index>(eps.size()));
  out.ladder[0] = inner.value + outer.value;
  out.quadError = inner.error + outer.error;
  out.noise = 0.0;
  const auto& rule = gauss_legendre(kShellOrder);
  const double scale = std::abs(u0) + 1.0;
  for (std::size_t m = 1; m < eps.size(); ++m) {
    const double lo = eps[m], hi = eps[m - 1];
    const double panel = (hi - lo) / q.gradedLevels;
    double acc = 0.0;
    for (int p = 0; p < q.gradedLevels; ++p) {
      const double a = lo + p * panel;
      for (Eigen::Index i = 0; i < rule.size(); ++i) {
        const double r = a + panel * rule.nodes[i];
        const double wr = rule.weights[i] * panel * w(r);
        acc += wr * (2.0 * u0 - u(x + r * e) - u(x - r * e));
        out.noise += std::abs(wr) * 4.0 * scale * kEps;
      }
    }
    out.ladder[static_cast<Eigen::Index>(m)] = out.ladder[static_cast<Eigen::Index>(m - 1)] + acc;
  }
  return out;
}

std::vector<double> ladder_exponents(double alpha, double s, std::size_t count) {
  std::vector<double> ex;
  for (std::size_t j = 0; j < count; ++j) {
    if (alpha >= 1.0) {
      ex.push_back(2.0 * (j + 1) - 2.0 * s);
    } else {
      ex.push_back(alpha - 2.0 * s + j * alpha);
    }
  }
  return ex;
}

void check_point(const Domain& d, const Point& x) {
  if (x.size() != d.dim()) throw Error(ErrorCode::DimensionMismatch, "point dimension differs from domain");
  if (!d.contains_closed(x)) throw Error(ErrorCode::PointOutsideDomain, "point lies outside the domain");
  if (!d.contains(x)) throw Error(ErrorCode::PointOnBoundary, "point lies on the boundary");
}

EvalResult eval_weighted(const ScalarField& u, const Domain& d, const Point& x, const RadialWeight& w,
                         const QuadratureSpec& q) {
  validate(q);
  check_point(d, x);
  if (!u.evaluate) throw Error(ErrorCode::InvalidArgument, "field has no evaluator");
  const double dist = d.boundary_distance(x);
  std::vector<double> eps;
  for (double f : q.epsilonLadder) eps.push_back(f * dist);
  const double ratio = q.epsilonLadder[1] / q.epsilonLadder[0];
  const double lineTol = q.absTol * 1e-2;

  Vector ladder;
  double quadError = 0.0, noise = 0.0;
  if (d.dim() == 1) {
    const Point e = make_point(1.0);
    const auto lv = line_integral(u, x, e, d.ray_length(x, e), d.ray_length(x, -e), eps, w, q, lineTol);
    ladder = lv.ladder;
    quadError = lv.quadError;
    noise = lv.noise;
  } else {
    // Opposite directions are paired so that the line integrand is a symmetric
    // second difference near x.
    double maxLineErr = 0.0, maxNoise = 0.0;
    auto line = [&](double theta) -> Vector {
      const Point e = make_point(std::cos(theta), std::sin(theta));
      const auto lv = line_integral(u, x, e, d.ray_length(x, e), d.ray_length(x, -e), eps, w, q, lineTol);
      maxLineErr = std::max(maxLineErr, lv.quadError);
      maxNoise = std::max(maxNoise, lv.noise);
      return lv.ladder;
    };
    std::vector<double> br = {0.0, std::numbers::pi};
    for (double a : d.corner_angles(x)) br.push_back(std::fmod(a, std::numbers::pi));
    std::sort(br.begin(), br.end());
    br.erase(std::unique(br.begin(), br.end()), br.end());
    const auto res = adaptive_gauss_kronrod<Vector>(line, br, q.absTol * 0.25, q.relTol * 0.25, 4000);
    ladder = res.value;
    quadError = res.error + std::numbers::pi * maxLineErr;
    noise = std::numbers::pi * maxNoise;
  }

  std::vector<double> vals(ladder.data(), ladder.data() + ladder.size());
  const auto ex = ladder_exponents(u.alpha, w.s, vals.size());
  const Extrapolation ext = richardson_ladder(vals, ratio, ex);
  EvalResult out;
  out.value = ext.value;
  out.errEstimate = ext.error + quadError + noise;
  const double tol = std::max(q.absTol, q.relTol * std::abs(out.value));
  // Roundoff in the symmetric differences bounds what any ladder can certify.
  if (ext.error > std::max(tol, 16.0 * noise)) {
    throw Error(ErrorCode::NoConvergence, "principal-value ladder did not settle");
  }
  return out;
}

}  // namespace

std::vector<double> QuadratureSpec::default_ladder() {
  std::vector<double> v;
  for (int m = 24; m <= 30; ++m) v.push_back(std::ldexp(1.0, -m));
  return v;
}

void validate(const QuadratureSpec& q) {
  const auto& l = q.epsilonLadder;
  if (l.size() < 2) throw Error(ErrorCode::InvalidArgument, "epsilon ladder needs at least two radii");
  if (!(l[0] > 0.0 && l[0] < 1.0)) throw Error(ErrorCode::InvalidArgument, "epsilon ladder must start in (0, 1)");
  const double ratio = l[1] / l[0];
  for (std::size_t m = 1; m < l.size(); ++m) {
    if (!(l[m] < l[m - 1] && l[m] > 0.0)) throw Error(ErrorCode::InvalidArgument, "epsilon ladder must decrease");
    if (std::abs(l[m] / l[m - 1] - ratio) > 1e-12 * ratio) {
      throw Error(ErrorCode::InvalidArgument, "epsilon ladder must be geometric");
    }
  }
  if (q.gradedLevels < 1) throw Error(ErrorCode::InvalidArgument, "gradedLevels must be positive");
  if (!(q.absTol > 0.0 && q.relTol > 0.0)) throw Error(ErrorCode::InvalidArgument, "tolerances must be positive");
}

EvalResult eval_Ds(const ScalarField& u, const Domain& d, const Point& x, double s, const QuadratureSpec& q) {
  if (!(s >= 0.0 && s < 1.0)) throw Error(ErrorCode::InvalidOrder, "D^s needs s in [0, 1)");
  return eval_weighted(u, d, x, RadialWeight{s, 0}, q);
}

EvalResult eval_Dk(const ScalarField& u, const Domain& d, const Point& x, int k, const QuadratureSpec& q) {
  if (k < 0) throw Error(ErrorCode::InvalidArgument, "D_k needs k >= 0");
  return eval_weighted(u, d, x, RadialWeight{0.0, k}, q);
}

EvalResult eval_Llog(const ScalarField& u, const Domain& d, const Point& x, const QuadratureSpec& q) {
  EvalResult r = eval_Ds(u, d, x, 0.0, q);
  const double c = c_log(d.dim());
  return {c * r.value, c * r.errEstimate};
}

double eval_kappa(const Domain& d, const Point& x, double s) {
  if (s == 0.0) throw Error(ErrorCode::DivergentIntegral, "kappa diverges at s = 0");
  if (!(s > 0.0 && s < 1.0)) throw Error(ErrorCode::InvalidOrder, "kappa needs s in (0, 1)");
  return c_frac(d.dim(), s) * complement_tail(d, x, s);
}

EvalResult eval_regional_fraclap(const ScalarField& u, const Domain& d, const Point& x, double s,
                                 const QuadratureSpec& q) {
  EvalResult r = eval_Ds(u, d, x, s, q);
  // c_{N,0} = 0: the family degenerates to the zero operator at s = 0.
  const double c = s == 0.0 ? 0.0 : c_frac(d.dim(), s);
  return {c * r.value, c * r.errEstimate};
}

EvalResult series_partial(const ScalarField& u, const Domain& d, const Point& x, double s, int j,
                          const QuadratureSpec& q) {
  if (j < 1) throw Error(ErrorCode::InvalidArgument, "series needs j >= 1");
  if (!(s >= 0.0)) throw Error(ErrorCode::InvalidOrder, "series needs s >= 0");
  if (!(s < u.alpha / 2.0)) throw Error(ErrorCode::OutsideConvergence, "series needs s < alpha/2");
  EvalResult out = eval_Ds(u, d, x, 0.0, q);
  if (s == 0.0) return out;
  double coef = 1.0;
  for (int k = 1; k < j; ++k) {
    coef *= s / k;
    const EvalResult dk = eval_Dk(u, d, x, k, q);
    out.value += coef * dk.value;
    out.errEstimate += coef * dk.errEstimate;
  }
  return out;
}

}  // namespace regiospec
