#include "regiospec/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "regiospec/error.hpp"
#include "regiospec/quadrature.hpp"

namespace regiospec {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

bool finite(double v) { return std::isfinite(v); }

// Integral over r in [lo, hi] of r^{-1-2s}.
double radial_power_integral(double lo, double hi, double s) {
  if (!(hi > lo)) return 0.0;
  if (s == 0.0) return std::log(hi / lo);
  // (lo^{-2s} - hi^{-2s}) / (2s), written to stay accurate for small s.
  const double t = -2.0 * s;
  return std::pow(lo, t) * -std::expm1(t * std::log(hi / lo)) / (2.0 * s);
}

std::vector<double> angular_breaks(const Domain& d, const Point& x) {
  std::vector<double> br = d.corner_angles(x);
  br.push_back(0.0);
  br.push_back(kTwoPi);
  std::sort(br.begin(), br.end());
  br.erase(std::unique(br.begin(), br.end()), br.end());
  return br;
}

}  // namespace

Domain Domain::interval(double a, double b) {
  if (!(finite(a) && finite(b) && a < b)) throw Error(ErrorCode::InvalidArgument, "interval needs a < b");
  return Domain(Interval{a, b});
}

Domain Domain::rectangle(double a1, double b1, double a2, double b2) {
  if (!(finite(a1) && finite(b1) && finite(a2) && finite(b2) && a1 < b1 && a2 < b2)) {
    throw Error(ErrorCode::InvalidArgument, "rectangle needs a1 < b1 and a2 < b2");
  }
  return Domain(Rectangle{a1, b1, a2, b2});
}

Point Domain::lower() const {
  if (const auto* i = std::get_if<Interval>(&shape_)) return make_point(i->a);
  const auto& r = std::get<Rectangle>(shape_);
  return make_point(r.a1, r.a2);
}

Point Domain::upper() const {
  if (const auto* i = std::get_if<Interval>(&shape_)) return make_point(i->b);
  const auto& r = std::get<Rectangle>(shape_);
  return make_point(r.b1, r.b2);
}

bool Domain::contains(const Point& x) const {
  if (x.size() != dim()) return false;
  return ((x.array() > lower().array()) && (x.array() < upper().array())).all();
}

bool Domain::contains_closed(const Point& x) const {
  if (x.size() != dim()) return false;
  return ((x.array() >= lower().array()) && (x.array() <= upper().array())).all();
}

double Domain::boundary_distance(const Point& x) const {
  const Point lo = x - lower();
  const Point hi = upper() - x;
  return std::max(0.0, std::min(lo.minCoeff(), hi.minCoeff()));
}

double Domain::ray_length(const Point& x, const Point& dir) const {
  double t = std::numeric_limits<double>::infinity();
  const Point lo = lower(), hi = upper();
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (dir[i] > 0.0) t = std::min(t, (hi[i] - x[i]) / dir[i]);
    if (dir[i] < 0.0) t = std::min(t, (lo[i] - x[i]) / dir[i]);
  }
  return std::max(0.0, t);
}

std::vector<double> Domain::corner_angles(const Point& x) const {
  std::vector<double> out;
  if (dim() != 2) return out;
  const auto& r = std::get<Rectangle>(shape_);
  const double cx[2] = {r.a1, r.b1}, cy[2] = {r.a2, r.b2};
  for (double px : cx) {
    for (double py : cy) {
      const double dx = px - x[0], dy = py - x[1];
      if (dx == 0.0 && dy == 0.0) continue;
      double a = std::atan2(dy, dx);
      if (a < 0.0) a += kTwoPi;
      out.push_back(a);
    }
  }
  return out;
}

bool Domain::operator==(const Domain& o) const {
  if (dim() != o.dim()) return false;
  return lower() == o.lower() && upper() == o.upper();
}

double measure(const Domain& d) { return d.extent().prod(); }

double diameter(const Domain& d) { return d.extent().norm(); }

ConeParams cone_params(const Domain& d) {
  // From any point of the closure, the half-box towards the farther faces
  // contains a cone (segment in 1D, quarter disc in 2D) of length min(side)/2.
  // delta0 must lie in (0, 1).
  const double reach = d.extent().minCoeff() / 2.0;
  const double cap = std::nextafter(1.0, 0.0);
  ConeParams cp;
  cp.C0 = d.dim() == 1 ? 1.0 : std::numbers::pi / 2.0;
  cp.delta0 = std::min(reach, cap);
  return cp;
}

double complement_tail(const Domain& d, const Point& x, double s) {
  if (!(s >= 0.0 && s < 1.0)) throw Error(ErrorCode::InvalidOrder, "complement integral needs s in [0, 1)");
  if (!d.contains(x)) throw Error(ErrorCode::PointOutsideDomain, "complement integral needs x inside the domain");
  if (s == 0.0) throw Error(ErrorCode::DivergentIntegral, "complement integral diverges at s = 0");
  if (d.dim() == 1) {
    const auto& iv = std::get<Interval>(d.shape());
    return (std::pow(x[0] - iv.a, -2.0 * s) + std::pow(iv.b - x[0], -2.0 * s)) / (2.0 * s);
  }
  // Star-shaped about x: the radial integral from the exit distance to
  // infinity is rho(theta)^{-2s} / (2s).
  auto integrand = [&](double theta) {
    const Point dir = make_point(std::cos(theta), std::sin(theta));
    return std::pow(d.ray_length(x, dir), -2.0 * s) / (2.0 * s);
  };
  const auto br = angular_breaks(d, x);
  const auto res = adaptive_gauss_kronrod<double>(integrand, br, 1e-14, 1e-13);
  return res.value;
}

double truncated_self_integral(const Domain& d, const Point& x, double s, double delta) {
  if (!(s >= 0.0 && s < 1.0)) throw Error(ErrorCode::InvalidOrder, "gamma_{s,delta} needs s in [0, 1)");
  if (!(delta > 0.0)) throw Error(ErrorCode::InvalidArgument, "gamma_{s,delta} needs delta > 0");
  if (!d.contains_closed(x)) throw Error(ErrorCode::PointOutsideDomain, "gamma_{s,delta} needs x in the closure");
  if (d.dim() == 1) {
    const auto& iv = std::get<Interval>(d.shape());
    return radial_power_integral(delta, x[0] - iv.a, s) + radial_power_integral(delta, iv.b - x[0], s);
  }
  auto integrand = [&](double theta) {
    const Point dir = make_point(std::cos(theta), std::sin(theta));
    return radial_power_integral(delta, d.ray_length(x, dir), s);
  };
  auto br = angular_breaks(d, x);
  const auto res = adaptive_gauss_kronrod<double>(integrand, br, 1e-13, 1e-12, 20000);
  return res.value;
}

}  // namespace regiospec
