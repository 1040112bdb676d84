#pragma once

#include <variant>
#include <vector>

#include "regiospec/types.hpp"

namespace regiospec {

struct Interval {
  double a = 0.0;
  double b = 1.0;
};

struct Rectangle {
  double a1 = 0.0, b1 = 1.0;
  double a2 = 0.0, b2 = 1.0;
};

/// Bounded open Lipschitz set: an interval (N = 1) or an axis-aligned
/// rectangle (N = 2).
class Domain {
 public:
  using Shape = std::variant<Interval, Rectangle>;

  static Domain interval(double a, double b);
  static Domain rectangle(double a1, double b1, double a2, double b2);

  int dim() const { return std::holds_alternative<Interval>(shape_) ? 1 : 2; }
  const Shape& shape() const { return shape_; }

  Point lower() const;
  Point upper() const;
  Point center() const { return (lower() + upper()) / 2.0; }
  /// Side lengths of the bounding box (which is the domain itself).
  Point extent() const { return upper() - lower(); }

  bool contains(const Point& x) const;         // open set
  bool contains_closed(const Point& x) const;  // closure
  double boundary_distance(const Point& x) const;

  /// Distance from x in the closure to the boundary along the unit direction dir
  /// (zero when the ray leaves immediately).
  double ray_length(const Point& x, const Point& dir) const;

  /// Polar angles in [0, 2pi) of the rectangle corners seen from x (N = 2 only).
  std::vector<double> corner_angles(const Point& x) const;

  bool operator==(const Domain&) const;

 private:
  explicit Domain(Shape s) : shape_(s) {}
  Shape shape_;
};

/// Cone parameters of the uniform cone estimate
/// gamma_{s,delta}(x) >= C0 log(delta0 / delta).
struct ConeParams {
  double C0 = 1.0;
  double delta0 = 0.5;
};

double measure(const Domain& d);
double diameter(const Domain& d);
ConeParams cone_params(const Domain& d);

/// Integral of |x - y|^{-N-2s} over the complement of the domain, for x inside.
double complement_tail(const Domain& d, const Point& x, double s);

/// gamma_{s,delta}(x): integral of |x - y|^{-N-2s} over the domain minus B_delta(x),
/// for x in the closure. Radial integration is exact; the angular part is adaptive.
double truncated_self_integral(const Domain& d, const Point& x, double s, double delta);

}  // namespace regiospec
