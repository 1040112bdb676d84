#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <queue>
#include <span>
#include <vector>

#include "regiospec/types.hpp"

namespace regiospec {

/// Nodes and weights of a rule on the reference interval [0, 1].
template <typename Scalar = double>
struct QuadratureRule {
  VectorX<Scalar> nodes;
  VectorX<Scalar> weights;

  Eigen::Index size() const { return nodes.size(); }
};

/// Gauss-Legendre rule with n points on [0, 1] (Newton iteration on the
/// three-term recurrence).
template <typename Scalar>
QuadratureRule<Scalar> make_gauss_legendre(int n) {
  QuadratureRule<Scalar> rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const Scalar pi = Scalar(3.141592653589793238462643383279502884L);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    Scalar z = std::cos(pi * (Scalar(i) + Scalar(0.75)) / (Scalar(n) + Scalar(0.5)));
    Scalar dp(0);
    for (int iter = 0; iter < 100; ++iter) {
      Scalar p1(1), p2(0);
      for (int j = 1; j <= n; ++j) {
        const Scalar p3 = p2;
        p2 = p1;
        p1 = ((Scalar(2 * j - 1)) * z * p2 - Scalar(j - 1) * p3) / Scalar(j);
      }
      dp = Scalar(n) * (z * p1 - p2) / (z * z - Scalar(1));
      const Scalar z1 = z;
      z = z1 - p1 / dp;
      if (std::abs(z - z1) <= Scalar(4) * std::numeric_limits<Scalar>::epsilon()) break;
    }
    // Re-evaluate the derivative at the converged node for the weight.
    {
      Scalar p1(1), p2(0);
      for (int j = 1; j <= n; ++j) {
        const Scalar p3 = p2;
        p2 = p1;
        p1 = ((Scalar(2 * j - 1)) * z * p2 - Scalar(j - 1) * p3) / Scalar(j);
      }
      dp = Scalar(n) * (z * p1 - p2) / (z * z - Scalar(1));
    }
    const Scalar w = Scalar(2) / ((Scalar(1) - z * z) * dp * dp);
    // Map [-1, 1] -> [0, 1]; ascending order.
    rule.nodes[i] = (Scalar(1) - z) / Scalar(2);
    rule.nodes[n - 1 - i] = (Scalar(1) + z) / Scalar(2);
    rule.weights[i] = w / Scalar(2);
    rule.weights[n - 1 - i] = w / Scalar(2);
  }
  return rule;
}

/// Cached double-precision Gauss-Legendre rule on [0, 1], 1 <= n <= 128.
const QuadratureRule<double>& gauss_legendre(int n);

/// Gauss-Jacobi rule on [0, 1] for the weight v^beta, beta > -1 (Golub-Welsch).
QuadratureRule<double> gauss_jacobi01(int n, double beta);

/// Apply a reference rule to f on [a, b].
template <class F>
double integrate(F&& f, double a, double b, const QuadratureRule<double>& rule) {
  const double len = b - a;
  double sum = 0.0;
  for (Eigen::Index i = 0; i < rule.size(); ++i) sum += rule.weights[i] * f(a + len * rule.nodes[i]);
  return sum * len;
}

namespace detail {

inline double norm_inf(double v) { return std::abs(v); }

template <typename Derived>
double norm_inf(const Eigen::MatrixBase<Derived>& v) {
  return v.size() == 0 ? 0.0 : v.template lpNorm<Eigen::Infinity>();
}

struct GaussKronrod15 {
  static constexpr double xgk[8] = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                                    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                                    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                                    0.207784955007898467600689403773245, 0.0};
  static constexpr double wgk[8] = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                                    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                                    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                                    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
  static constexpr double wg[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                                   0.381830050505118944950369775488975, 0.417959183673469387755102040816327};
};

}  // namespace detail

template <typename T>
struct AdaptiveResult {
  T value;
  double error = 0.0;
  int intervals = 0;
  bool converged = false;
};

/// Globally adaptive G7/K15 quadrature over the panels [breaks[i], breaks[i+1]].
/// T is double or an Eigen vector; the error is measured in the max norm.
template <typename T, class F>
AdaptiveResult<T> adaptive_gauss_kronrod(F&& f, std::span<const double> breaks, double absTol, double relTol,
                                         int maxIntervals = 2000) {
  using GK = detail::GaussKronrod15;
  struct Panel {
    double a, b;
    T value;
    double error;
    bool operator<(const Panel& o) const { return error < o.error; }
  };
  auto rule = [&](double a, double b) {
    const double c = 0.5 * (a + b), hl = 0.5 * (b - a);
    T fc = f(c);
    T resk = fc * GK::wgk[7];
    T resg = fc * GK::wg[3];
    for (int j = 0; j < 7; ++j) {
      const double dx = hl * GK::xgk[j];
      T f1 = f(c - dx);
      T f2 = f(c + dx);
      T s = f1 + f2;
      resk = resk + s * GK::wgk[j];
      if (j % 2 == 1) resg = resg + s * GK::wg[j / 2];
    }
    T value = resk * hl;
    T diff = (resk - resg) * hl;
    return Panel{a, b, value, detail::norm_inf(diff)};
  };

  std::priority_queue<Panel> heap;
  AdaptiveResult<T> out;
  bool first = true;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    if (!(breaks[i + 1] > breaks[i])) continue;
    Panel p = rule(breaks[i], breaks[i + 1]);
    if (first) {
      out.value = p.value;
      first = false;
    } else {
      out.value = out.value + p.value;
    }
    out.error += p.error;
    heap.push(std::move(p));
  }
  if (first) {
    // Empty range: a zero of the integrand's shape.
    out.value = f(breaks.empty() ? 0.0 : breaks[0]) * 0.0;
    out.converged = true;
    return out;
  }
  int count = static_cast<int>(heap.size());
  while (true) {
    const double tol = std::max(absTol, relTol * detail::norm_inf(out.value));
    if (out.error <= tol) {
      out.converged = true;
      break;
    }
    if (count >= maxIntervals) break;
    Panel worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      heap.push(std::move(worst));
      break;
    }
    Panel left = rule(worst.a, mid);
    Panel right = rule(mid, worst.b);
    out.value = out.value - worst.value + left.value + right.value;
    out.error += left.error + right.error - worst.error;
    heap.push(std::move(left));
    heap.push(std::move(right));
    ++count;
  }
  // Re-sum for a clean total after many incremental updates.
  T total = heap.top().value;
  double err = 0.0;
  bool start = true;
  while (!heap.empty()) {
    const Panel& p = heap.top();
    if (start) {
      total = p.value;
      start = false;
    } else {
      total = total + p.value;
    }
    err += p.error;
    heap.pop();
  }
  out.value = total;
  out.error = err;
  out.intervals = count;
  return out;
}

template <typename T, class F>
AdaptiveResult<T> adaptive_gauss_kronrod(F&& f, double a, double b, double absTol, double relTol,
                                         int maxIntervals = 2000) {
  const double breaks[2] = {a, b};
  return adaptive_gauss_kronrod<T>(std::forward<F>(f), std::span<const double>(breaks, 2), absTol, relTol,
                                   maxIntervals);
}

struct Extrapolation {
  double value = 0.0;
  double error = 0.0;
};

/// Richardson extrapolation of a ladder I(eps_m), eps_m = eps_0 * ratio^m, assuming
/// I(eps) = I* + sum_j c_j eps^{exponents[j]}.
Extrapolation richardson_ladder(std::span<const double> values, double ratio, std::span<const double> exponents);

/// Neville extrapolation to h = 0 of the interpolating polynomial through (h_i, v_i).
double polynomial_limit_at_zero(std::span<const double> h, std::span<const double> v);

}  // namespace regiospec
