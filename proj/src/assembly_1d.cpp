#include <algorithm>
#include <cmath>
#include <limits>

#include "regiospec/galerkin.hpp"
#include "regiospec/parallel.hpp"
#include "regiospec/quadrature.hpp"

namespace regiospec::detail {

namespace {

constexpr int kTauOrder = 20;

// Differences u(x) - u(y) over the union of the two cells' dofs are linear in
// xi for fixed tau = eta - xi, so their products are integrated exactly in xi
// by two Gauss points; the smooth kernel in tau gets a high-order rule.
template <int Dofs, class DiffFn>
void add_tau_panel(Eigen::Matrix<double, Dofs, Dofs>& out, double t0, double t1, double c, double s,
                   DiffFn&& diff) {
  if (!(t1 > t0)) return;
  const auto& rt = gauss_legendre(kTauOrder);
  const auto& rx = gauss_legendre(2);
  for (Eigen::Index it = 0; it < rt.size(); ++it) {
    const double tau = t0 + (t1 - t0) * rt.nodes[it];
    const double kern = std::pow(c + tau, -1.0 - 2.0 * s);
    const double x0 = std::max(0.0, -tau), x1 = std::min(1.0, 1.0 - tau);
    const double scale = rt.weights[it] * (t1 - t0) * (x1 - x0) * kern;
    for (Eigen::Index ix = 0; ix < rx.size(); ++ix) {
      const double xi = x0 + (x1 - x0) * rx.nodes[ix];
      const Eigen::Matrix<double, Dofs, 1> d = diff(xi, tau);
      out.noalias() += (scale * rx.weights[ix]) * d * d.transpose();
    }
  }
}

// Same cell, halved because the pair is visited once.
Eigen::Matrix2d local_self(double s, double T) {
  const double v = std::pow(T, 2.0 - 2.0 * s) / (2.0 - 2.0 * s) - std::pow(T, 3.0 - 2.0 * s) / (3.0 - 2.0 * s);
  Eigen::Matrix2d g;
  g << 1.0, -1.0, -1.0, 1.0;
  return v * g;
}

// Neighbouring cells sharing the middle dof.
Eigen::Matrix3d local_touching(double s, double reach) {
  Eigen::Matrix3d out;
  // Corner part |x - y| = h u, u in [0, 1]: the difference is u times a linear
  // profile along the anti-diagonal, giving a closed form.
  const double T1 = std::min(1.0, reach);
  out << 1.0 / 3.0, -1.0 / 6.0, -1.0 / 6.0, -1.0 / 6.0, 1.0 / 3.0, -1.0 / 6.0, -1.0 / 6.0, -1.0 / 6.0, 1.0 / 3.0;
  out *= std::pow(T1, 3.0 - 2.0 * s) / (3.0 - 2.0 * s);
  add_tau_panel<3>(out, 0.0, std::min(1.0, reach - 1.0), 1.0, s, [](double xi, double tau) {
    return Eigen::Vector3d(1.0 - xi, 2.0 * xi + tau - 1.0, -(xi + tau));
  });
  return out;
}

Eigen::Matrix4d local_separated(int c, double s, double reach) {
  Eigen::Matrix4d out = Eigen::Matrix4d::Zero();
  auto diff = [](double xi, double tau) {
    const double eta = xi + tau;
    return Eigen::Vector4d(1.0 - xi, xi, -(1.0 - eta), -eta);
  };
  const double cut = reach - c;
  add_tau_panel<4>(out, -1.0, std::min(0.0, cut), c, s, diff);
  add_tau_panel<4>(out, 0.0, std::min(1.0, cut), c, s, diff);
  return out;
}

}  // namespace

Matrix assemble_stiffness_1d(const Mesh& m, double s, double delta) {
  const int n = m.n;
  const double h = m.cellSize[0];
  // Cell offsets c interact while (c - 1) h < delta.
  const double reach = std::isfinite(delta) ? delta / h : std::numeric_limits<double>::infinity();
  const int cmax = std::isfinite(reach) ? std::min(n - 1, static_cast<int>(std::ceil(reach + 1.0))) : n - 1;
  const double scale = std::pow(h, 1.0 - 2.0 * s);

  std::vector<Eigen::Matrix4d> far(static_cast<std::size_t>(std::max(0, cmax + 1)), Eigen::Matrix4d::Zero());
  if (cmax >= 2) {
    parallel_for(static_cast<std::size_t>(cmax - 1), [&](std::size_t i) {
      const int c = static_cast<int>(i) + 2;
      far[static_cast<std::size_t>(c)] = local_separated(c, s, reach);
    });
  }
  const Eigen::Matrix2d k0 = local_self(s, std::min(1.0, reach));
  const Eigen::Matrix3d k1 = cmax >= 1 ? local_touching(s, reach) : Eigen::Matrix3d::Zero();

  Matrix A = Matrix::Zero(n + 1, n + 1);
  for (int p = 0; p < n; ++p) A.block<2, 2>(p, p) += k0;
  if (cmax >= 1) {
    for (int p = 0; p + 1 < n; ++p) A.block<3, 3>(p, p) += k1;
  }
  for (int c = 2; c <= cmax; ++c) {
    const Eigen::Matrix4d& k = far[static_cast<std::size_t>(c)];
    for (int p = 0; p + c < n; ++p) {
      const int q = p + c;
      A.block<2, 2>(p, p) += k.block<2, 2>(0, 0);
      A.block<2, 2>(q, q) += k.block<2, 2>(2, 2);
      A.block<2, 2>(p, q) += k.block<2, 2>(0, 2);
      A.block<2, 2>(q, p) += k.block<2, 2>(2, 0);
    }
  }
  return scale * A;
}

}  // namespace regiospec::detail
