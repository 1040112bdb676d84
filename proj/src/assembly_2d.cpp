#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "regiospec/galerkin.hpp"
#include "regiospec/parallel.hpp"
#include "regiospec/quadrature.hpp"

namespace regiospec::detail {

namespace {

constexpr int kMaxDofs = 8;
constexpr int kNearOrder = 20;
constexpr int kFarOrder = 8;
constexpr int kJacobiOrder = 8;
constexpr int kAngularOrder = 24;

using DofVector = Eigen::Matrix<double, Eigen::Dynamic, 1, 0, kMaxDofs, 1>;
using LocalMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, 0, kMaxDofs, kMaxDofs>;

// Bilinear shape function of the cell corner (a, b) at local coordinates xi.
double shape(double x1, double x2, int a, int b) { return (a ? x1 : 1.0 - x1) * (b ? x2 : 1.0 - x2); }

// Interaction of cell p with cell p + c on a uniform grid. Relative node
// positions index the union of the two cells' corners.
class CellPair {
 public:
  CellPair(int cx, int cy, double hx, double hy, double s, double delta)
      : cx_(cx), cy_(cy), hx_(hx), hy_(hy), s_(s), delta_(delta) {
    for (int b = 0; b < 2; ++b) {
      for (int a = 0; a < 2; ++a) add_node(a, b);
    }
    for (int b = 0; b < 2; ++b) {
      for (int a = 0; a < 2; ++a) add_node(cx + a, cy + b);
    }
  }

  const std::vector<std::array<int, 2>>& nodes() const { return pos_; }

  LocalMatrix integrate() const {
    const int k = static_cast<int>(pos_.size());
    LocalMatrix out = LocalMatrix::Zero(k, k);
    for (int i1 = 0; i1 < 2; ++i1) {
      for (int i2 = 0; i2 < 2; ++i2) {
        // t-subrectangle [t0, t0 + 1] per axis, with z = (c + t) h.
        const double t01 = i1 == 0 ? -1.0 : 0.0, t02 = i2 == 0 ? -1.0 : 0.0;
        const bool corner1 = (-cx_ == t01 || -cx_ == t01 + 1.0);
        const bool corner2 = (-cy_ == t02 || -cy_ == t02 + 1.0);
        if (corner1 && corner2) {
          add_singular(out, t01, t02);
        } else {
          add_regular(out, t01, t02);
        }
      }
    }
    return (hx_ * hy_) * out;
  }

 private:
  void add_node(int a, int b) {
    for (const auto& p : pos_) {
      if (p[0] == a && p[1] == b) return;
    }
    pos_.push_back({a, b});
  }

  // Integral over x in the cell with x + z in the neighbour of D D^T, D_g = phi_g(x) - phi_g(x + z),
  // in reference units (cell area 1).
  LocalMatrix overlap(double t1, double t2) const {
    const int k = static_cast<int>(pos_.size());
    LocalMatrix f = LocalMatrix::Zero(k, k);
    const double lo1 = std::max(0.0, -t1), hi1 = std::min(1.0, 1.0 - t1);
    const double lo2 = std::max(0.0, -t2), hi2 = std::min(1.0, 1.0 - t2);
    if (!(hi1 > lo1 && hi2 > lo2)) return f;
    const auto& g = gauss_legendre(2);
    const double area = (hi1 - lo1) * (hi2 - lo2);
    DofVector d(k);
    for (int a = 0; a < 2; ++a) {
      for (int b = 0; b < 2; ++b) {
        const double x1 = lo1 + (hi1 - lo1) * g.nodes[a], x2 = lo2 + (hi2 - lo2) * g.nodes[b];
        const double y1 = x1 + t1, y2 = x2 + t2;
        for (int i = 0; i < k; ++i) {
          const int px = pos_[static_cast<std::size_t>(i)][0], py = pos_[static_cast<std::size_t>(i)][1];
          double v = 0.0;
          if (px >= 0 && px <= 1 && py >= 0 && py <= 1) v += shape(x1, x2, px, py);
          const int qx = px - cx_, qy = py - cy_;
          if (qx >= 0 && qx <= 1 && qy >= 0 && qy <= 1) v -= shape(y1, y2, qx, qy);
          d[i] = v;
        }
        f.noalias() += (area * g.weights[a] * g.weights[b]) * d * d.transpose();
      }
    }
    return f;
  }

  double kernel(double z1, double z2) const { return std::pow(z1 * z1 + z2 * z2, -1.0 - s_); }

  void add_regular(LocalMatrix& out, double t01, double t02) const {
    const double za1 = (cx_ + t01) * hx_, zb1 = za1 + hx_;
    const double za2 = (cy_ + t02) * hy_, zb2 = za2 + hy_;
    auto nearest = [](double a, double b) { return a > 0.0 ? a : (b < 0.0 ? -b : 0.0); };
    const double dmin = std::hypot(nearest(za1, zb1), nearest(za2, zb2));
    const double dmax = std::hypot(std::max(std::abs(za1), std::abs(zb1)), std::max(std::abs(za2), std::abs(zb2)));
    if (dmin >= delta_) return;
    const bool cut = dmax > delta_;
    const int order = std::max(std::abs(cx_), std::abs(cy_)) >= 4 ? kFarOrder : kNearOrder;
    const auto& r = gauss_legendre(order);
    for (Eigen::Index i = 0; i < r.size(); ++i) {
      for (Eigen::Index j = 0; j < r.size(); ++j) {
        const double t1 = t01 + r.nodes[i], t2 = t02 + r.nodes[j];
        const double z1 = (cx_ + t1) * hx_, z2 = (cy_ + t2) * hy_;
        if (cut && std::hypot(z1, z2) >= delta_) continue;
        const double w = r.weights[i] * r.weights[j] * hx_ * hy_ * kernel(z1, z2);
        out.noalias() += w * overlap(t1, t2);
      }
    }
  }

  // Subrectangle with the origin z = 0 at a corner: two Duffy triangles, the
  // radial factor v^{1-2s} absorbed into a Gauss-Jacobi rule.
  void add_singular(LocalMatrix& out, double t01, double t02) const {
    const double sg1 = (-cx_ == t01) ? 1.0 : -1.0;  // direction from the corner into the piece
    const double sg2 = (-cy_ == t02) ? 1.0 : -1.0;
    const double L1 = hx_, L2 = hy_;
    static thread_local double cachedBeta = std::numeric_limits<double>::quiet_NaN();
    static thread_local QuadratureRule<double> jac;
    const double beta = 1.0 - 2.0 * s_;
    if (!(cachedBeta == beta)) {
      jac = gauss_jacobi01(kJacobiOrder, beta);
      cachedBeta = beta;
    }
    const auto& ra = gauss_legendre(kAngularOrder);
    for (int tri = 0; tri < 2; ++tri) {
      for (Eigen::Index j = 0; j < ra.size(); ++j) {
        const double v2 = ra.nodes[j];
        // Point on the far edge of the triangle at v1 = 1.
        const double e1 = tri == 0 ? L1 : L1 * v2;
        const double e2 = tri == 0 ? L2 * v2 : L2;
        const double ell = std::hypot(e1, e2);
        const double V = std::min(1.0, delta_ / ell);
        const double vscale = std::pow(V, 2.0 - 2.0 * s_);
        for (Eigen::Index i = 0; i < jac.size(); ++i) {
          const double v1 = V * jac.nodes[i];
          const double w1 = sg1 * v1 * e1, w2 = sg2 * v1 * e2;
          const double t1 = w1 / hx_ - cx_, t2 = w2 / hy_ - cy_;
          // Jacobian L1 L2 v1 times |z|^{-2-2s} = (v1 ell)^{-2-2s}, with v1^{1-2s} in the rule.
          const double w = ra.weights[j] * jac.weights[i] * vscale * L1 * L2 * std::pow(ell, -2.0 - 2.0 * s_);
          out.noalias() += w * overlap(t1, t2) / (v1 * v1);
        }
      }
    }
  }

  int cx_, cy_;
  double hx_, hy_, s_, delta_;
  std::vector<std::array<int, 2>> pos_;
};

}  // namespace

Matrix assemble_stiffness_2d(const Mesh& m, double s, double delta) {
  const int n = m.n;
  const double hx = m.cellSize[0], hy = m.cellSize[1];
  const int stride = n + 1;

  // Offsets c with c = 0 or c lexicographically positive (cy > 0, or cy = 0 and cx > 0).
  std::vector<std::array<int, 2>> offsets;
  for (int cy = 0; cy < n; ++cy) {
    for (int cx = -(n - 1); cx < n; ++cx) {
      if (cy == 0 && cx < 0) continue;
      const double gx = std::max(0, std::abs(cx) - 1) * hx, gy = std::max(0, std::abs(cy) - 1) * hy;
      if (std::hypot(gx, gy) >= delta) continue;
      offsets.push_back({cx, cy});
    }
  }
  std::vector<LocalMatrix> local(offsets.size());
  std::vector<std::vector<std::array<int, 2>>> nodes(offsets.size());
  parallel_for(offsets.size(), [&](std::size_t i) {
    CellPair pair(offsets[i][0], offsets[i][1], hx, hy, s, delta);
    local[i] = pair.integrate();
    nodes[i] = pair.nodes();
  });

  Matrix A = Matrix::Zero(m.node_count(), m.node_count());
  std::array<int, kMaxDofs> idx{};
  for (std::size_t o = 0; o < offsets.size(); ++o) {
    const int cx = offsets[o][0], cy = offsets[o][1];
    const double factor = (cx == 0 && cy == 0) ? 0.5 : 1.0;
    const auto& pos = nodes[o];
    const int k = static_cast<int>(pos.size());
    for (int py = 0; py + cy < n; ++py) {
      for (int px = std::max(0, -cx); px < n && px + cx < n; ++px) {
        for (int g = 0; g < k; ++g) {
          idx[static_cast<std::size_t>(g)] = (px + pos[static_cast<std::size_t>(g)][0]) +
                                             stride * (py + pos[static_cast<std::size_t>(g)][1]);
        }
        for (int a = 0; a < k; ++a) {
          for (int b = 0; b < k; ++b) A(idx[a], idx[b]) += factor * local[o](a, b);
        }
      }
    }
  }
  return A;
}

}  // namespace regiospec::detail
