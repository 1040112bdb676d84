#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "regiospec/geometry.hpp"
#include "regiospec/types.hpp"

namespace regiospec {

/// Uniform partition with n cells per axis: segments in 1D, rectangles in 2D.
/// Node (i, j) has index i + (n + 1) j.
struct Mesh {
  Domain domain = Domain::interval(0.0, 1.0);
  int n = 2;
  std::vector<Point> nodes;
  std::vector<std::vector<int>> cells;  // 2 nodes per segment, 4 per rectangle (counterclockwise)
  Point cellSize;                       // side lengths of a cell
  double h = 0.0;                       // largest cell side

  int dim() const { return domain.dim(); }
  int node_count() const { return static_cast<int>(nodes.size()); }
};

Mesh build_mesh(const Domain& d, int n);

enum class FormKind { Stiffness, Truncated, Mass };

std::string_view to_string(FormKind k);

struct FormMatrix {
  Matrix data;
  FormKind kind = FormKind::Stiffness;
  double s = 0.0;
  std::optional<double> delta;
  Domain domain = Domain::interval(0.0, 1.0);
  int cells = 0;

  Eigen::Index n() const { return data.rows(); }
};

/// Stiffness matrix of E_s for the continuous piecewise-linear (1D) or bilinear (2D) basis.
FormMatrix assemble_Es(const Mesh& m, double s);

/// Stiffness matrix of the form with kernel cut to |x - y| < delta. Exact in 1D;
/// in 2D exact when delta <= min cell side or delta >= diameter, otherwise the
/// cutoff is applied to quadrature nodes of well-separated pieces.
FormMatrix assemble_truncated_Es(const Mesh& m, double s, double delta);

FormMatrix assemble_mass(const Mesh& m);

/// Issues found by the structural checks (symmetry, semidefiniteness, kernel).
std::vector<std::string> check_form(const FormMatrix& f);

/// u with A u = M f and mean zero, for mean-zero f.
Vector solve_poisson(const FormMatrix& A, const FormMatrix& M, const Vector& fvec, double tol = 1e-10);

/// u minus its mean: u - (1'Mu / 1'M1) 1.
Vector project_mean_zero(const FormMatrix& M, const Vector& u);

/// Nodal interpolant.
template <class F>
Vector interpolate(const Mesh& m, F&& f) {
  Vector v(m.node_count());
  for (int i = 0; i < m.node_count(); ++i) v[i] = f(m.nodes[static_cast<std::size_t>(i)]);
  return v;
}

namespace detail {

// Element-pair integrals for the 1D mesh: local matrices per cell offset.
Matrix assemble_stiffness_1d(const Mesh& m, double s, double delta);
Matrix assemble_stiffness_2d(const Mesh& m, double s, double delta);

}  // namespace detail

}  // namespace regiospec
