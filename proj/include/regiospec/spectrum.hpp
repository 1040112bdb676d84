#pragma once

#include <functional>
#include <string>
#include <vector>

#include "regiospec/galerkin.hpp"
#include "regiospec/types.hpp"

namespace regiospec {

/// Lowest eigenpairs of A v = lambda M v; eigenvectors are M-orthonormal with
/// their largest-magnitude entry positive.
struct SpectralResult {
  double s = 0.0;
  Vector eigenvalues;
  Matrix eigenvectors;  // one column per eigenvalue
  Vector residuals;     // ||A v - lambda M v||
  Domain domain = Domain::interval(0.0, 1.0);
  int cells = 0;
  double normA = 0.0;   // max-abs entry scale of A used by the invariant checks

  Eigen::Index count() const { return eigenvalues.size(); }
};

SpectralResult solve_eigs(const FormMatrix& A, const FormMatrix& M, int count);

/// Violations of: lambda_0 ~ 0 with constant eigenvector, ascending order,
/// M-orthonormality, small residuals.
std::vector<std::string> check_spectrum(const SpectralResult& r, const FormMatrix& M);

/// (u'Au) / (u'Mu).
double rayleigh(const FormMatrix& A, const FormMatrix& M, const Vector& u);

/// Largest Rayleigh quotient over span(basis), for independent mean-zero columns.
double minmax_upper(const FormMatrix& A, const FormMatrix& M, const Matrix& basis);

/// Groups of indices whose eigenvalues agree to rel relative tolerance.
std::vector<std::vector<int>> eigenvalue_clusters(const Vector& eigenvalues, double rel = 1e-8);

/// Principal angles (radians, ascending) between span(U) and span(V) in the M inner product.
Vector principal_angles(const Matrix& U, const Matrix& V, const Matrix& M);

/// A smooth function with its gradient, for the C^1 subspace bound.
struct C1Function {
  std::function<double(const Point&)> value;
  std::function<Point(const Point&)> gradient;
};

/// Upper bound on sup over s in [0, s0] of lambda_{n,s}, n = dim V, from the
/// estimate E_s(u,u) <= ||u||_{C^1}^2 |Omega| |S^{N-1}| max(1, d^2) / (4 (1 - s)).
/// The C^1 / L^2 equivalence constant on V is measured on a sampling grid.
double c1_subspace_bound(const std::vector<C1Function>& V, const Domain& d, double s0, int samples = 2001);

}  // namespace regiospec
