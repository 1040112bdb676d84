#include "regiospec/galerkin.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <cmath>
#include <limits>

#include "regiospec/error.hpp"

namespace regiospec {

namespace {

constexpr double kMaxOrder = 0.9;

void check_order(double s) {
  if (!(s >= 0.0 && s < 1.0)) throw Error(ErrorCode::InvalidOrder, "stiffness needs s in [0, 1)");
  if (s > kMaxOrder) throw Error(ErrorCode::UnsupportedOrder, "stiffness quadrature is validated for s <= 0.9");
}

Matrix mass_1d(int n, double h) {
  Matrix M = Matrix::Zero(n + 1, n + 1);
  for (int e = 0; e < n; ++e) {
    M(e, e) += h / 3.0;
    M(e + 1, e + 1) += h / 3.0;
    M(e, e + 1) += h / 6.0;
    M(e + 1, e) += h / 6.0;
  }
  return M;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

FormMatrix stiffness(const Mesh& m, double s, double delta, FormKind kind) {
  check_order(s);
  FormMatrix f;
  f.kind = kind;
  f.s = s;
  f.domain = m.domain;
  f.cells = m.n;
  if (kind == FormKind::Truncated) f.delta = delta;
  const double eff = delta >= diameter(m.domain) ? std::numeric_limits<double>::infinity() : delta;
  f.data = m.dim() == 1 ? detail::assemble_stiffness_1d(m, s, eff) : detail::assemble_stiffness_2d(m, s, eff);
  return f;
}

}  // namespace

std::string_view to_string(FormKind k) {
  switch (k) {
    case FormKind::Stiffness: return "stiffness";
    case FormKind::Truncated: return "truncated";
    case FormKind::Mass: return "mass";
  }
  return "unknown";
}

Mesh build_mesh(const Domain& d, int n) {
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "mesh needs at least 2 cells per axis");
  Mesh m;
  m.domain = d;
  m.n = n;
  const Point lo = d.lower();
  m.cellSize = d.extent() / double(n);
  m.h = m.cellSize.maxCoeff();
  if (d.dim() == 1) {
    for (int i = 0; i <= n; ++i) m.nodes.push_back(make_point(i == n ? d.upper()[0] : lo[0] + i * m.cellSize[0]));
    for (int e = 0; e < n; ++e) m.cells.push_back({e, e + 1});
  } else {
    const Point hi = d.upper();
    for (int j = 0; j <= n; ++j) {
      for (int i = 0; i <= n; ++i) {
        m.nodes.push_back(make_point(i == n ? hi[0] : lo[0] + i * m.cellSize[0],
                                     j == n ? hi[1] : lo[1] + j * m.cellSize[1]));
      }
    }
    const int stride = n + 1;
    for (int j = 0; j < n; ++j) {
      for (int i = 0; i < n; ++i) {
        const int b = i + stride * j;
        m.cells.push_back({b, b + 1, b + 1 + stride, b + stride});
      }
    }
  }
  return m;
}

FormMatrix assemble_Es(const Mesh& m, double s) {
  return stiffness(m, s, std::numeric_limits<double>::infinity(), FormKind::Stiffness);
}

FormMatrix assemble_truncated_Es(const Mesh& m, double s, double delta) {
  if (!(delta > 0.0)) throw Error(ErrorCode::InvalidArgument, "truncation radius must be positive");
  return stiffness(m, s, delta, FormKind::Truncated);
}

FormMatrix assemble_mass(const Mesh& m) {
  FormMatrix f;
  f.kind = FormKind::Mass;
  f.domain = m.domain;
  f.cells = m.n;
  const Matrix mx = mass_1d(m.n, m.cellSize[0]);
  if (m.dim() == 1) {
    f.data = mx;
  } else {
    const Matrix my = mass_1d(m.n, m.cellSize[1]);
    f.data = kron(my, mx);
  }
  return f;
}

std::vector<std::string> check_form(const FormMatrix& f) {
  std::vector<std::string> issues;
  const Matrix& A = f.data;
  const double scale = std::max(1e-300, A.cwiseAbs().maxCoeff());
  if ((A - A.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) issues.push_back("not symmetric");
  const Eigen::SelfAdjointEigenSolver<Matrix> eig(A, Eigen::EigenvaluesOnly);
  const double lmin = eig.eigenvalues().minCoeff();
  const double lmax = std::max(1e-300, eig.eigenvalues().cwiseAbs().maxCoeff());
  if (f.kind == FormKind::Mass) {
    if (!(lmin > 0.0)) issues.push_back("mass matrix not positive definite");
  } else {
    if (lmin < -1e-12 * lmax) issues.push_back("stiffness matrix not positive semidefinite");
    const double rowsum = (A * Vector::Ones(A.cols())).cwiseAbs().maxCoeff();
    if (rowsum > 1e-10 * std::max(1.0, scale)) issues.push_back("constants not in the kernel");
  }
  return issues;
}

Vector project_mean_zero(const FormMatrix& M, const Vector& u) {
  const Vector m1 = M.data * Vector::Ones(M.n());
  return u - Vector::Constant(u.size(), m1.dot(u) / m1.sum());
}

Vector solve_poisson(const FormMatrix& A, const FormMatrix& M, const Vector& fvec, double tol) {
  if (A.n() != M.n() || fvec.size() != A.n()) throw Error(ErrorCode::DimensionMismatch, "Poisson data sizes differ");
  if (M.kind != FormKind::Mass || A.kind == FormKind::Mass) {
    throw Error(ErrorCode::InvalidArgument, "Poisson solve needs a stiffness and a mass matrix");
  }
  const Vector m1 = M.data * Vector::Ones(M.n());
  if (std::abs(m1.dot(fvec)) > tol * m1.norm() * fvec.norm()) {
    throw Error(ErrorCode::NotMeanZero, "right-hand side must have zero mean");
  }
  if (fvec.norm() == 0.0) return Vector::Zero(fvec.size());
  // Constants span the kernel of A; adding a multiple of (M1)(M1)' makes the
  // system definite without changing the mean-zero solution.
  const double sigma = A.data.cwiseAbs().maxCoeff() / m1.squaredNorm();
  const Matrix B = A.data + sigma * m1 * m1.transpose();
  const Eigen::LLT<Matrix> llt(B);
  if (llt.info() != Eigen::Success) throw Error(ErrorCode::SingularSystem, "deflated stiffness is not definite");
  const Vector d = llt.matrixLLT().diagonal();
  const double ratio = d.minCoeff() / d.maxCoeff();
  if (!(ratio * ratio > 1e3 * std::numeric_limits<double>::epsilon())) {
    throw Error(ErrorCode::SingularSystem, "deflated stiffness is numerically singular");
  }
  return project_mean_zero(M, llt.solve(M.data * fvec));
}

}  // namespace regiospec
