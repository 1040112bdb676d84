#include "regiospec/spectrum.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <numbers>

#include "regiospec/error.hpp"
#include "regiospec/quadrature.hpp"
#include "regiospec/special.hpp"

namespace regiospec {

namespace {

void check_pair(const FormMatrix& A, const FormMatrix& M) {
  if (A.n() != M.n() || A.data.cols() != M.data.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "stiffness and mass sizes differ");
  }
  if (M.kind != FormKind::Mass || A.kind == FormKind::Mass) {
    throw Error(ErrorCode::InvalidArgument, "expected a stiffness and a mass matrix");
  }
}

}  // namespace

SpectralResult solve_eigs(const FormMatrix& A, const FormMatrix& M, int count) {
  check_pair(A, M);
  if (count < 1 || count > A.n()) throw Error(ErrorCode::InvalidArgument, "eigenpair count out of range");
  const Eigen::LLT<Matrix> llt(M.data);
  if (llt.info() != Eigen::Success) throw Error(ErrorCode::MassNotSPD, "mass matrix is not positive definite");
  const Eigen::GeneralizedSelfAdjointEigenSolver<Matrix> ges(A.data, M.data, Eigen::ComputeEigenvectors | Eigen::Ax_lBx);
  if (ges.info() != Eigen::Success) throw Error(ErrorCode::MassNotSPD, "generalized eigensolver failed");

  SpectralResult r;
  r.s = A.s;
  r.domain = A.domain;
  r.cells = A.cells;
  r.normA = A.data.cwiseAbs().maxCoeff();
  r.eigenvalues = ges.eigenvalues().head(count);
  r.eigenvectors = ges.eigenvectors().leftCols(count);
  r.residuals.resize(count);
  for (int k = 0; k < count; ++k) {
    auto v = r.eigenvectors.col(k);
    Eigen::Index imax = 0;
    v.cwiseAbs().maxCoeff(&imax);
    // Ties in magnitude resolve to the first index for determinism.
    const double top = v.cwiseAbs().maxCoeff();
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      if (std::abs(v[i]) >= top * (1.0 - 1e-12)) {
        imax = i;
        break;
      }
    }
    if (v[imax] < 0.0) v = -v;
    v /= std::sqrt(v.dot(M.data * v));
    r.residuals[k] = (A.data * v - r.eigenvalues[k] * (M.data * v)).norm();
  }
  return r;
}

std::vector<std::string> check_spectrum(const SpectralResult& r, const FormMatrix& M) {
  std::vector<std::string> issues;
  if (r.count() == 0) return {"no eigenpairs"};
  if (std::abs(r.eigenvalues[0]) > 1e-10) issues.push_back("lambda_0 is not zero");
  const Vector v0 = r.eigenvectors.col(0);
  const double mean = v0.mean();
  if ((v0.array() - mean).abs().maxCoeff() > 1e-8 * std::abs(mean)) issues.push_back("lambda_0 eigenvector not constant");
  for (Eigen::Index k = 1; k < r.count(); ++k) {
    if (r.eigenvalues[k] < r.eigenvalues[k - 1]) issues.push_back("eigenvalues not ascending");
  }
  const Matrix gram = r.eigenvectors.transpose() * M.data * r.eigenvectors;
  if ((gram - Matrix::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff() > 1e-10) {
    issues.push_back("eigenvectors not M-orthonormal");
  }
  if (r.residuals.maxCoeff() > 1e-9 * std::max(1.0, r.normA)) issues.push_back("residuals too large");
  return issues;
}

double rayleigh(const FormMatrix& A, const FormMatrix& M, const Vector& u) {
  check_pair(A, M);
  if (u.size() != A.n()) throw Error(ErrorCode::DimensionMismatch, "vector size differs from matrix");
  const double den = u.dot(M.data * u);
  if (!(den > 0.0)) throw Error(ErrorCode::ZeroVector, "Rayleigh quotient of the zero vector");
  return u.dot(A.data * u) / den;
}

double minmax_upper(const FormMatrix& A, const FormMatrix& M, const Matrix& basis) {
  check_pair(A, M);
  if (basis.rows() != A.n() || basis.cols() < 1) throw Error(ErrorCode::DimensionMismatch, "basis has wrong shape");
  const Matrix g = basis.transpose() * M.data * basis;
  const Eigen::SelfAdjointEigenSolver<Matrix> ge(g, Eigen::EigenvaluesOnly);
  if (!(ge.eigenvalues().minCoeff() > 1e-12 * ge.eigenvalues().maxCoeff())) {
    throw Error(ErrorCode::DependentVectors, "basis vectors are linearly dependent");
  }
  const Matrix a = basis.transpose() * A.data * basis;
  const Eigen::GeneralizedSelfAdjointEigenSolver<Matrix> ges(a, g, Eigen::EigenvaluesOnly);
  return ges.eigenvalues().maxCoeff();
}

std::vector<std::vector<int>> eigenvalue_clusters(const Vector& ev, double rel) {
  std::vector<std::vector<int>> groups;
  for (Eigen::Index k = 0; k < ev.size(); ++k) {
    if (!groups.empty()) {
      const double prev = ev[groups.back().back()];
      const double scale = std::max({std::abs(prev), std::abs(ev[k]), 1e-300});
      if (std::abs(ev[k] - prev) <= rel * scale) {
        groups.back().push_back(static_cast<int>(k));
        continue;
      }
    }
    groups.push_back({static_cast<int>(k)});
  }
  return groups;
}

namespace {

// M-orthonormal basis of span(B).
Matrix m_orthonormalize(const Matrix& B, const Matrix& M) {
  const Matrix G = B.transpose() * M * B;
  const Eigen::LLT<Matrix> llt(G);
  if (llt.info() != Eigen::Success) throw Error(ErrorCode::DependentVectors, "basis vectors are linearly dependent");
  return llt.matrixU().solve<Eigen::OnTheRight>(B);
}

}  // namespace

Vector principal_angles(const Matrix& U, const Matrix& V, const Matrix& M) {
  if (U.rows() != M.rows() || V.rows() != M.rows()) throw Error(ErrorCode::DimensionMismatch, "basis and metric sizes differ");
  const Matrix c = m_orthonormalize(U, M).transpose() * M * m_orthonormalize(V, M);
  const Eigen::JacobiSVD<Matrix> svd(c);
  Vector sv = svd.singularValues();
  Vector ang(sv.size());
  for (Eigen::Index i = 0; i < sv.size(); ++i) ang[i] = std::acos(std::clamp(sv[i], -1.0, 1.0));
  std::sort(ang.data(), ang.data() + ang.size());
  // Missing directions when the dimensions differ count as orthogonal.
  if (U.cols() != V.cols()) {
    Vector full = Vector::Constant(std::max(U.cols(), V.cols()), std::numbers::pi / 2.0);
    full.head(ang.size()) = ang;
    return full;
  }
  return ang;
}

double c1_subspace_bound(const std::vector<C1Function>& V, const Domain& d, double s0, int samples) {
  if (V.empty()) throw Error(ErrorCode::InvalidArgument, "empty subspace");
  if (!(s0 >= 0.0 && s0 < 1.0)) throw Error(ErrorCode::InvalidOrder, "bound needs s0 in [0, 1)");
  const int N = d.dim();
  const int m = static_cast<int>(V.size());
  // L^2 Gram matrix by tensor Gauss rules.
  const auto& rule = gauss_legendre(32);
  const Point lo = d.lower(), ext = d.extent();
  const int panels = 16;
  Matrix G = Matrix::Zero(m, m);
  std::vector<Point> qp;
  std::vector<double> qw;
  auto push_1d = [&](int axis, std::vector<double>& x, std::vector<double>& w) {
    for (int p = 0; p < panels; ++p) {
      for (Eigen::Index i = 0; i < rule.size(); ++i) {
        x.push_back(lo[axis] + ext[axis] * (p + rule.nodes[i]) / panels);
        w.push_back(rule.weights[i] * ext[axis] / panels);
      }
    }
  };
  std::vector<double> x1, w1, x2, w2;
  push_1d(0, x1, w1);
  if (N == 2) push_1d(1, x2, w2);
  for (std::size_t i = 0; i < x1.size(); ++i) {
    if (N == 1) {
      qp.push_back(make_point(x1[i]));
      qw.push_back(w1[i]);
    } else {
      for (std::size_t j = 0; j < x2.size(); ++j) {
        qp.push_back(make_point(x1[i], x2[j]));
        qw.push_back(w1[i] * w2[j]);
      }
    }
  }
  Vector vals(m);
  for (std::size_t q = 0; q < qp.size(); ++q) {
    for (int a = 0; a < m; ++a) vals[a] = V[static_cast<std::size_t>(a)].value(qp[q]);
    G.noalias() += qw[q] * vals * vals.transpose();
  }
  const Eigen::LLT<Matrix> llt(G);
  if (llt.info() != Eigen::Success) throw Error(ErrorCode::DependentVectors, "subspace functions are dependent");

  // ||u||_{C^1} <= sup|u| + sup|grad u|; for u = sum c_a v_a with c'Gc = 1 each
  // supremum over the unit L^2 sphere is max_x sqrt(g(x)' G^{-1} g(x)).
  const int per = std::max(2, samples);
  const int total = N == 1 ? per : static_cast<int>(std::ceil(std::sqrt(double(per)))) + 1;
  double supVal = 0.0, supGrad = 0.0;
  Vector g(m);
  Matrix jg(m, N);
  auto visit = [&](const Point& x) {
    for (int a = 0; a < m; ++a) {
      g[a] = V[static_cast<std::size_t>(a)].value(x);
      jg.row(a) = V[static_cast<std::size_t>(a)].gradient(x).transpose();
    }
    supVal = std::max(supVal, std::sqrt(std::max(0.0, g.dot(llt.solve(g)))));
    // Gradient norm: largest singular value of the weighted Jacobian.
    const Matrix w = jg.transpose() * llt.solve(jg);
    const Eigen::SelfAdjointEigenSolver<Matrix> es(w, Eigen::EigenvaluesOnly);
    supGrad = std::max(supGrad, std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff())));
  };
  for (int i = 0; i < total; ++i) {
    const double t = double(i) / (total - 1);
    if (N == 1) {
      visit(make_point(lo[0] + t * ext[0]));
    } else {
      for (int j = 0; j < total; ++j) visit(make_point(lo[0] + t * ext[0], lo[1] + double(j) / (total - 1) * ext[1]));
    }
  }
  const double CV = supVal + supGrad;
  const double dm = diameter(d);
  return CV * CV * measure(d) * sphere_measure<double>(N) * std::max(1.0, dm * dm) / (4.0 * (1.0 - s0));
}

}  // namespace regiospec
