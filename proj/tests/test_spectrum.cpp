#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "regiospec/error.hpp"
#include "regiospec/galerkin.hpp"
#include "regiospec/spectrum.hpp"

using namespace regiospec;

namespace {

const Domain unit = Domain::interval(0.0, 1.0);

double harmonic(int n) {
  double h = 0.0;
  for (int k = 1; k <= n; ++k) h += 1.0 / k;
  return h;
}

double legendre01(int n, double x) {
  const double t = 2.0 * x - 1.0;
  double p0 = 1.0, p1 = t;
  if (n == 0) return 1.0;
  for (int k = 2; k <= n; ++k) {
    const double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  return p1;
}

Vector random_vector(std::mt19937_64& rng, Eigen::Index n) {
  std::normal_distribution<double> g;
  Vector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = g(rng);
  return v;
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_CASE("basic spectral invariants") {
  for (const Mesh& m : {build_mesh(unit, 40), build_mesh(Domain::rectangle(0, 1, 0, 2), 5)}) {
    const FormMatrix M = assemble_mass(m);
    for (double s : {0.0, 0.2, 0.4}) {
      const SpectralResult r = solve_eigs(assemble_Es(m, s), M, 6);
      CHECK(check_spectrum(r, M).empty());
      CHECK(std::abs(r.eigenvalues[0]) <= 1e-10);
      const Vector v0 = r.eigenvectors.col(0);
      CHECK((v0.array() / v0.mean() - 1.0).abs().maxCoeff() <= 1e-8);
      for (int k = 1; k < 6; ++k) CHECK(r.eigenvalues[k] >= r.eigenvalues[k - 1]);
      const Matrix G = r.eigenvectors.transpose() * M.data * r.eigenvectors;
      CHECK((G - Matrix::Identity(6, 6)).cwiseAbs().maxCoeff() <= 1e-10);
      CHECK(r.residuals.maxCoeff() <= 1e-9 * r.normA);
      // Largest-magnitude entry positive; ties go to the first index.
      for (int k = 0; k < 6; ++k) {
        const auto v = r.eigenvectors.col(k);
        const double top = v.cwiseAbs().maxCoeff();
        Eigen::Index idx = 0;
        while (std::abs(v[idx]) < top * (1.0 - 1e-12)) ++idx;
        CHECK(v[idx] > 0.0);
      }
    }
  }
}

TEST_CASE("order-zero spectrum on an interval is twice the harmonic numbers") {
  const Mesh m = build_mesh(Domain::interval(-1.0, 2.0), 256);
  const SpectralResult r = solve_eigs(assemble_Es(m, 0.0), assemble_mass(m), 6);
  for (int n = 1; n <= 5; ++n) CHECK(r.eigenvalues[n] == doctest::Approx(2.0 * harmonic(n)).epsilon(1e-6));
  // Eigenfunctions are the shifted Legendre polynomials.
  const Mesh u = build_mesh(unit, 256);
  const FormMatrix M = assemble_mass(u);
  const SpectralResult ru = solve_eigs(assemble_Es(u, 0.0), M, 4);
  for (int n = 1; n <= 3; ++n) {
    const Vector p = interpolate(u, [n](const Point& x) { return legendre01(n, x[0]); });
    const Matrix P = p;
    const Matrix X = ru.eigenvectors.col(n);
    CHECK(principal_angles(X, P, M.data).maxCoeff() <= 5e-4);
  }
}

TEST_CASE("fine-mesh eigenvalues and their Richardson limits") {
  std::vector<Vector> lam;
  for (int n : {128, 256, 512}) {
    const Mesh m = build_mesh(unit, n);
    lam.push_back(solve_eigs(assemble_Es(m, 0.0), assemble_mass(m), 4).eigenvalues);
  }
  // lambda_1 has the linear eigenfunction, which lies in every P1 space.
  const double star1 = lam[2][1] + (lam[2][1] - lam[1][1]) / 3.0;
  CHECK(std::abs(lam[2][1] - star1) <= 1e-9);
  CHECK(std::abs(star1 - 2.0) <= 1e-9);
  for (int k : {2, 3}) {
    const double p = std::log2((lam[0][k] - lam[1][k]) / (lam[1][k] - lam[2][k]));
    const double star = lam[2][k] + (lam[2][k] - lam[1][k]) / (std::pow(2.0, p) - 1.0);
    CHECK(p > 1.5);
    CHECK(lam[2][k] == doctest::Approx(star).epsilon(1e-8));
    CHECK(star == doctest::Approx(2.0 * harmonic(k)).epsilon(1e-9));
  }
}

TEST_CASE("eigenvalues agree with an inertia-bisection oracle") {
  for (const Mesh& m : {build_mesh(unit, 8), build_mesh(Domain::rectangle(0, 1, 0, 1), 3)}) {
    const FormMatrix M = assemble_mass(m);
    for (double s : {0.0, 0.25, 0.4}) {
      const FormMatrix A = assemble_Es(m, s);
      const int count = static_cast<int>(A.n());
      const SpectralResult r = solve_eigs(A, M, count);
      const std::vector<double> ref = oracle::bisection_eigenvalues(A.data, M.data, count);
      for (int k = 1; k < count; ++k) CHECK(std::abs(r.eigenvalues[k] - ref[k]) <= 1e-10);
      CHECK(std::abs(r.eigenvalues[0]) <= 1e-10);
    }
  }
}

TEST_CASE("Rayleigh quotients") {
  const Mesh m = build_mesh(unit, 64);
  const FormMatrix A = assemble_Es(m, 0.3), M = assemble_mass(m);
  const SpectralResult r = solve_eigs(A, M, 5);
  CHECK(std::abs(rayleigh(A, M, Vector::Ones(M.n()))) <= 1e-12);
  for (int k = 1; k < 5; ++k) CHECK(rayleigh(A, M, r.eigenvectors.col(k)) == doctest::Approx(r.eigenvalues[k]).epsilon(1e-10));
  std::mt19937_64 rng(5);
  const Vector u = random_vector(rng, M.n());
  CHECK(rayleigh(A, M, -3.5 * u) == doctest::Approx(rayleigh(A, M, u)).epsilon(1e-13));
  double worst = INFINITY;
  for (int t = 0; t < 1000; ++t) worst = std::min(worst, rayleigh(A, M, project_mean_zero(M, random_vector(rng, M.n()))));
  CHECK(worst >= r.eigenvalues[1] - 1e-9);
  // Smooth trial functions come close to the minimum.
  const Vector lin = project_mean_zero(M, interpolate(m, [](const Point& p) { return p[0]; }));
  CHECK(rayleigh(A, M, lin) >= r.eigenvalues[1] - 1e-9);
  CHECK(rayleigh(A, M, lin) <= 1.05 * r.eigenvalues[1]);
  CHECK(code_of([&] { rayleigh(A, M, Vector::Zero(M.n())); }) == ErrorCode::ZeroVector);
}

TEST_CASE("min-max upper bounds") {
  const Mesh m = build_mesh(unit, 64);
  const FormMatrix A = assemble_Es(m, 0.15), M = assemble_mass(m);
  const SpectralResult r = solve_eigs(A, M, 5);
  for (int n = 1; n <= 4; ++n) CHECK(minmax_upper(A, M, r.eigenvectors.middleCols(1, n)) == doctest::Approx(r.eigenvalues[n]).epsilon(1e-10));
  CHECK(minmax_upper(A, M, r.eigenvectors.col(2)) >= r.eigenvalues[1]);
  std::mt19937_64 rng(9);
  for (int t = 0; t < 100; ++t) {
    Matrix B(M.n(), 3);
    for (int c = 0; c < 3; ++c) B.col(c) = project_mean_zero(M, random_vector(rng, M.n()));
    CHECK(minmax_upper(A, M, B) >= r.eigenvalues[3] - 1e-9);
  }
  Matrix D(M.n(), 2);
  D.col(0) = r.eigenvectors.col(1);
  D.col(1) = 2.0 * r.eigenvectors.col(1);
  CHECK(code_of([&] { minmax_upper(A, M, D); }) == ErrorCode::DependentVectors);
}

TEST_CASE("C^1 subspace bound") {
  const Mesh m = build_mesh(unit, 64);
  const FormMatrix M = assemble_mass(m);
  const C1Function lin{[](const Point& x) { return x[0] - 0.5; }, [](const Point&) { return make_point(1.0); }};
  const double b = c1_subspace_bound({lin}, unit, 0.4);
  CHECK(std::isfinite(b));
  for (double s : {0.0, 0.1, 0.2, 0.3, 0.4}) CHECK(solve_eigs(assemble_Es(m, s), M, 2).eigenvalues[1] <= b);
  double prev = 0.0;
  for (double s0 : {0.0, 0.2, 0.5, 0.9, 0.999}) {
    const double v = c1_subspace_bound({lin}, unit, s0);
    CHECK(v > prev);
    CHECK(std::isfinite(v));
    prev = v;
  }
  CHECK(c1_subspace_bound({lin}, unit, 1.0 - 1e-9) > 1e6);
  const C1Function quad{[](const Point& x) { return x[0] * x[0] - 1.0 / 3.0; },
                        [](const Point& x) { return make_point(2.0 * x[0]); }};
  const double b2 = c1_subspace_bound({lin, quad}, unit, 0.4);
  for (double s : {0.0, 0.2, 0.4}) CHECK(solve_eigs(assemble_Es(m, s), M, 3).eigenvalues[2] <= b2);
}

TEST_CASE("clusters and principal angles") {
  const Mesh m = build_mesh(Domain::rectangle(0, 1, 0, 1), 6);
  const FormMatrix A = assemble_Es(m, 0.2), M = assemble_mass(m);
  const SpectralResult r = solve_eigs(A, M, 5);
  const auto cl = eigenvalue_clusters(r.eigenvalues);
  REQUIRE(cl.size() >= 3);
  CHECK(cl[0] == std::vector<int>{0});
  CHECK(cl[1] == std::vector<int>{1, 2});
  const Matrix U = r.eigenvectors.middleCols(1, 2);
  Matrix V = U;
  V.col(0) = U.col(0) + U.col(1);
  V.col(1) = U.col(0) - 3.0 * U.col(1);
  CHECK(principal_angles(U, V, M.data).maxCoeff() <= 1e-7);
  const Matrix W = r.eigenvectors.col(3);
  CHECK(principal_angles(U.col(0), W, M.data)[0] == doctest::Approx(std::numbers::pi / 2).epsilon(1e-8));
  const Vector pa = principal_angles(U, W, M.data);
  CHECK(pa.size() == 2);
  CHECK(pa.maxCoeff() == doctest::Approx(std::numbers::pi / 2).epsilon(1e-8));
}

TEST_CASE("solver input validation") {
  const Mesh m = build_mesh(unit, 8);
  const FormMatrix A = assemble_Es(m, 0.2);
  FormMatrix bad = assemble_mass(m);
  bad.data = -bad.data;
  CHECK(code_of([&] { solve_eigs(A, bad, 3); }) == ErrorCode::MassNotSPD);
  CHECK(code_of([&] { solve_eigs(A, assemble_mass(build_mesh(unit, 9)), 3); }) == ErrorCode::DimensionMismatch);
  CHECK(code_of([&] { solve_eigs(A, assemble_mass(m), 20); }) == ErrorCode::InvalidArgument);
}
