#include "verify.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "regiospec/error.hpp"
#include "regiospec/kernels.hpp"
#include "regiospec/pointwise.hpp"
#include "regiospec/test_functions.hpp"

namespace regiospec::verify {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

Verdict check(std::string name, bool pass, std::string detail) { return {std::move(name), pass, std::move(detail)}; }

Verdict close(std::string name, double got, double want, double tol) {
  const double err = std::abs(got - want) / std::max(1.0, std::abs(want));
  return check(std::move(name), err <= tol, "got " + fmt(got) + ", expected " + fmt(want) + ", error " + fmt(err));
}

double harmonic(int n) {
  double h = 0.0;
  for (int k = 1; k <= n; ++k) h += 1.0 / k;
  return h;
}

// Shifted Legendre polynomial P_n(2x - 1) on (0, 1).
double legendre01(int n, double x) {
  const double t = 2.0 * x - 1.0;
  double p0 = 1.0, p1 = t;
  if (n == 0) return p0;
  for (int k = 2; k <= n; ++k) {
    const double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  return p1;
}

std::vector<Verdict> kernels_suite() {
  std::vector<Verdict> out;
  out.push_back(close("c_frac(1, 1/2) = 1/pi", c_frac(1, 0.5), 1.0 / std::numbers::pi, 1e-12));
  out.push_back(close("c_frac(2, 1/2) = 1/(2 pi)", c_frac(2, 0.5), 0.5 / std::numbers::pi, 1e-12));
  out.push_back(close("c_log(1) = 1", c_log(1), 1.0, 1e-12));
  out.push_back(close("c_log(2) = 1/pi", c_log(2), 1.0 / std::numbers::pi, 1e-12));
  out.push_back(close("c_log(4) = 1/pi^2", c_log(4), 1.0 / (std::numbers::pi * std::numbers::pi), 1e-12));
  double worst = 0.0;
  for (int N = 1; N <= 3; ++N) {
    for (int i = 0; i <= 60; ++i) {
      const double s = std::exp(std::log(1e-6) + (std::log1p(-1e-6) - std::log(1e-6)) * i / 60.0);
      worst = std::max(worst, std::abs(c_frac(N, s) / c_frac_alt(N, s) - 1.0));
    }
  }
  out.push_back(check("c_frac algebraic forms agree", worst <= 1e-13, "max relative difference " + fmt(worst)));
  double K = 0.0;
  for (double s = 1e-6; s <= 0.01; s *= 1.5) K = std::max(K, std::abs(c_frac(1, s) / s - c_log(1)) / s);
  out.push_back(check("c_frac/s - c_log = O(s)", std::isfinite(K) && std::abs(c_frac(1, 1e-6) / 1e-6 - 1.0) <= 1e-4,
                      "fitted K = " + fmt(K)));
  out.push_back(close("expansion_coeff(1, 1, k=0)", expansion_coeff({1.0, 1.0, 1.0}, 0), 2.0, 1e-14));
  out.push_back(close("expansion_coeff(1, 1, k=3)", expansion_coeff({1.0, 1.0, 1.0}, 3), 8.0, 1e-14));
  out.push_back(close("expansion_coeff(1/2, 2, k=1)", expansion_coeff({0.5, 2.0, 1.0}, 1),
                      8.0 + std::sqrt(2.0) * 2.0 * std::log(2.0), 1e-14));
  out.push_back(close("tail_bound(1, 1, 0.1, 1)", tail_bound({1.0, 1.0, 1.0}, 0.1, 1), 0.25, 1e-14));
  out.push_back(close("tail_bound(1, 1, 0.45, 2)", tail_bound({1.0, 1.0, 1.0}, 0.45, 2), 8.1, 1e-12));
  bool mono = true;
  for (double s : {0.05, 0.2, 0.4}) {
    double prev = tail_bound({1.0, 2.5, 1.0}, s, 1);
    for (int j = 2; j <= 80; ++j) {
      const double cur = tail_bound({1.0, 2.5, 1.0}, s, j);
      mono = mono && cur <= prev;
      prev = cur;
    }
    mono = mono && prev < 1e-6;
  }
  out.push_back(check("tail_bound nonincreasing in j and vanishing", mono, mono ? "ok" : "violated"));
  out.push_back(close("riesz_kernel(|z|=1/2, N=1, s=1/4)", riesz_kernel(make_point(0.5), 1, 0.25), std::pow(2.0, 1.5), 1e-14));
  out.push_back(close("log_kernel(|z|=1/e, N=1, k=1)", log_kernel(make_point(std::exp(-1.0)), 1, 1), 2.0 * std::numbers::e, 1e-14));
  return out;
}

std::vector<Verdict> pointwise_suite() {
  std::vector<Verdict> out;
  const Domain d = Domain::interval(0.0, 1.0);
  const ScalarField id = test_function("identity", d);
  for (double s : {0.0, 0.1, 0.25, 0.4}) {
    for (double x : {0.1, 0.25, 0.5, 0.9}) {
      const double want = (std::pow(x, 1.0 - 2.0 * s) - std::pow(1.0 - x, 1.0 - 2.0 * s)) / (1.0 - 2.0 * s);
      out.push_back(close("D^s y at x=" + fmt(x) + ", s=" + fmt(s), eval_Ds(id, d, make_point(x), s).value, want, 1e-9));
    }
  }
  for (int n = 1; n <= 4; ++n) {
    ScalarField p;
    p.evaluate = [n](const Point& y) { return legendre01(n, y[0]); };
    p.alpha = 1.0;
    for (double x : {0.15, 0.6}) {
      out.push_back(close("D^0 Legendre n=" + std::to_string(n) + " x=" + fmt(x), eval_Ds(p, d, make_point(x), 0.0).value,
                          2.0 * harmonic(n) * legendre01(n, x), 1e-9));
    }
  }
  out.push_back(close("kappa(1/2, s=1/2) = 4/pi", eval_kappa(d, make_point(0.5), 0.5), 4.0 / std::numbers::pi, 1e-12));
  // Expansion remainder within the coefficient bound.
  double worstRatio = 0.0;
  for (const char* name : {"identity", "poly2", "cospi"}) {
    const ScalarField u = test_function(name, d);
    for (double x : {0.1, 0.3, 0.5, 0.7}) {
      for (double s : {0.05, 0.1, 0.2}) {
        const EvalResult full = eval_Ds(u, d, make_point(x), s);
        for (int j = 1; j <= 6; ++j) {
          const EvalResult part = series_partial(u, d, make_point(x), s, j);
          const double bound = u.holderSeminorm * tail_bound({1.0, 1.0, u.holderSeminorm}, s, j) +
                               full.errEstimate + part.errEstimate + 1e-9;
          worstRatio = std::max(worstRatio, std::abs(full.value - part.value) / bound);
        }
      }
    }
  }
  out.push_back(check("series remainder within tail bound", worstRatio <= 1.0, "worst remainder/bound " + fmt(worstRatio)));
  const ScalarField a = test_function("cospi", d), b = test_function("poly2", d);
  ScalarField comb;
  comb.evaluate = [&](const Point& y) { return 2.0 * a(y) - 3.0 * b(y); };
  const Point x = make_point(0.35);
  const double lhs = eval_Ds(comb, d, x, 0.3).value;
  const double rhs = 2.0 * eval_Ds(a, d, x, 0.3).value - 3.0 * eval_Ds(b, d, x, 0.3).value;
  out.push_back(close("linearity", lhs, rhs, 1e-9));
  return out;
}

std::vector<Verdict> galerkin_suite(unsigned long long seed) {
  std::vector<Verdict> out;
  const Domain d = Domain::interval(0.0, 1.0);
  const Mesh m = build_mesh(d, 32);
  for (double s : {0.0, 0.25, 0.4, 0.9}) {
    const FormMatrix A = assemble_Es(m, s);
    const auto issues = check_form(A);
    out.push_back(check("stiffness structure s=" + fmt(s), issues.empty(), issues.empty() ? "ok" : issues.front()));
    const Vector x = interpolate(m, [](const Point& p) { return p[0]; });
    out.push_back(close("E_s(x, x) s=" + fmt(s), x.dot(A.data * x), 1.0 / (2.0 - 2.0 * s) - 1.0 / (3.0 - 2.0 * s), 1e-12));
  }
  const Mesh m2 = build_mesh(Domain::rectangle(0.0, 1.0, 0.0, 2.0), 6);
  const auto issues2 = check_form(assemble_Es(m2, 0.3));
  out.push_back(check("2D stiffness structure", issues2.empty(), issues2.empty() ? "ok" : issues2.front()));
  const FormMatrix A = assemble_Es(m, 0.25);
  const FormMatrix T = assemble_truncated_Es(m, 0.25, 2.0);
  out.push_back(check("truncation inactive beyond diameter", (A.data - T.data).cwiseAbs().maxCoeff() <= 1e-12, "ok"));
  const FormMatrix T2 = assemble_truncated_Es(m, 0.25, 0.1);
  const Eigen::SelfAdjointEigenSolver<Matrix> diff(A.data - T2.data, Eigen::EigenvaluesOnly);
  out.push_back(check("truncated form dominated", diff.eigenvalues().minCoeff() >= -1e-12,
                      "min eigenvalue of difference " + fmt(diff.eigenvalues().minCoeff())));
  const FormMatrix M = assemble_mass(m);
  const double h = 1.0 / 32.0;
  out.push_back(close("mass interior row", M.data(5, 5), 4.0 * h / 6.0, 1e-14));
  out.push_back(close("1'M1 = |Omega|", M.data.sum(), 1.0, 1e-13));
  const SpectralResult sp = solve_eigs(A, M, 3);
  const Vector xi = sp.eigenvectors.col(1);
  const Vector u = solve_poisson(A, M, xi);
  out.push_back(check("Poisson with eigenfunction data", (u - xi / sp.eigenvalues[1]).cwiseAbs().maxCoeff() <= 1e-8, "ok"));
  bool rejected = false;
  try {
    solve_poisson(A, M, Vector::Ones(M.n()));
  } catch (const Error& e) {
    rejected = e.code() == ErrorCode::NotMeanZero;
  }
  out.push_back(check("constant data rejected", rejected, rejected ? "NotMeanZero" : "accepted"));
  const Mesh m64 = build_mesh(d, 64);
  for (double s : {0.0, 0.1, 0.25, 0.4}) {
    const PoincareReport p = poincare_check(m64, s, 100, seed);
    out.push_back(check("Poincare s=" + fmt(s), p.worstRatio <= p.bound && p.worstRatio <= p.sharp + 1e-9,
                        "worst " + fmt(p.worstRatio) + ", 1/lambda_1 " + fmt(p.sharp) + ", C " + fmt(p.bound)));
  }
  return out;
}

std::vector<Verdict> spectrum_suite(unsigned long long seed) {
  std::vector<Verdict> out;
  const Domain d = Domain::interval(0.0, 1.0);
  const Mesh m = build_mesh(d, 64);
  const FormMatrix A = assemble_Es(m, 0.25), M = assemble_mass(m);
  const SpectralResult r = solve_eigs(A, M, 8);
  const auto issues = check_spectrum(r, M);
  out.push_back(check("spectral invariants", issues.empty(), issues.empty() ? "ok" : issues.front()));
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  double worst = std::numeric_limits<double>::infinity();
  for (int t = 0; t < 1000; ++t) {
    Vector u(M.n());
    for (Eigen::Index i = 0; i < u.size(); ++i) u[i] = normal(rng);
    worst = std::min(worst, rayleigh(A, M, project_mean_zero(M, u)));
  }
  out.push_back(check("Rayleigh quotients above lambda_1", worst >= r.eigenvalues[1] - 1e-9,
                      "min " + fmt(worst) + " vs " + fmt(r.eigenvalues[1])));
  double worstMM = std::numeric_limits<double>::infinity();
  for (int t = 0; t < 100; ++t) {
    Matrix B(M.n(), 3);
    for (int c = 0; c < 3; ++c) {
      Vector u(M.n());
      for (Eigen::Index i = 0; i < u.size(); ++i) u[i] = normal(rng);
      B.col(c) = project_mean_zero(M, u);
    }
    worstMM = std::min(worstMM, minmax_upper(A, M, B));
  }
  out.push_back(check("min-max upper bounds above lambda_3", worstMM >= r.eigenvalues[3] - 1e-9,
                      "min " + fmt(worstMM) + " vs " + fmt(r.eigenvalues[3])));
  const Mesh fine = build_mesh(d, 256);
  const SpectralResult r0 = solve_eigs(assemble_Es(fine, 0.0), assemble_mass(fine), 5);
  for (int n = 1; n <= 4; ++n) {
    out.push_back(close("lambda_" + std::to_string(n) + " at s = 0", r0.eigenvalues[n], 2.0 * harmonic(n), 1e-6));
  }
  C1Function lin{[](const Point& x) { return x[0] - 0.5; }, [](const Point&) { return make_point(1.0); }};
  const double bound = c1_subspace_bound({lin}, d, 0.4);
  double lmax = 0.0;
  for (double s : {0.0, 0.1, 0.2, 0.3, 0.4}) lmax = std::max(lmax, solve_eigs(assemble_Es(m, s), M, 2).eigenvalues[1]);
  out.push_back(check("C^1 subspace bound", lmax <= bound, "max lambda_1 " + fmt(lmax) + " <= " + fmt(bound)));
  return out;
}

std::vector<Verdict> asymptotics_suite() {
  std::vector<Verdict> out;
  const Domain d = Domain::interval(0.0, 1.0);
  const SweepResult sw = s_sweep(d, 256, default_sweep_grid(), 3);
  for (auto& v : sweep_verdicts(sw)) out.push_back(std::move(v));
  bool ordered = true;
  for (const auto& r : sw.perS) {
    for (int n = 0; n < 4; ++n) ordered = ordered && r.eigenvalues[n] <= r.eigenvalues[n + 1];
  }
  out.push_back(check("eigenvalue ordering", ordered, ordered ? "ok" : "violated"));
  const std::size_t z = sw.zero_index();
  const double over = (sw.lambda(1, z - 1) - sw.lambda(1, z)) / sw.lambda(1, z);
  out.push_back(check("limsup overshoot at smallest s", over <= 0.02, "overshoot " + fmt(over)));
  int violations = 0;
  for (std::size_t i = 1; i < z; ++i) {
    if (std::abs(sw.lambda(1, i) - sw.lambda(1, z)) > std::abs(sw.lambda(1, i - 1) - sw.lambda(1, z))) ++violations;
  }
  out.push_back(check("eigenvalue gap decreasing along grid", violations <= 1, std::to_string(violations) + " violations"));
  bool trend = true;
  for (std::size_t i = 0; i < z; ++i) {
    for (int n = 1; n <= 3; ++n) {
      trend = trend && sw.mu(n, static_cast<Eigen::Index>(i)) <= sw.mu(n, 0) * (sw.sGrid[i] / sw.sGrid[0]) * 2.0;
    }
  }
  out.push_back(check("mu_{n,s} -> 0 trend", trend, trend ? "ok" : "violated"));
  const double sy[] = {0.01, 0.02, 0.04};
  const double my[] = {3 * 0.01 + 7e-4, 3 * 0.02 + 7 * 4e-4, 3 * 0.04 + 7 * 16e-4};
  out.push_back(close("synthetic curve derivative", derivative_from_curve(sy, my), 3.0, 1e-8));
  const double c0 = c0_recipe({1.0, 0.5}, d, 0.0, 0.0, 1.0);
  out.push_back(close("c0 recipe", c0, std::pow(2.0 * std::numbers::e, 3.0), 1e-12));
  const BoundReport b256 = sup_bound_check(sw, 1);
  const SweepResult coarse = s_sweep(d, 128, default_sweep_grid(), 1);
  const BoundReport b128 = sup_bound_check(coarse, 1);
  out.push_back(check("cone estimate", b256.coneCheck.pass, "worst slack " + fmt(b256.coneCheck.worstSlack)));
  out.push_back(check("sup bound finite and below c0", std::isfinite(b256.maxRatio) && b256.maxRatio <= b256.c0,
                      "max ratio " + fmt(b256.maxRatio) + ", c0 " + fmt(b256.c0)));
  const double stab = std::abs(b256.maxRatio - b128.maxRatio) / b256.maxRatio;
  out.push_back(check("sup bound mesh stable", stab <= 0.1, "relative change " + fmt(stab)));
  const double h = sw.mesh.h;
  const double tg[] = {0.0, h, 2 * h, 4 * h, 8 * h, 0.1, 0.25, 0.5, 1.0};
  const EquicontinuityTable eq = equicontinuity_diagnostic(sw, 1, tg);
  out.push_back(check("modulus of continuity monotone", eq.monotone && eq.supOverS[0] == 0.0,
                      "sup_s omega(4h) = " + fmt(eq.supOverS[3])));
  return out;
}

}  // namespace

std::vector<std::string> suite_names() { return {"kernels", "pointwise", "galerkin", "spectrum", "asymptotics"}; }

std::vector<double> default_sweep_grid() { return {0.4, 0.2, 0.1, 0.05, 0.04, 0.025, 0.02, 0.01, 0.005, 0.0025, 0.0}; }

std::vector<Verdict> run_suite(const std::string& name, unsigned long long seed) {
  if (name == "kernels") return kernels_suite();
  if (name == "pointwise") return pointwise_suite();
  if (name == "galerkin") return galerkin_suite(seed);
  if (name == "spectrum") return spectrum_suite(seed);
  if (name == "asymptotics") return asymptotics_suite();
  throw Error(ErrorCode::InvalidArgument, "unknown suite '" + name + "'");
}

}  // namespace regiospec::verify
