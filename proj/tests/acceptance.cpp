// Acceptance run: one PASS/FAIL line per criterion, with measured values.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "oracles.hpp"
#include "regiospec/asymptotics.hpp"
#include "regiospec/error.hpp"
#include "regiospec/kernels.hpp"
#include "regiospec/pointwise.hpp"
#include "regiospec/test_functions.hpp"

using namespace regiospec;

namespace {

const Domain unit = Domain::interval(0.0, 1.0);

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  std::string failures;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      failures += (failures.empty() ? "" : ", ") + what;
    }
  }
};

bool criterion(int id, const std::string& title, double limitSeconds, const std::function<void(Outcome&)>& body) {
  Outcome o;
  o.detail.precision(4);
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(o);
  } catch (const Error& e) {
    o.require(false, std::string("error ") + e.what());
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (limitSeconds > 0.0) o.require(secs < limitSeconds, "runtime limit " + std::to_string(limitSeconds) + " s");
  std::string detail = o.detail.str();
  if (!o.failures.empty()) detail += " | failed: " + o.failures;
  std::printf("%s  %2d  %-28s %7.2f s  %s\n", o.pass ? "PASS" : "FAIL", id, title.c_str(), secs, detail.c_str());
  std::fflush(stdout);
  return o.pass;
}

bool structurally_sound(const FormMatrix& A) {
  if (!check_form(A).empty()) return false;
  return (A.data * Vector::Ones(A.n())).cwiseAbs().maxCoeff() <= 1e-10;
}

int run_cli_args(std::vector<std::string> args) {
  args.insert(args.begin(), "regiospec");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  return run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
}

std::string slurp(const std::string& p) {
  std::ifstream f(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(f), {}};
}

}  // namespace

int main() {
  bool all = true;

  all &= criterion(1, "constant identities", 1.0, [](Outcome& o) {
    const double e1 = std::abs(c_frac(1, 0.5) - 1.0 / std::numbers::pi);
    const double e2 = std::abs(c_log(1) - 1.0);
    double forms = 0.0;
    for (int N = 1; N <= 3; ++N)
      for (int i = 0; i <= 100; ++i) {
        const double s = std::exp(std::log(1e-6) + (std::log1p(-1e-6) - std::log(1e-6)) * i / 100.0);
        forms = std::max(forms, std::abs(c_frac(N, s) / c_frac_alt(N, s) - 1.0));
      }
    o.detail << "|c_frac(1,1/2)-1/pi| " << e1 << ", |c_log(1)-1| " << e2 << ", forms " << forms;
    o.require(e1 <= 1e-12 && e2 <= 1e-12, "identities");
    o.require(forms <= 1e-13, "algebraic forms");
  });

  all &= criterion(2, "series expansion", 30.0, [](Outcome& o) {
    double worst = 0.0;
    int increases = 0;
    for (const char* name : {"identity", "poly2", "cospi"}) {
      const ScalarField u = test_function(name, unit);
      for (double x : {0.1, 0.3, 0.5, 0.7}) {
        for (double s : {0.05, 0.1, 0.2}) {
          const EvalResult full = eval_Ds(u, unit, make_point(x), s);
          double prev = INFINITY;
          for (int j = 1; j <= 6; ++j) {
            const EvalResult part = series_partial(u, unit, make_point(x), s, j);
            const double budget = full.errEstimate + part.errEstimate;
            const double res = std::abs(full.value - part.value);
            worst = std::max(worst, res / (u.holderSeminorm * tail_bound({1.0, 1.0, u.holderSeminorm}, s, j) + budget));
            if (res > prev + budget) ++increases;
            prev = res;
          }
        }
      }
    }
    o.detail << "worst residual/bound " << worst << ", increases in j " << increases;
    o.require(worst <= 1.0, "enclosure");
    o.require(increases == 0, "decrease in j");
  });

  all &= criterion(3, "decomposition identity", 10.0, [](Outcome& o) {
    const ScalarField b = test_function("bump", unit);
    auto u = [&](double y) { return b(make_point(y)); };
    const double s = 0.3;
    double worst = 0.0;
    for (double x : {0.3, 0.35, 0.42, 0.5, 0.61, 0.7}) {
      const double regional = eval_regional_fraclap(b, unit, make_point(x), s).value;
      const double full = c_frac(1, s) * oracle::fullspace_1d(u, 0.25, 0.75, x, s);
      const double rhs = full - eval_kappa(unit, make_point(x), s) * u(x);
      worst = std::max(worst, std::abs(regional - rhs) / std::abs(rhs));
    }
    o.detail << "max relative error " << worst;
    o.require(worst <= 1e-5, "relative error");
  });

  all &= criterion(4, "Galerkin oracle", 60.0, [](Outcome& o) {
    double worst = 0.0;
    bool sound = true;
    const Mesh m8 = build_mesh(unit, 8);
    for (double s : {0.0, 0.25}) {
      const FormMatrix A = assemble_Es(m8, s);
      const Matrix B = oracle::stiffness_1d(8, s);
      for (Eigen::Index i = 0; i < B.rows(); ++i)
        for (Eigen::Index j = 0; j < B.cols(); ++j)
          worst = std::max(worst, std::abs(A.data(i, j) - B(i, j)) / std::abs(B(i, j)));
      sound = sound && structurally_sound(A);
    }
    for (const Mesh& m : {build_mesh(unit, 256), build_mesh(Domain::rectangle(0, 1, 0, 1), 8)}) {
      for (double s : {0.0, 0.1, 0.25, 0.4, 0.9}) sound = sound && structurally_sound(assemble_Es(m, s));
    }
    o.detail << "max entry relative error " << worst << ", symmetry/PSD/row sums " << (sound ? "ok" : "violated");
    o.require(worst <= 1e-6, "oracle agreement");
    o.require(sound, "structure");
  });

  all &= criterion(5, "spectrum basics", 60.0, [](Outcome& o) {
    const Mesh m = build_mesh(unit, 256);
    const FormMatrix A = assemble_Es(m, 0.25), M = assemble_mass(m);
    const SpectralResult r = solve_eigs(A, M, 6);
    const Vector v0 = r.eigenvectors.col(0);
    const double constDev = (v0.array() / v0.mean() - 1.0).abs().maxCoeff();
    bool ascending = true;
    for (Eigen::Index k = 1; k < r.count(); ++k) ascending = ascending && r.eigenvalues[k] >= r.eigenvalues[k - 1];
    std::mt19937_64 rng(2024);
    std::normal_distribution<double> g;
    auto draw = [&] {
      Vector v(M.n());
      for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = g(rng);
      return project_mean_zero(M, v);
    };
    double minRq = INFINITY, minMm = INFINITY;
    for (int t = 0; t < 1000; ++t) minRq = std::min(minRq, rayleigh(A, M, draw()));
    for (int t = 0; t < 100; ++t) {
      Matrix B(M.n(), 3);
      for (int c = 0; c < 3; ++c) B.col(c) = draw();
      minMm = std::min(minMm, minmax_upper(A, M, B));
    }
    o.detail << "lambda_0 " << r.eigenvalues[0] << ", min Rayleigh " << minRq << " vs lambda_1 " << r.eigenvalues[1]
             << ", min min-max " << minMm << " vs lambda_3 " << r.eigenvalues[3];
    o.require(std::abs(r.eigenvalues[0]) <= 1e-10 && constDev <= 1e-8, "zero eigenvalue");
    o.require(ascending, "ordering");
    o.require(minRq >= r.eigenvalues[1] - 1e-9, "Rayleigh minimality");
    o.require(minMm >= r.eigenvalues[3] - 1e-9, "min-max");
  });

  all &= criterion(6, "convergence in s", 300.0, [](Outcome& o) {
    const SweepResult sw = s_sweep(unit, 256, {0.4, 0.2, 0.1, 0.05, 0.025, 0.0}, 3);
    for (int n = 1; n <= 3; ++n) {
      const auto rows = eigenfunction_convergence(sw, n);
      const ConvergenceRow& r = rows[rows.size() - 2];
      o.detail << "n=" << n << ": gap " << r.relGap << ", angle " << r.angle << (n < 3 ? "; " : "");
      o.require(r.relGap <= 0.02, "eigenvalue gap n=" + std::to_string(n));
      o.require(r.angle <= 0.05, "principal angle n=" + std::to_string(n));
    }
  });

  all &= criterion(7, "derivative at zero", 180.0, [](Outcome& o) {
    const SweepResult sw = s_sweep(unit, 256, {0.04, 0.02, 0.01, 0.0}, 3);
    for (int n = 1; n <= 3; ++n) {
      const DerivativeReport d = derivative_at_zero(sw, n);
      o.detail << "n=" << n << " deviation " << d.deviation << "; ";
      o.require(d.deviation <= 0.05, "deviation n=" + std::to_string(n));
    }
    const double s[] = {0.01, 0.02, 0.04};
    const double mu[] = {3 * 0.01 + 7 * 1e-4, 3 * 0.02 + 7 * 4e-4, 3 * 0.04 + 7 * 16e-4};
    const double err = std::abs(derivative_from_curve(s, mu) - 3.0);
    o.detail << "synthetic error " << err;
    o.require(err <= 1e-8, "synthetic curve");
  });

  all &= criterion(8, "uniform bounds", 120.0, [](Outcome& o) {
    bool cone = true;
    double slack = INFINITY;
    const double sv[] = {0.0, 0.1, 0.25, 0.4};
    for (const Domain& d : {unit, Domain::rectangle(0, 1, 0, 1)}) {
      const ConeParams cp = cone_params(d);
      const ConeCheckResult c = cone_check(d, cp, cone_samples(d, cp, sv));
      cone = cone && c.pass;
      slack = std::min(slack, c.worstSlack);
    }
    double poincare = 0.0;
    const Mesh m64 = build_mesh(unit, 64);
    for (double s : {0.0, 0.1, 0.25, 0.4}) poincare = std::max(poincare, poincare_check(m64, s, 100, 17).worstRatio);
    const std::vector<double> grid = {0.4, 0.2, 0.1, 0.05, 0.025, 0.0};
    const BoundReport fine = sup_bound_check(s_sweep(unit, 256, grid, 1), 1);
    const BoundReport coarse = sup_bound_check(s_sweep(unit, 128, grid, 1), 1);
    const double change = std::abs(fine.maxRatio - coarse.maxRatio) / fine.maxRatio;
    o.detail << "cone slack " << slack << ", Poincare worst " << poincare << " (C = 2), sup ratio " << fine.maxRatio
             << " change " << change;
    o.require(cone && slack >= 0.0, "cone estimate");
    o.require(poincare <= 2.0, "Poincare");
    o.require(std::isfinite(fine.maxRatio) && change <= 0.1, "sup bound");
  });

  all &= criterion(9, "Poisson solver", 10.0, [](Outcome& o) {
    const Mesh m = build_mesh(unit, 128);
    const FormMatrix A = assemble_Es(m, 0.25), M = assemble_mass(m);
    const SpectralResult r = solve_eigs(A, M, 2);
    const Vector xi = r.eigenvectors.col(1);
    const double err = (solve_poisson(A, M, xi) - xi / r.eigenvalues[1]).cwiseAbs().maxCoeff();
    bool rejected = false;
    try {
      solve_poisson(A, M, Vector::Ones(M.n()));
    } catch (const Error& e) {
      rejected = e.code() == ErrorCode::NotMeanZero;
    }
    o.detail << "eigenfunction error " << err << ", constant data " << (rejected ? "NotMeanZero" : "accepted");
    o.require(err <= 1e-8, "eigenfunction data");
    o.require(rejected, "constant data");
  });

  all &= criterion(10, "determinism", 0.0, [](Outcome& o) {
    const auto dir = std::filesystem::temp_directory_path() / "regiospec_acceptance";
    std::filesystem::create_directories(dir);
    const std::string a = (dir / "a").string(), b = (dir / "b").string();
    for (const auto& p : {a, b}) run_cli_args({"--deterministic", "sweep", "--cells", "128", "--out", p});
    const bool same = slurp(a + ".csv") == slurp(b + ".csv") && slurp(a + ".json") == slurp(b + ".json") &&
                      !slurp(a + ".csv").empty();
    std::filesystem::remove_all(dir);
    o.detail << "sweep outputs " << (same ? "byte-identical" : "differ");
    o.require(same, "byte-identical output");
  });

  return all ? 0 : 1;
}
