#include "regiospec/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "regiospec/error.hpp"
#include "regiospec/kernels.hpp"
#include "regiospec/parallel.hpp"
#include "regiospec/quadrature.hpp"

namespace regiospec {

namespace {

constexpr double kMaxSweepOrder = 0.4;

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

// Columns of the eigenvector cluster that contains index n.
Matrix cluster_basis(const SpectralResult& r, int n) {
  for (const auto& g : eigenvalue_clusters(r.eigenvalues)) {
    if (std::find(g.begin(), g.end(), n) == g.end()) continue;
    Matrix U(r.eigenvectors.rows(), static_cast<Eigen::Index>(g.size()));
    for (std::size_t j = 0; j < g.size(); ++j) U.col(static_cast<Eigen::Index>(j)) = r.eigenvectors.col(g[j]);
    return U;
  }
  return r.eigenvectors.col(n);
}

}  // namespace

SweepResult s_sweep(const Domain& d, int cells, std::vector<double> sGrid, int nMax) {
  if (sGrid.empty()) throw Error(ErrorCode::InvalidArgument, "empty order grid");
  for (double s : sGrid) {
    if (!(s >= 0.0 && s <= kMaxSweepOrder)) throw Error(ErrorCode::InvalidOrder, "sweep orders must lie in [0, 0.4]");
  }
  std::sort(sGrid.begin(), sGrid.end(), std::greater<>());
  sGrid.erase(std::unique(sGrid.begin(), sGrid.end()), sGrid.end());
  if (sGrid.back() != 0.0) throw Error(ErrorCode::InvalidArgument, "order grid must contain 0");
  if (nMax < 0) throw Error(ErrorCode::InvalidArgument, "nMax must be nonnegative");

  SweepResult sw;
  sw.mesh = build_mesh(d, cells);
  sw.mass = assemble_mass(sw.mesh);
  sw.sGrid = sGrid;
  sw.nMax = nMax;
  const int total = sw.mesh.node_count();
  if (nMax >= total) throw Error(ErrorCode::InvalidArgument, "nMax exceeds the discrete space");
  // A few extra pairs so that clusters at index nMax are complete.
  const int count = std::min(total, nMax + 4);
  sw.perS.resize(sGrid.size());
  parallel_for(sGrid.size(), [&](std::size_t i) {
    const FormMatrix A = assemble_Es(sw.mesh, sGrid[i]);
    sw.perS[i] = solve_eigs(A, sw.mass, count);
  });
  const int N = d.dim();
  sw.mu.resize(nMax + 1, static_cast<Eigen::Index>(sGrid.size()));
  for (std::size_t i = 0; i < sGrid.size(); ++i) {
    const double c = sGrid[i] > 0.0 ? c_frac(N, sGrid[i]) : c_log(N);
    for (int n = 0; n <= nMax; ++n) sw.mu(n, static_cast<Eigen::Index>(i)) = c * sw.perS[i].eigenvalues[n];
  }
  return sw;
}

double derivative_from_curve(std::span<const double> s, std::span<const double> mu) {
  if (s.size() != mu.size()) throw Error(ErrorCode::InvalidArgument, "curve samples differ in length");
  std::vector<std::pair<double, double>> pts;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] > 0.0 && s[i] <= 0.1) pts.emplace_back(s[i], mu[i] / s[i]);
  }
  if (pts.size() < 3) throw Error(ErrorCode::InsufficientGrid, "need three positive orders <= 0.1");
  std::sort(pts.begin(), pts.end());
  std::vector<double> h, v;
  for (std::size_t i = 0; i < 3; ++i) {
    h.push_back(pts[i].first);
    v.push_back(pts[i].second);
  }
  return polynomial_limit_at_zero(h, v);
}

DerivativeReport derivative_at_zero(const SweepResult& sw, int n) {
  if (n < 0 || n > sw.nMax) throw Error(ErrorCode::InvalidArgument, "eigenvalue index out of range");
  std::vector<double> s(sw.sGrid.begin(), sw.sGrid.end());
  std::vector<double> mu(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) mu[i] = sw.mu(n, static_cast<Eigen::Index>(i));
  DerivativeReport r;
  r.value = derivative_from_curve(s, mu);
  r.muZero = sw.mu(n, static_cast<Eigen::Index>(sw.zero_index()));
  r.deviation = std::abs(r.value - r.muZero) / (r.muZero != 0.0 ? std::abs(r.muZero) : 1.0);
  std::vector<double> used;
  for (double v : s) {
    if (v > 0.0 && v <= 0.1) used.push_back(v);
  }
  std::sort(used.begin(), used.end());
  used.resize(3);
  r.sUsed = used;
  return r;
}

std::vector<ConvergenceRow> eigenfunction_convergence(const SweepResult& sw, int n) {
  if (n < 0 || n > sw.nMax) throw Error(ErrorCode::InvalidArgument, "eigenvalue index out of range");
  const SpectralResult& ref = sw.perS[sw.zero_index()];
  const Matrix U0 = cluster_basis(ref, n);
  const Vector v0 = ref.eigenvectors.col(n);
  const Matrix& M = sw.mass.data;
  std::vector<ConvergenceRow> rows;
  for (std::size_t i = 0; i < sw.sGrid.size(); ++i) {
    const SpectralResult& r = sw.perS[i];
    ConvergenceRow row;
    row.s = sw.sGrid[i];
    const double l0 = ref.eigenvalues[n];
    row.relGap = l0 != 0.0 ? std::abs(r.eigenvalues[n] - l0) / std::abs(l0) : std::abs(r.eigenvalues[n]);
    if (i != sw.zero_index()) {
      const Matrix Us = cluster_basis(r, n);
      row.angle = principal_angles(Us, U0, M).maxCoeff();
      // Representative of the s-cluster closest to xi_{n,0}.
      Vector p = Us * (Us.transpose() * (M * v0));
      const double pn = std::sqrt(p.dot(M * p));
      if (pn > 0.0) p /= pn;
      const Vector diff = p - v0;
      row.l2 = std::sqrt(std::max(0.0, diff.dot(M * diff)));
      row.sup = diff.cwiseAbs().maxCoeff();
    }
    rows.push_back(row);
  }
  return rows;
}

double c0_recipe(const ConeParams& cp, const Domain& d, double Vinf, double finf, double uplus2) {
  if (!(Vinf >= 0.0 && finf >= 0.0 && uplus2 >= 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "c0 inputs must be nonnegative");
  }
  // C0 log(delta0 / delta) - Vinf = 1.
  const double delta = cp.delta0 * std::exp(-(1.0 + Vinf) / cp.C0);
  return finf + std::pow(delta, -double(d.dim()) - 2.0) * std::sqrt(measure(d)) * uplus2;
}

double gamma_delta(const Domain& d, const Point& x, double s, double delta) {
  return truncated_self_integral(d, x, s, delta);
}

std::vector<ConeSample> cone_samples(const Domain& d, const ConeParams& cp, std::span<const double> sValues,
                                     int levels) {
  // Points accumulate at the boundary, where the estimate is tightest.
  std::vector<double> unit = {0.0, 1.0, 0.5, 0.25, 0.75, 0.1, 0.9};
  for (int j = 2; j <= 12; j += 2) {
    unit.push_back(std::ldexp(1.0, -j));
    unit.push_back(1.0 - std::ldexp(1.0, -j));
  }
  std::sort(unit.begin(), unit.end());
  std::vector<Point> pts;
  const Point lo = d.lower(), ext = d.extent();
  if (d.dim() == 1) {
    for (double t : unit) pts.push_back(make_point(lo[0] + t * ext[0]));
  } else {
    for (double t1 : unit) {
      for (double t2 : unit) pts.push_back(make_point(lo[0] + t1 * ext[0], lo[1] + t2 * ext[1]));
    }
  }
  std::vector<ConeSample> out;
  for (const Point& x : pts) {
    for (int j = 1; j <= levels; ++j) {
      for (double s : sValues) out.push_back({x, cp.delta0 * std::ldexp(1.0, -j), s});
    }
  }
  return out;
}

ConeCheckResult cone_check(const Domain& d, const ConeParams& cp, std::span<const ConeSample> samples) {
  std::vector<double> slack(samples.size());
  parallel_for(samples.size(), [&](std::size_t i) {
    const ConeSample& c = samples[i];
    slack[i] = gamma_delta(d, c.x, c.s, c.delta) - cp.C0 * std::log(cp.delta0 / c.delta);
  });
  ConeCheckResult r;
  r.samples = samples.size();
  r.worstSlack = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (slack[i] < r.worstSlack) {
      r.worstSlack = slack[i];
      r.worst = samples[i];
    }
  }
  r.pass = samples.empty() || r.worstSlack >= 0.0;
  if (samples.empty()) r.worstSlack = 0.0;
  return r;
}

BoundReport sup_bound_check(const SweepResult& sw, int n) {
  if (n < 0 || n > sw.nMax) throw Error(ErrorCode::InvalidArgument, "eigenvalue index out of range");
  BoundReport b;
  b.n = n;
  double lmax = 0.0;
  for (const auto& r : sw.perS) {
    const Vector v = r.eigenvectors.col(n);
    const double l2 = std::sqrt(v.dot(sw.mass.data * v));
    b.supNorms.push_back(v.cwiseAbs().maxCoeff() / l2);
    lmax = std::max(lmax, r.eigenvalues[n]);
  }
  b.maxRatio = *std::max_element(b.supNorms.begin(), b.supNorms.end());
  // The eigenfunction is a subsolution with potential -lambda and no source.
  const Domain& d = sw.mesh.domain;
  const ConeParams cp = cone_params(d);
  b.c0 = c0_recipe(cp, d, lmax, 0.0, 1.0);
  const double sv[] = {0.0, 0.1, 0.25, 0.4};
  const auto samples = cone_samples(d, cp, sv, 6);
  b.coneCheck = cone_check(d, cp, samples);
  return b;
}

EquicontinuityTable equicontinuity_diagnostic(const SweepResult& sw, int n, std::span<const double> tGrid) {
  if (n < 0 || n > sw.nMax) throw Error(ErrorCode::InvalidArgument, "eigenvalue index out of range");
  EquicontinuityTable t;
  t.tGrid.assign(tGrid.begin(), tGrid.end());
  const auto& nodes = sw.mesh.nodes;
  const std::size_t nn = nodes.size();
  // Pair distances once, then a running max per t.
  std::vector<std::pair<double, std::pair<int, int>>> pairs;
  pairs.reserve(nn * (nn - 1) / 2);
  for (std::size_t i = 0; i < nn; ++i) {
    for (std::size_t j = i + 1; j < nn; ++j) {
      pairs.push_back({(nodes[i] - nodes[j]).norm(), {static_cast<int>(i), static_cast<int>(j)}});
    }
  }
  std::sort(pairs.begin(), pairs.end());
  std::vector<std::size_t> order(tGrid.size());
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return tGrid[a] < tGrid[b]; });

  t.omega = Matrix::Zero(static_cast<Eigen::Index>(sw.sGrid.size()), static_cast<Eigen::Index>(tGrid.size()));
  for (std::size_t i = 0; i < sw.sGrid.size(); ++i) {
    const Vector v = sw.perS[i].eigenvectors.col(n);
    double running = 0.0;
    std::size_t p = 0;
    for (std::size_t k : order) {
      while (p < pairs.size() && pairs[p].first <= tGrid[k] * (1.0 + 1e-12)) {
        running = std::max(running, std::abs(v[pairs[p].second.first] - v[pairs[p].second.second]));
        ++p;
      }
      t.omega(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = running;
    }
  }
  for (std::size_t k = 0; k < tGrid.size(); ++k) t.supOverS.push_back(t.omega.col(static_cast<Eigen::Index>(k)).maxCoeff());
  for (Eigen::Index i = 0; i < t.omega.rows(); ++i) {
    for (std::size_t a = 0; a < tGrid.size(); ++a) {
      for (std::size_t b = 0; b < tGrid.size(); ++b) {
        if (tGrid[a] <= tGrid[b] && t.omega(i, static_cast<Eigen::Index>(a)) > t.omega(i, static_cast<Eigen::Index>(b))) {
          t.monotone = false;
        }
      }
    }
  }
  return t;
}

double poincare_constant(const Domain& d) {
  const double dm = diameter(d);
  const int N = d.dim();
  return 2.0 * std::max(std::pow(dm, N), std::pow(dm, N + 2)) / measure(d);
}

PoincareReport poincare_check(const Mesh& m, double s, int trials, std::uint64_t seed) {
  if (trials < 1) throw Error(ErrorCode::InvalidArgument, "trials must be positive");
  const FormMatrix A = assemble_Es(m, s);
  const FormMatrix M = assemble_mass(m);
  PoincareReport r;
  r.bound = poincare_constant(m.domain);
  const SpectralResult sp = solve_eigs(A, M, 2);
  r.sharp = 1.0 / sp.eigenvalues[1];
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  Vector u(M.n());
  for (int t = 0; t < trials; ++t) {
    for (Eigen::Index i = 0; i < u.size(); ++i) u[i] = normal(rng);
    u = project_mean_zero(M, u);
    r.worstRatio = std::max(r.worstRatio, 1.0 / rayleigh(A, M, u));
  }
  return r;
}

std::vector<Verdict> sweep_verdicts(const SweepResult& sw) {
  std::vector<Verdict> out;
  for (std::size_t i = 0; i < sw.perS.size(); ++i) {
    const auto issues = check_spectrum(sw.perS[i], sw.mass);
    out.push_back({"spectrum invariants s=" + fmt(sw.sGrid[i]), issues.empty(),
                   issues.empty() ? "ok" : issues.front()});
  }
  for (int n = 1; n <= sw.nMax; ++n) {
    const auto rows = eigenfunction_convergence(sw, n);
    const ConvergenceRow& last = rows[rows.size() >= 2 ? rows.size() - 2 : 0];
    out.push_back({"eigenvalue convergence n=" + std::to_string(n), last.relGap <= 0.02,
                   "relative gap " + fmt(last.relGap) + " at s=" + fmt(last.s) + " (limit 0.02)"});
    out.push_back({"eigenspace convergence n=" + std::to_string(n), last.angle <= 0.05,
                   "principal angle " + fmt(last.angle) + " rad at s=" + fmt(last.s) + " (limit 0.05)"});
    const DerivativeReport dr = derivative_at_zero(sw, n);
    out.push_back({"derivative at zero n=" + std::to_string(n), dr.deviation <= 0.05,
                   "limit " + fmt(dr.value) + " vs mu_0 " + fmt(dr.muZero) + ", deviation " + fmt(dr.deviation) +
                       " (limit 0.05)"});
  }
  return out;
}

}  // namespace regiospec
