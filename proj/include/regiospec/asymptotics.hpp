#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "regiospec/galerkin.hpp"
#include "regiospec/geometry.hpp"
#include "regiospec/spectrum.hpp"

namespace regiospec {

/// Spectra on one fixed mesh across an order grid. sGrid is sorted decreasing
/// and ends with 0; mu(n, i) = c_{N,s_i} lambda_{n,s_i}, and c_N lambda_{n,0} at s = 0.
struct SweepResult {
  Mesh mesh;
  FormMatrix mass;
  std::vector<double> sGrid;
  std::vector<SpectralResult> perS;
  int nMax = 0;
  Matrix mu;  // (nMax + 1) x grid size

  std::size_t zero_index() const { return sGrid.size() - 1; }
  double lambda(int n, std::size_t i) const { return perS[i].eigenvalues[n]; }
};

SweepResult s_sweep(const Domain& d, int cells, std::vector<double> sGrid, int nMax);

struct DerivativeReport {
  double value = 0.0;      // extrapolated limit of mu_{n,s}/s
  double muZero = 0.0;     // mu_{n,0}
  double deviation = 0.0;  // |value - muZero| / |muZero| (absolute when muZero = 0)
  std::vector<double> sUsed;
};

/// Limit at s = 0 of mu(s)/s by polynomial extrapolation through the three
/// smallest positive grid points <= 0.1.
double derivative_from_curve(std::span<const double> s, std::span<const double> mu);

DerivativeReport derivative_at_zero(const SweepResult& sw, int n);

struct ConvergenceRow {
  double s = 0.0;
  double angle = 0.0;    // largest principal angle to the s = 0 cluster
  double l2 = 0.0;       // L^2 distance of the aligned representatives
  double sup = 0.0;      // nodal max distance of the aligned representatives
  double relGap = 0.0;   // |lambda_{n,s} - lambda_{n,0}| / lambda_{n,0}
};

std::vector<ConvergenceRow> eigenfunction_convergence(const SweepResult& sw, int n);

/// Uniform-in-s estimate u <= c0 for subsolutions with potential bound Vinf,
/// source bound finf and ||u^+||_2 = uplus2.
double c0_recipe(const ConeParams& cp, const Domain& d, double Vinf, double finf, double uplus2);

struct ConeSample {
  Point x;
  double delta = 0.0;
  double s = 0.0;
};

struct ConeCheckResult {
  bool pass = false;
  double worstSlack = 0.0;
  ConeSample worst;
  std::size_t samples = 0;
};

/// gamma_{s,delta}(x), the integral of |x - y|^{-N-2s} over the domain minus B_delta(x).
double gamma_delta(const Domain& d, const Point& x, double s, double delta);

/// Boundary-refined points x, delta = delta0 / 2^j (j = 1..levels), s in sValues.
std::vector<ConeSample> cone_samples(const Domain& d, const ConeParams& cp, std::span<const double> sValues,
                                     int levels = 12);

ConeCheckResult cone_check(const Domain& d, const ConeParams& cp, std::span<const ConeSample> samples);

struct BoundReport {
  int n = 0;
  std::vector<double> supNorms;  // ||xi_{n,s}||_inf / ||xi_{n,s}||_2 per grid point
  double maxRatio = 0.0;
  double c0 = 0.0;               // a priori bound from the subsolution estimate
  ConeCheckResult coneCheck;
};

BoundReport sup_bound_check(const SweepResult& sw, int n);

struct EquicontinuityTable {
  std::vector<double> tGrid;
  Matrix omega;                  // rows: grid order of s, cols: t
  std::vector<double> supOverS;  // per t
  bool monotone = true;
};

EquicontinuityTable equicontinuity_diagnostic(const SweepResult& sw, int n, std::span<const double> tGrid);

struct PoincareReport {
  double worstRatio = 0.0;  // max of u'Mu / u'A u over trials
  double bound = 0.0;       // C_Omega = 2 max(d^N, d^{N+2}) / |Omega|
  double sharp = 0.0;       // 1 / lambda_1
};

double poincare_constant(const Domain& d);

PoincareReport poincare_check(const Mesh& m, double s, int trials, std::uint64_t seed = 1);

struct Verdict {
  std::string name;
  bool pass = false;
  std::string detail;
};

/// Convergence and derivative verdicts for eigenvalue indices 1..nMax of a sweep.
std::vector<Verdict> sweep_verdicts(const SweepResult& sw);

}  // namespace regiospec
