#include "regiospec/quadrature.hpp"

#include <Eigen/Eigenvalues>
#include <array>
#include <mutex>

#include "regiospec/error.hpp"
#include "regiospec/special.hpp"

namespace regiospec {

namespace {
constexpr int kMaxCachedOrder = 128;
}

const QuadratureRule<double>& gauss_legendre(int n) {
  static std::array<QuadratureRule<double>, kMaxCachedOrder + 1> table;
  static std::array<std::once_flag, kMaxCachedOrder + 1> flags;
  if (n < 1 || n > kMaxCachedOrder) {
    throw Error(ErrorCode::InvalidArgument, "Gauss-Legendre order out of range");
  }
  std::call_once(flags[n], [n] { table[n] = make_gauss_legendre<double>(n); });
  return table[n];
}

QuadratureRule<double> gauss_jacobi01(int n, double beta) {
  if (n < 1 || !(beta > -1.0)) throw Error(ErrorCode::InvalidArgument, "Gauss-Jacobi needs n >= 1, beta > -1");
  // Jacobi weight (1-x)^a (1+x)^b on [-1, 1] with a = 0, b = beta.
  const double a = 0.0, b = beta;
  Matrix jac = Matrix::Zero(n, n);
  jac(0, 0) = (b - a) / (a + b + 2.0);
  for (int k = 1; k < n; ++k) {
    const double t = 2.0 * k + a + b;
    jac(k, k) = (b * b - a * a) / (t * (t + 2.0));
    double beta_k;
    if (k == 1) {
      beta_k = 4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + a + b) * (2.0 + a + b) * (3.0 + a + b));
    } else {
      beta_k = 4.0 * k * (k + a) * (k + b) * (k + a + b) / (t * t * (t + 1.0) * (t - 1.0));
    }
    jac(k, k - 1) = jac(k - 1, k) = std::sqrt(beta_k);
  }
  Eigen::SelfAdjointEigenSolver<Matrix> eig(jac);
  const double mu0 = std::pow(2.0, a + b + 1.0) * lanczos_gamma(a + 1.0) * lanczos_gamma(b + 1.0) /
                     lanczos_gamma(a + b + 2.0);
  QuadratureRule<double> rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const double scale = std::pow(2.0, -beta - 1.0);
  for (int i = 0; i < n; ++i) {
    const double v0 = eig.eigenvectors()(0, i);
    rule.nodes[i] = 0.5 * (1.0 + eig.eigenvalues()[i]);
    rule.weights[i] = scale * mu0 * v0 * v0;
  }
  return rule;
}

Extrapolation richardson_ladder(std::span<const double> values, double ratio, std::span<const double> exponents) {
  const std::size_t L = values.size();
  if (L == 0) throw Error(ErrorCode::InvalidArgument, "empty ladder");
  if (L == 1) return {values[0], std::numeric_limits<double>::infinity()};
  // Table rows m, columns j; only the last two diagonals are kept.
  std::vector<std::vector<double>> t(L);
  for (std::size_t m = 0; m < L; ++m) {
    t[m].push_back(values[m]);
    for (std::size_t j = 1; j <= m; ++j) {
      const double e = exponents[std::min(j - 1, exponents.size() - 1)];
      const double q = std::pow(ratio, e);
      t[m].push_back((t[m][j - 1] - q * t[m - 1][j - 1]) / (1.0 - q));
    }
  }
  const double best = t[L - 1][L - 1];
  const double prev = t[L - 2][L - 2];
  return {best, std::abs(best - prev)};
}

double polynomial_limit_at_zero(std::span<const double> h, std::span<const double> v) {
  const std::size_t n = h.size();
  if (n == 0 || v.size() != n) throw Error(ErrorCode::InvalidArgument, "extrapolation needs matching samples");
  std::vector<double> p(v.begin(), v.end());
  for (std::size_t k = 1; k < n; ++k) {
    for (std::size_t i = 0; i + k < n; ++i) {
      // Neville: P_{i..i+k}(0).
      p[i] = (h[i + k] * p[i] - h[i] * p[i + 1]) / (h[i + k] - h[i]);
    }
  }
  return p[0];
}

}  // namespace regiospec
