#pragma once

// Weighted inner products <f, g> = int_{-1}^{1} f g (1 - x^2)^alpha dx,
// approximated with x = cos t and midpoint nodes t_k = (2k - 1) pi / (2 M):
//   <f, g> ~ (pi / M) sum_k f(x_k) g(x_k) sin^{2 alpha + 1}(t_k).
// For alpha = -1/2 this is Gauss-Chebyshev and exact for polynomial
// integrands of degree <= 2M - 1.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <vector>

#include "specbasis/chebyshev.hpp"
#include "specbasis/errors.hpp"

namespace specbasis {

struct WeightSpec {
  double alpha = -0.5;

  static WeightSpec make(double alpha) {
    if (alpha != -2.5 && alpha != -1.5 && alpha != -0.5 && alpha != 0.0) {
      throw PreconditionError("weight exponent must be one of -5/2, -3/2, -1/2, 0");
    }
    return {alpha};
  }
  static WeightSpec chebyshev() { return {-0.5}; }
  static WeightSpec difference_orthogonal() { return {-1.5}; }
  static WeightSpec quad_orthogonal() { return {-2.5}; }
  static WeightSpec plain_integral() { return {0.0}; }

  friend bool operator==(const WeightSpec&, const WeightSpec&) = default;
};

// Midpoint nodes in t on (0, pi): the Chebyshev roots grid in descending x.
// cos(n t_k) is read from a table indexed by ((2k - 1) n) mod 4M, which keeps
// every sample within an ulp of the exact value for arbitrary n.
class RootsRule {
 public:
  explicit RootsRule(std::size_t m) : m_(m), cos_table_(4 * m), sin_t_(m), x_(m) {
    if (m < 1) throw SizeError("quadrature needs at least one node");
    using std::numbers::pi;
    const double step = pi / (2.0 * static_cast<double>(m));
    for (std::size_t j = 0; j < 4 * m; ++j) cos_table_[j] = std::cos(static_cast<double>(j) * step);
    for (std::size_t k = 0; k < m; ++k) {
      const std::size_t idx = 2 * k + 1;
      x_[k] = cos_table_[idx];
      sin_t_[k] = std::sin(static_cast<double>(idx) * step);
    }
    // Symmetry of the node set.
    for (std::size_t k = 0; k < m / 2; ++k) {
      x_[m - 1 - k] = -x_[k];
      sin_t_[m - 1 - k] = sin_t_[k];
    }
    if (m % 2 == 1) {
      x_[m / 2] = 0.0;
      sin_t_[m / 2] = 1.0;
    }
  }

  std::size_t size() const { return m_; }
  double x(std::size_t k) const { return x_[k]; }
  double sin_t(std::size_t k) const { return sin_t_[k]; }
  const std::vector<double>& nodes() const { return x_; }

  // cos(n t_k) = T_n(x_k)
  double cos_nt(std::size_t n, std::size_t k) const {
    const std::uint64_t idx = (static_cast<std::uint64_t>(2 * k + 1) * n) % (4 * m_);
    return cos_table_[idx];
  }

  // sin(n t_k), via sin(theta) = cos(theta - pi/2).
  double sin_nt(std::size_t n, std::size_t k) const {
    const std::uint64_t period = 4 * m_;
    const std::uint64_t idx = (static_cast<std::uint64_t>(2 * k + 1) * n % period + 3 * m_) % period;
    return cos_table_[idx];
  }

  // Basis function n sampled at node k using product forms that avoid the
  // cancellation in T_{n+2} - T_n and 1 - x^2 near the endpoints:
  //   diff_n(cos t) = -2 sin((n+1) t) sin t,  quad_n(cos t) = sin^2 t cos(n t).
  double basis(const Basis& b, std::size_t n, std::size_t k) const {
    switch (b.kind) {
      case BasisKind::Chebyshev: return cos_nt(n, k);
      case BasisKind::Difference: return -2.0 * sin_nt(n + 1, k) * sin_t_[k];
      case BasisKind::QuadFactor: return sin_t_[k] * sin_t_[k] * cos_nt(n, k);
      case BasisKind::Gegenbauer: return gegenbauer_eval(b.order, n, x_[k]);
    }
    return 0.0;
  }

  // Quadrature weight (pi / M) sin^{2 alpha + 1}(t_k).
  double weight(const WeightSpec& w, std::size_t k) const {
    return std::numbers::pi / static_cast<double>(m_) * sin_power(k, 2.0 * w.alpha + 1.0);
  }

  double sin_power(std::size_t k, double p) const {
    const double s = sin_t_[k];
    if (p == 0.0) return 1.0;
    if (p == std::floor(p) && std::abs(p) <= 8.0) {
      double r = 1.0;
      for (int i = 0; i < static_cast<int>(std::abs(p)); ++i) r *= s;
      return p > 0 ? r : 1.0 / r;
    }
    return std::pow(s, p);
  }

 private:
  std::size_t m_;
  std::vector<double> cos_table_;
  std::vector<double> sin_t_;
  std::vector<double> x_;
};

// Quadrature inner product of two callables double -> double.
template <class F, class G>
double inner_product(F&& f, G&& g, const WeightSpec& w, std::size_t n_col) {
  if (n_col < 1) throw SizeError("N_col must be >= 1");
  const RootsRule rule(n_col);
  double sum = 0.0;
  for (std::size_t k = 0; k < n_col; ++k) {
    const double x = rule.x(k);
    const double term = f(x) * g(x) * rule.weight(w, k);
    if (!std::isfinite(term)) throw NonFiniteError("non-finite integrand sample in inner product");
    sum += term;
  }
  return sum;
}

// Same, but with f and g already sampled on the rule's nodes.
inline double inner_product_samples(const RootsRule& rule, const std::vector<double>& f,
                                    const std::vector<double>& g, const WeightSpec& w) {
  double sum = 0.0;
  for (std::size_t k = 0; k < rule.size(); ++k) {
    const double term = f[k] * g[k] * rule.weight(w, k);
    if (!std::isfinite(term)) throw NonFiniteError("non-finite integrand sample in inner product");
    sum += term;
  }
  return sum;
}

}  // namespace specbasis
