#pragma once

// Chebyshev and normalized Gegenbauer polynomials, the two Dirichlet-enforcing
// recombined bases, interpolation grids, and endpoint-derivative formulas.
//
// Conventions used throughout the library:
//   u(x)    = sum_n a_n T_n(x)                  (plain a_0, no factor 2)
//   diff_n  = T_{n+2}(x) - T_n(x)               (vanishes at x = +-1)
//   quad_n  = (1 - x^2) T_n(x)                  (vanishes at x = +-1)
//   Ĉ_n^m   = Gegenbauer of order m with Ĉ_n^m(1) = 1

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "specbasis/errors.hpp"

namespace specbasis {

enum class BasisKind { Chebyshev, Difference, QuadFactor, Gegenbauer };

struct Basis {
  BasisKind kind = BasisKind::Chebyshev;
  unsigned order = 0;  // Gegenbauer order m >= 1; unused otherwise

  static constexpr Basis chebyshev() { return {BasisKind::Chebyshev, 0}; }
  static constexpr Basis difference() { return {BasisKind::Difference, 0}; }
  static constexpr Basis quad_factor() { return {BasisKind::QuadFactor, 0}; }
  static Basis gegenbauer(unsigned m) {
    if (m < 1) throw BasisError("Gegenbauer order must be >= 1");
    return {BasisKind::Gegenbauer, m};
  }

  bool constrained() const {
    return kind == BasisKind::Difference || kind == BasisKind::QuadFactor;
  }

  std::string name() const {
    switch (kind) {
      case BasisKind::Chebyshev: return "chebyshev";
      case BasisKind::Difference: return "difference";
      case BasisKind::QuadFactor: return "quadfactor";
      case BasisKind::Gegenbauer: return "gegenbauer" + std::to_string(order);
    }
    return "unknown";
  }

  friend bool operator==(const Basis&, const Basis&) = default;
};

inline Basis parse_basis(std::string_view s) {
  if (s == "chebyshev" || s == "cheb") return Basis::chebyshev();
  if (s == "difference" || s == "diff") return Basis::difference();
  if (s == "quadfactor" || s == "quad") return Basis::quad_factor();
  if (s.starts_with("gegenbauer") && s.size() > 10) {
    const int m = std::stoi(std::string(s.substr(10)));
    if (m < 1) throw BasisError("bad Gegenbauer order in '" + std::string(s) + "'");
    return Basis::gegenbauer(static_cast<unsigned>(m));
  }
  throw BasisError("unknown basis '" + std::string(s) + "'");
}

// Finite coefficient sequence tagged with its basis. Index i is the basis
// index, which for the recombined bases is not the polynomial degree.
class CoefficientVector {
 public:
  CoefficientVector(Basis basis, std::vector<double> values)
      : basis_(basis), values_(std::move(values)) {
    if (values_.empty()) throw SizeError("coefficient vector must be non-empty");
    for (double v : values_) {
      if (!std::isfinite(v)) throw NonFiniteError("non-finite coefficient");
    }
  }

  const Basis& basis() const { return basis_; }
  std::span<const double> values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  // Out-of-range indices read as zero; transforms rely on this.
  double at_or_zero(std::size_t i) const { return i < values_.size() ? values_[i] : 0.0; }

  CoefficientVector relabel(Basis b) const { return {b, values_}; }

 private:
  Basis basis_;
  std::vector<double> values_;
};

enum class GridKind { Roots, Lobatto };

inline std::string grid_name(GridKind k) { return k == GridKind::Roots ? "roots" : "lobatto"; }

inline GridKind parse_grid(std::string_view s) {
  if (s == "roots") return GridKind::Roots;
  if (s == "lobatto") return GridKind::Lobatto;
  throw std::invalid_argument("unknown grid '" + std::string(s) + "'");
}

struct Grid {
  GridKind kind;
  std::vector<double> nodes;  // ascending
  std::size_t size() const { return nodes.size(); }
};

inline Grid make_grid(GridKind kind, std::size_t n) {
  using std::numbers::pi;
  Grid g{kind, std::vector<double>(n)};
  if (kind == GridKind::Roots) {
    if (n < 1) throw SizeError("roots grid needs at least 1 point");
    for (std::size_t k = 1; k <= n; ++k) {
      g.nodes[k - 1] = -std::cos(static_cast<double>(2 * k - 1) * pi / (2.0 * static_cast<double>(n)));
    }
    // cos(pi/2) is not exactly zero in binary64.
    if (n % 2 == 1) g.nodes[n / 2] = 0.0;
  } else {
    if (n < 2) throw SizeError("Lobatto grid needs at least 2 points");
    for (std::size_t k = 1; k <= n; ++k) {
      g.nodes[k - 1] = -std::cos(static_cast<double>(k - 1) * pi / static_cast<double>(n - 1));
    }
    g.nodes.front() = -1.0;
    g.nodes.back() = 1.0;
    if (n % 2 == 1) g.nodes[n / 2] = 0.0;
  }
  // Mirror so the node set is exactly symmetric about the origin.
  for (std::size_t k = 0; k < n / 2; ++k) g.nodes[n - 1 - k] = -g.nodes[k];
  return g;
}

namespace detail {
inline void check_unit_interval(double x) {
  if (!(std::abs(x) <= 1.0)) throw DomainError("x outside [-1, 1]");
}
}  // namespace detail

// T_n(x). cos(n arccos x) away from the endpoints, three-term recurrence
// near them where arccos loses accuracy.
inline double chebyshev_t(std::size_t n, double x) {
  detail::check_unit_interval(x);
  if (n == 0) return 1.0;
  if (n == 1) return x;
  if (std::abs(x) <= 0.999) return std::cos(static_cast<double>(n) * std::acos(x));
  double t0 = 1.0, t1 = x;
  for (std::size_t k = 2; k <= n; ++k) {
    const double t2 = 2.0 * x * t1 - t0;
    t0 = t1;
    t1 = t2;
  }
  return t1;
}

// d^k T_n / dx^k at x = 1:  prod_{j<k} (n^2 - j^2) / (2j + 1).
inline double endpoint_deriv(std::size_t n, std::size_t k) {
  double p = 1.0;
  const double n2 = static_cast<double>(n) * static_cast<double>(n);
  for (std::size_t j = 0; j < k; ++j) {
    const double jj = static_cast<double>(j);
    p *= (n2 - jj * jj) / (2.0 * jj + 1.0);
  }
  return p;
}

// All derivatives d^j T_k/dx^j for j = 0..m, k = 0..n_max at a single x,
// from the differentiated recurrence
//   T_{k+1}^{(j)} = 2x T_k^{(j)} + 2j T_k^{(j-1)} - T_{k-1}^{(j)}.
// Returns row-major [j][k].
inline std::vector<double> chebyshev_derivatives(std::size_t m, std::size_t n_max, double x) {
  const std::size_t w = n_max + 1;
  std::vector<double> d((m + 1) * w, 0.0);
  auto at = [&](std::size_t j, std::size_t k) -> double& { return d[j * w + k]; };
  at(0, 0) = 1.0;
  if (n_max >= 1) {
    at(0, 1) = x;
    if (m >= 1) at(1, 1) = 1.0;
  }
  for (std::size_t k = 1; k < n_max; ++k) {
    for (std::size_t j = 0; j <= m; ++j) {
      double v = 2.0 * x * at(j, k) - at(j, k - 1);
      if (j > 0) v += 2.0 * static_cast<double>(j) * at(j - 1, k);
      at(j, k + 1) = v;
    }
  }
  return d;
}

// Ĉ_n^m(x) = T_{n+m}^{(m)}(x) / T_{n+m}^{(m)}(1), so Ĉ_n^m(1) = 1.
inline double gegenbauer_eval(unsigned m, std::size_t n, double x) {
  if (m < 1) throw BasisError("Gegenbauer order must be >= 1");
  detail::check_unit_interval(x);
  if (n == 0) return 1.0;
  const std::size_t deg = n + m;
  const auto d = chebyshev_derivatives(m, deg, x);
  return d[m * (deg + 1) + deg] / endpoint_deriv(deg, m);
}

inline double basis_eval(const Basis& basis, std::size_t n, double x) {
  detail::check_unit_interval(x);
  switch (basis.kind) {
    case BasisKind::Chebyshev:
      return chebyshev_t(n, x);
    case BasisKind::Difference:
      return chebyshev_t(n + 2, x) - chebyshev_t(n, x);
    case BasisKind::QuadFactor:
      return (1.0 - x) * (1.0 + x) * chebyshev_t(n, x);
    case BasisKind::Gegenbauer:
      return gegenbauer_eval(basis.order, n, x);
  }
  return 0.0;
}

// d(basis_n)/dx at x = +1.
inline double basis_endpoint_slope(const Basis& basis, std::size_t n) {
  const double nd = static_cast<double>(n);
  switch (basis.kind) {
    case BasisKind::Chebyshev:
      return nd * nd;
    case BasisKind::Difference:
      return 4.0 * nd + 4.0;
    case BasisKind::QuadFactor:
      return -2.0;
    case BasisKind::Gegenbauer:
      if (n == 0) return 0.0;
      return endpoint_deriv(n + basis.order, basis.order + 1) /
             endpoint_deriv(n + basis.order, basis.order);
  }
  return 0.0;
}

// Clenshaw summation of sum_n a_n T_n(x).
inline double clenshaw(std::span<const double> a, double x) {
  detail::check_unit_interval(x);
  double b1 = 0.0, b2 = 0.0;
  for (std::size_t k = a.size(); k-- > 1;) {
    const double b0 = 2.0 * x * b1 - b2 + a[k];
    b2 = b1;
    b1 = b0;
  }
  const double a0 = a.empty() ? 0.0 : a[0];
  return x * b1 - b2 + a0;
}

// Derivative coefficients: returns c with sum c_n T_n = d/dx sum a_n T_n.
inline std::vector<double> chebyshev_derivative_coeffs(std::span<const double> a) {
  const std::size_t n = a.size();
  if (n <= 1) return {0.0};
  std::vector<double> c(n - 1, 0.0);
  // c_{k-1} = c_{k+1} + 2k a_k, then halve c_0.
  for (std::size_t k = n - 1; k >= 1; --k) {
    const double next = (k + 1 < n - 1) ? c[k + 1] : 0.0;
    c[k - 1] = next + 2.0 * static_cast<double>(k) * a[k];
  }
  c[0] *= 0.5;
  return c;
}

// Exact derivatives at the endpoints of sum a_n T_n:
//   u'(1) = sum a_n n^2,  u'(-1) = sum a_n (-1)^{n+1} n^2.
inline double chebyshev_slope_at_plus_one(std::span<const double> a) {
  double s = 0.0;
  for (std::size_t n = 0; n < a.size(); ++n) s += a[n] * static_cast<double>(n * n);
  return s;
}

inline double chebyshev_slope_at_minus_one(std::span<const double> a) {
  double s = 0.0;
  for (std::size_t n = 0; n < a.size(); ++n) {
    const double sign = (n % 2 == 0) ? -1.0 : 1.0;
    s += sign * a[n] * static_cast<double>(n * n);
  }
  return s;
}

}  // namespace specbasis
