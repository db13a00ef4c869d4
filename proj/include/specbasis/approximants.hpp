#pragma once

// Degree-limited approximations of a SingularFunction by series truncation,
// interpolation, and least squares.
//
// Throughout, N is the number of basis functions. The polynomial degree is
// N - 1 in the Chebyshev basis and N + 1 in the difference and quad-factor
// bases.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "specbasis/chebyshev.hpp"
#include "specbasis/errors.hpp"
#include "specbasis/linalg.hpp"
#include "specbasis/quadrature.hpp"
#include "specbasis/singular_function.hpp"
#include "specbasis/transforms.hpp"

namespace specbasis {

enum class Method { Truncation, Interpolation, LeastSquares, LagrangeLS };

inline std::string method_name(Method m) {
  switch (m) {
    case Method::Truncation: return "truncation";
    case Method::Interpolation: return "interpolation";
    case Method::LeastSquares: return "leastsquares";
    case Method::LagrangeLS: return "lagrange";
  }
  return "unknown";
}

inline Method parse_method(std::string_view s) {
  if (s == "truncation" || s == "trunc") return Method::Truncation;
  if (s == "interpolation" || s == "interp") return Method::Interpolation;
  if (s == "leastsquares" || s == "ls") return Method::LeastSquares;
  if (s == "lagrange" || s == "lagrangels") return Method::LagrangeLS;
  throw std::invalid_argument("unknown method '" + std::string(s) + "'");
}

// Gram solves above this 2-norm condition estimate are refused.
inline constexpr double kMaxGramCondition = 1e12;

struct ApproximantMeta {
  std::size_t n_basis = 0;
  std::optional<GridKind> grid;
  std::optional<std::size_t> grid_points;
  std::optional<std::size_t> n_col;
  std::optional<WeightSpec> weight;
  std::optional<std::size_t> m_ref;
  std::optional<double> condition;
  std::optional<double> lambda;  // Lagrange multiplier, even constraint
  std::optional<double> mu;      // Lagrange multiplier, odd constraint
};

class Approximant {
 public:
  Approximant(Method method, CoefficientVector coeffs, ApproximantMeta meta)
      : method_(method), coeffs_(std::move(coeffs)), meta_(std::move(meta)) {
    if (coeffs_.basis().kind != BasisKind::Gegenbauer) {
      const auto a = to_chebyshev(coeffs_);
      cheb_.assign(a.values().begin(), a.values().end());
    }
  }

  const Basis& basis() const { return coeffs_.basis(); }
  Method method() const { return method_; }
  const CoefficientVector& coeffs() const { return coeffs_; }
  const ApproximantMeta& meta() const { return meta_; }

  // Chebyshev coefficients of the same polynomial.
  CoefficientVector chebyshev() const {
    if (cheb_.empty()) throw BasisError("Gegenbauer approximants have no cached Chebyshev form");
    return {Basis::chebyshev(), cheb_};
  }

  double operator()(double x) const {
    detail::check_unit_interval(x);
    // The recombined bases vanish identically at the endpoints.
    if (basis().constrained() && std::abs(x) == 1.0) return 0.0;
    if (cheb_.empty()) return clenshaw_eval(coeffs_, x);
    return clenshaw(cheb_, x);
  }

  double slope_at_plus_one() const { return chebyshev_slope_at_plus_one(cheb_); }
  double slope_at_minus_one() const { return chebyshev_slope_at_minus_one(cheb_); }

 private:
  Method method_;
  CoefficientVector coeffs_;
  ApproximantMeta meta_;
  std::vector<double> cheb_;
};

// Chebyshev coefficients from samples on the M-point roots rule:
//   a_n = (2/M) sum_k f(x_k) T_n(x_k),  a_0 halved.
inline std::vector<double> chebyshev_from_samples(const RootsRule& rule, const std::vector<double>& fx,
                                                  std::size_t n) {
  if (n < 1) throw SizeError("chebyshev projection needs at least one coefficient");
  const std::size_t m = rule.size();
  std::vector<double> a(n, 0.0);
  const double scale = 2.0 / static_cast<double>(m);
  for (std::size_t j = 0; j < n; ++j) {
    double s = 0.0;
    for (std::size_t k = 0; k < m; ++k) s += fx[k] * rule.cos_nt(j, k);
    a[j] = scale * s;
  }
  a[0] *= 0.5;
  return a;
}

// Projection of a callable by M-point Gauss-Chebyshev quadrature. With M
// equal to the number of coefficients this is roots-grid interpolation.
template <class F>
std::vector<double> chebyshev_projection(F&& f, std::size_t n, std::size_t m) {
  const RootsRule rule(m);
  std::vector<double> fx(m);
  for (std::size_t k = 0; k < m; ++k) {
    fx[k] = f(rule.x(k));
    if (!std::isfinite(fx[k])) throw NonFiniteError("non-finite function sample in projection");
  }
  return chebyshev_from_samples(rule, fx, n);
}

// Coefficients in the order-m normalized Gegenbauer basis (weight
// (1 - x^2)^{m - 1/2}), by M-point midpoint quadrature in t, which is exact
// for the norms whenever M > n + m.
template <class F>
std::vector<double> gegenbauer_projection(F&& f, unsigned order, std::size_t n, std::size_t m) {
  if (order < 1) throw BasisError("Gegenbauer order must be >= 1");
  const RootsRule rule(m);
  const std::size_t deg = n - 1 + order;
  std::vector<double> num(n, 0.0), den(n, 0.0), norm(n);
  for (std::size_t j = 0; j < n; ++j) norm[j] = endpoint_deriv(j + order, order);
  for (std::size_t k = 0; k < m; ++k) {
    const double x = rule.x(k);
    const double w = rule.sin_power(k, 2.0 * order);
    const double fx = f(x);
    if (!std::isfinite(fx)) throw NonFiniteError("non-finite function sample in projection");
    const auto d = chebyshev_derivatives(order, deg, x);
    for (std::size_t j = 0; j < n; ++j) {
      const double c = d[order * (deg + 1) + j + order] / norm[j];
      num[j] += w * fx * c;
      den[j] += w * c * c;
    }
  }
  std::vector<double> out(n);
  for (std::size_t j = 0; j < n; ++j) out[j] = num[j] / den[j];
  return out;
}

inline std::size_t default_m_ref(std::size_t n) { return 8 * n; }

// Coefficients of the infinite series, by projection with M_ref >> N nodes.
//   Chebyshev:    a_n of u
//   Difference:   b_from_a of the reference a
//   QuadFactor:   Chebyshev coefficients of v
//   Gegenbauer m: Gegenbauer-m coefficients of v
inline CoefficientVector reference_coeffs(const SingularFunction& f, const Basis& basis, std::size_t n,
                                          std::size_t m_ref = 0) {
  if (n < 1) throw SizeError("reference_coeffs: N must be >= 1");
  if (m_ref == 0) m_ref = default_m_ref(n);
  if (m_ref < n) throw PreconditionError("reference_coeffs: M_ref must be >= N");
  auto u = [&f](double x) { return f.u(x); };
  auto v = [&f](double x) { return f.v(x); };
  switch (basis.kind) {
    case BasisKind::Chebyshev:
      return {basis, chebyshev_projection(u, n, m_ref)};
    case BasisKind::Difference:
      return b_from_a(CoefficientVector(Basis::chebyshev(), chebyshev_projection(u, n, m_ref)), n);
    case BasisKind::QuadFactor:
      return {basis, chebyshev_projection(v, n, m_ref)};
    case BasisKind::Gegenbauer:
      return {basis, gegenbauer_projection(v, basis.order, n, m_ref)};
  }
  throw BasisError("reference_coeffs: unsupported basis");
}

inline Approximant truncate(const SingularFunction& f, const Basis& basis, std::size_t n, std::size_t m_ref = 0) {
  if (m_ref == 0) m_ref = default_m_ref(n);
  ApproximantMeta meta;
  meta.n_basis = n;
  meta.m_ref = m_ref;
  return {Method::Truncation, reference_coeffs(f, basis, n, m_ref), meta};
}

namespace detail {

// Chebyshev interpolant on the n-point Lobatto grid (DCT-I).
inline std::vector<double> lobatto_chebyshev(const SingularFunction& f, std::size_t n) {
  const std::size_t p = n - 1;
  std::vector<double> table(2 * p);
  for (std::size_t i = 0; i < 2 * p; ++i) table[i] = std::cos(static_cast<double>(i) * std::numbers::pi / static_cast<double>(p));
  std::vector<double> fx(n);
  for (std::size_t j = 0; j < n; ++j) {
    double x = table[j];
    if (j == 0) x = 1.0;
    if (j == p) x = -1.0;
    if (2 * j == p) x = 0.0;
    fx[j] = f.u(x);
  }
  std::vector<double> a(n, 0.0);
  for (std::size_t m = 0; m < n; ++m) {
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double w = (j == 0 || j == p) ? 0.5 : 1.0;
      s += w * fx[j] * table[(m * j) % (2 * p)];
    }
    a[m] = 2.0 * s / static_cast<double>(p);
  }
  a[0] *= 0.5;
  a[p] *= 0.5;
  return a;
}

// Difference-basis interpolant with n basis functions through the n interior
// nodes of the (n + 2)-point Lobatto grid, theta_k = k pi / (n + 1). Since
// diff_j(cos t) = -2 sin t sin((j+1) t), discrete sine orthogonality gives
//   b_j = -(1/(n+1)) sum_k [u(x_k) / sin(theta_k)] sin((j+1) theta_k).
inline std::vector<double> lobatto_difference(const SingularFunction& f, std::size_t n) {
  const std::size_t q = n + 1;
  const std::size_t period = 2 * q;
  std::vector<double> sin_table(period);
  for (std::size_t i = 0; i < period; ++i) sin_table[i] = std::sin(static_cast<double>(i) * std::numbers::pi / static_cast<double>(q));
  std::vector<double> g(n + 1, 0.0);  // g[k] = u(x_k)/sin(theta_k), k = 1..n
  for (std::size_t k = 1; k <= n; ++k) {
    double x = std::cos(static_cast<double>(k) * std::numbers::pi / static_cast<double>(q));
    if (2 * k == q) x = 0.0;
    if (2 * k > q) x = -std::cos(static_cast<double>(q - k) * std::numbers::pi / static_cast<double>(q));
    const double s = sin_table[k];
    g[k] = f.u(x) / s;
  }
  std::vector<double> b(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    double s = 0.0;
    for (std::size_t k = 1; k <= n; ++k) s += g[k] * sin_table[((j + 1) * k) % period];
    b[j] = -s / static_cast<double>(q);
  }
  return b;
}

}  // namespace detail

// Interpolation with N basis functions.
//   Roots grid, Chebyshev: N-point interpolant, degree N - 1.
//   Roots grid, constrained: u = (1 - x^2) v_I with v_I the N-point Chebyshev
//     interpolant of v; c = its coefficients, b from the c -> b relations.
//   Lobatto grid, Chebyshev: N-point interpolant (endpoints included).
//   Lobatto grid, constrained: N + 2 points; the endpoint conditions hold by
//     construction and the N interior nodes determine the interpolant.
inline Approximant interpolate(const SingularFunction& f, const Basis& basis, GridKind grid, std::size_t n) {
  ApproximantMeta meta;
  meta.n_basis = n;
  meta.grid = grid;
  if (basis.kind == BasisKind::Gegenbauer) throw BasisError("interpolate: Gegenbauer basis is not supported");
  if (grid == GridKind::Roots) {
    if (n < 1) throw SizeError("interpolate: N must be >= 1");
    meta.grid_points = n;
    if (basis.kind == BasisKind::Chebyshev) {
      return {Method::Interpolation, {basis, chebyshev_projection([&f](double x) { return f.u(x); }, n, n)}, meta};
    }
    CoefficientVector c(Basis::quad_factor(), chebyshev_projection([&f](double x) { return f.v(x); }, n, n));
    if (basis.kind == BasisKind::QuadFactor) return {Method::Interpolation, std::move(c), meta};
    return {Method::Interpolation, b_from_c(c), meta};
  }
  if (basis.kind == BasisKind::Chebyshev) {
    if (n < 2) throw SizeError("interpolate: Lobatto grid needs N >= 2");
    meta.grid_points = n;
    return {Method::Interpolation, {basis, detail::lobatto_chebyshev(f, n)}, meta};
  }
  if (n < 1) throw SizeError("interpolate: N must be >= 1");
  meta.grid_points = n + 2;
  CoefficientVector b(Basis::difference(), detail::lobatto_difference(f, n));
  if (basis.kind == BasisKind::Difference) return {Method::Interpolation, std::move(b), meta};
  return {Method::Interpolation, c_from_b(b), meta};
}

namespace detail {

struct GramSystem {
  SymmetricMatrix g;
  std::vector<double> rhs;
};

inline GramSystem assemble_gram(const RootsRule& rule, const Basis& basis, std::size_t n,
                                const std::vector<double>& u, const WeightSpec& w) {
  const std::size_t m = rule.size();
  // Rows scaled by sqrt(weight) so G = H^T H.
  std::vector<double> h(m * n);
  std::vector<double> su(m);
  for (std::size_t k = 0; k < m; ++k) {
    const double sw = std::sqrt(rule.weight(w, k));
    su[k] = sw * u[k];
    for (std::size_t j = 0; j < n; ++j) h[k * n + j] = sw * rule.basis(basis, j, k);
  }
  GramSystem sys{SymmetricMatrix(n), std::vector<double>(n, 0.0)};
  for (std::size_t k = 0; k < m; ++k) {
    const double* row = &h[k * n];
    for (std::size_t i = 0; i < n; ++i) {
      const double ri = row[i];
      sys.rhs[i] += ri * su[k];
      for (std::size_t j = 0; j <= i; ++j) sys.g(i, j) += ri * row[j];
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) sys.g(j, i) = sys.g(i, j);
    if (!std::isfinite(sys.rhs[i])) throw NonFiniteError("non-finite least-squares right-hand side");
  }
  return sys;
}

// Exact Gram matrix of the difference basis under the Chebyshev weight:
// 3pi/2 at (0,0), pi on the rest of the diagonal, -pi/2 at |i - j| = 2.
inline SymmetricMatrix difference_chebyshev_gram(std::size_t n) {
  using std::numbers::pi;
  SymmetricMatrix g(n);
  for (std::size_t i = 0; i < n; ++i) {
    g(i, i) = (i == 0) ? 1.5 * pi : pi;
    if (i + 2 < n) {
      g(i, i + 2) = -0.5 * pi;
      g(i + 2, i) = -0.5 * pi;
    }
  }
  return g;
}

// The same system split by parity into two tridiagonal solves.
inline std::vector<double> solve_difference_chebyshev(std::size_t n, const std::vector<double>& rhs) {
  using std::numbers::pi;
  std::vector<double> d(n, 0.0);
  for (std::size_t parity = 0; parity < 2; ++parity) {
    std::vector<double> diag, off, r;
    for (std::size_t i = parity; i < n; i += 2) {
      diag.push_back(i == 0 ? 1.5 * pi : pi);
      r.push_back(rhs[i]);
    }
    if (diag.empty()) continue;
    off.assign(diag.size() - 1, -0.5 * pi);
    const auto sol = solve_tridiagonal(off, diag, off, r);
    for (std::size_t i = parity, j = 0; i < n; i += 2, ++j) d[i] = sol[j];
  }
  return d;
}

}  // namespace detail

// Minimizes <u - u_N, u - u_N> under the N_col-point quadrature inner product
// by solving G d = f. With N_col = N and the Chebyshev weight the minimizer is
// the roots-grid interpolant.
inline Approximant least_squares(const SingularFunction& f, const Basis& basis, std::size_t n, std::size_t n_col,
                                 const WeightSpec& w = WeightSpec::chebyshev()) {
  if (n < 1) throw SizeError("least_squares: N must be >= 1");
  if (n_col < n) throw PreconditionError("least_squares: N_col must be >= N");
  const RootsRule rule(n_col);
  std::vector<double> u(n_col);
  for (std::size_t k = 0; k < n_col; ++k) u[k] = f.u(rule.x(k));

  ApproximantMeta meta;
  meta.n_basis = n;
  meta.n_col = n_col;
  meta.weight = w;

  // Degree of diff_i diff_j is at most 2N + 2, integrated exactly once N_col >= N + 2.
  const bool analytic = basis.kind == BasisKind::Difference && w.alpha == -0.5 && n_col >= n + 2;
  std::vector<double> d;
  if (analytic) {
    std::vector<double> rhs(n, 0.0);
    for (std::size_t k = 0; k < n_col; ++k) {
      const double wk = rule.weight(w, k) * u[k];
      for (std::size_t j = 0; j < n; ++j) rhs[j] += wk * rule.basis(basis, j, k);
    }
    const auto g = detail::difference_chebyshev_gram(n);
    meta.condition = condition_estimate(g, Cholesky(g));
    d = detail::solve_difference_chebyshev(n, rhs);
  } else {
    auto sys = detail::assemble_gram(rule, basis, n, u, w);
    const Cholesky chol(sys.g);
    meta.condition = condition_estimate(sys.g, chol);
    if (*meta.condition > kMaxGramCondition) {
      throw IllConditionedError("least_squares: Gram matrix condition estimate exceeds 1e12", *meta.condition);
    }
    d = chol.solve(sys.rhs);
  }
  return {Method::LeastSquares, {basis, std::move(d)}, meta};
}

// Closed-form even-parity least-squares coefficients of the difference basis
// with the Chebyshev weight and exact integration, from the reference
// Chebyshev coefficients:
//   b_{2n} = -(1 - n/N)/(1 + 1/(2N)) sum_{m<=n} a_{2m}
//            + (n + 1/2)/(N + 1/2) sum_{m=n+1}^{N} a_{2m},   n = 0..N-1.
// Returns a difference-basis vector of length 2N - 1 with zero odd entries.
inline CoefficientVector ls_diff_closed_form(const CoefficientVector& a_ref, std::size_t n_even) {
  detail::require_basis(a_ref, BasisKind::Chebyshev, "ls_diff_closed_form");
  if (n_even < 1) throw SizeError("ls_diff_closed_form: N must be >= 1");
  if (a_ref.size() < 2 * n_even + 1) throw PreconditionError("ls_diff_closed_form: need a_0 .. a_{2N}");
  const double nn = static_cast<double>(n_even);
  std::vector<double> prefix(n_even + 1, 0.0);  // prefix[n] = sum_{m<=n} a_{2m}
  double acc = 0.0;
  for (std::size_t m = 0; m <= n_even; ++m) {
    acc += a_ref[2 * m];
    prefix[m] = acc;
  }
  std::vector<double> b(2 * n_even - 1, 0.0);
  for (std::size_t n = 0; n < n_even; ++n) {
    const double nd = static_cast<double>(n);
    const double head = prefix[n];
    const double tail = prefix[n_even] - prefix[n];
    b[2 * n] = -(1.0 - nd / nn) / (1.0 + 1.0 / (2.0 * nn)) * head + (nd + 0.5) / (nn + 0.5) * tail;
  }
  return {Basis::difference(), std::move(b)};
}

// Chebyshev least squares with one Lagrange multiplier per parity enforcing
// u_N(+-1) = 0, from reference coefficients a_0 .. a_{N-1}. With P even
// coefficients retained (a_0 .. a_{2(P-1)}) and Q odd ones:
//   lambda = pi/(2P - 1) sum a_even,  a0 -= lambda/pi,  a_2n -= 2 lambda/pi
//   mu     = pi/(2Q)     sum a_odd,   a_2n+1 -= 2 mu/pi
inline Approximant lagrange_ls(const CoefficientVector& a_ref, std::size_t n) {
  detail::require_basis(a_ref, BasisKind::Chebyshev, "lagrange_ls");
  if (n < 2) throw SizeError("lagrange_ls: N must be >= 2");
  using std::numbers::pi;
  std::vector<double> a(n);
  for (std::size_t i = 0; i < n; ++i) a[i] = a_ref.at_or_zero(i);
  double even = 0.0, odd = 0.0;
  std::size_t p = 0, q = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (i % 2 == 0) {
      even += a[i];
      ++p;
    } else {
      odd += a[i];
      ++q;
    }
  }
  const double lambda = pi / static_cast<double>(2 * p - 1) * even;
  const double mu = pi / static_cast<double>(2 * q) * odd;
  for (std::size_t i = 0; i < n; ++i) {
    if (i == 0) {
      a[i] -= lambda / pi;
    } else if (i % 2 == 0) {
      a[i] -= 2.0 * lambda / pi;
    } else {
      a[i] -= 2.0 * mu / pi;
    }
  }
  ApproximantMeta meta;
  meta.n_basis = n;
  meta.lambda = lambda;
  meta.mu = mu;
  return {Method::LagrangeLS, {Basis::chebyshev(), std::move(a)}, meta};
}

inline Approximant lagrange_ls(const SingularFunction& f, std::size_t n, std::size_t m_ref = 0) {
  if (m_ref == 0) m_ref = default_m_ref(n);
  auto approx = lagrange_ls(reference_coeffs(f, Basis::chebyshev(), n, m_ref), n);
  ApproximantMeta meta = approx.meta();
  meta.m_ref = m_ref;
  return {approx.method(), approx.coeffs(), meta};
}

// Even and odd parts. On Chebyshev coefficients this zeroes the opposite
// parity; on functions S(x) = (u(x) + u(-x))/2, A(x) = (u(x) - u(-x))/2.
inline std::pair<CoefficientVector, CoefficientVector> parity_split(const CoefficientVector& c) {
  std::vector<double> even(c.values().begin(), c.values().end());
  std::vector<double> odd = even;
  for (std::size_t i = 0; i < even.size(); ++i) (i % 2 == 0 ? odd : even)[i] = 0.0;
  return {CoefficientVector(c.basis(), std::move(even)), CoefficientVector(c.basis(), std::move(odd))};
}

inline std::pair<std::function<double(double)>, std::function<double(double)>> parity_split(
    std::function<double(double)> u) {
  auto even = [u](double x) { return 0.5 * (u(x) + u(-x)); };
  auto odd = [u](double x) { return 0.5 * (u(x) - u(-x)); };
  return {even, odd};
}

// Dispatch by method; `n_col` and `w` are used by least squares only.
inline Approximant approximate(const SingularFunction& f, const Basis& basis, Method method, std::size_t n,
                               GridKind grid = GridKind::Roots, std::size_t n_col = 2048,
                               const WeightSpec& w = WeightSpec::chebyshev(), std::size_t m_ref = 0) {
  switch (method) {
    case Method::Truncation: return truncate(f, basis, n, m_ref);
    case Method::Interpolation: return interpolate(f, basis, grid, n);
    case Method::LeastSquares: return least_squares(f, basis, n, std::max(n_col, n), w);
    case Method::LagrangeLS:
      if (basis.kind != BasisKind::Chebyshev) throw BasisError("Lagrange least squares uses the Chebyshev basis");
      return lagrange_ls(f, n, m_ref);
  }
  throw std::invalid_argument("unknown method");
}

}  // namespace specbasis
