#pragma once

// Exact linear maps among the Chebyshev (a), difference (b) and
// quadratic-factor (c) coefficients of one function:
//
//   b_0 = -a_0,  b_1 = -a_1,  b_{n-2} - b_n = a_n
//   a_n = -(c_{n-2} + c_{n+2})/4 + c_n/2   (with the low-degree corrections)
//   c_0 - c_2/2 = -2 b_0,  c_{n-2} - c_n = -4 b_{n-2}
//   b_0 = (c_2 - 2 c_0)/4,  b_n = (c_{n+2} - c_n)/4
//
// No thresholding or renormalization is ever applied.

#include <cstddef>
#include <span>
#include <vector>

#include "specbasis/chebyshev.hpp"
#include "specbasis/errors.hpp"

namespace specbasis {

namespace detail {
inline void require_basis(const CoefficientVector& v, BasisKind k, const char* op) {
  if (v.basis().kind != k) {
    throw BasisError(std::string(op) + ": unexpected input basis '" + v.basis().name() + "'");
  }
}
}  // namespace detail

// Difference or quad-factor coefficients of length N -> Chebyshev of length N + 2.
inline CoefficientVector cheb_expand(const CoefficientVector& in) {
  const std::size_t n = in.size();
  std::vector<double> a(n + 2, 0.0);
  switch (in.basis().kind) {
    case BasisKind::Difference:
      for (std::size_t k = 0; k < n; ++k) {
        a[k + 2] += in[k];
        a[k] -= in[k];
      }
      break;
    case BasisKind::QuadFactor:
      // quad_k = T_k/2 - (T_{k+2} + T_{|k-2|})/4
      for (std::size_t k = 0; k < n; ++k) {
        const double c = in[k];
        a[k] += 0.5 * c;
        a[k + 2] -= 0.25 * c;
        a[k >= 2 ? k - 2 : 2 - k] -= 0.25 * c;
      }
      break;
    default:
      throw BasisError("cheb_expand: input must be in the difference or quad-factor basis");
  }
  return {Basis::chebyshev(), std::move(a)};
}

// Chebyshev form of any supported basis (identity for Chebyshev input).
inline CoefficientVector to_chebyshev(const CoefficientVector& in) {
  if (in.basis().kind == BasisKind::Chebyshev) return in;
  return cheb_expand(in);
}

// b_n = -sum_{j <= n, j = n mod 2} a_j for n < n_out.
inline CoefficientVector b_from_a(const CoefficientVector& a, std::size_t n_out) {
  detail::require_basis(a, BasisKind::Chebyshev, "b_from_a");
  if (n_out < 1) throw SizeError("b_from_a: target length must be >= 1");
  std::vector<double> b(n_out, 0.0);
  double even = 0.0, odd = 0.0;
  for (std::size_t n = 0; n < n_out; ++n) {
    double& acc = (n % 2 == 0) ? even : odd;
    acc += a.at_or_zero(n);
    b[n] = -acc;
  }
  return {Basis::difference(), std::move(b)};
}

inline CoefficientVector b_from_a(const CoefficientVector& a) { return b_from_a(a, a.size()); }

// Inverse of b_from_a; the result carries the two trailing degrees
// a_N = b_{N-2}, a_{N+1} = b_{N-1}.
inline CoefficientVector a_from_b(const CoefficientVector& b) {
  detail::require_basis(b, BasisKind::Difference, "a_from_b");
  return cheb_expand(b);
}

// The c_n are the Chebyshev coefficients of v = u / (1 - x^2).
inline CoefficientVector c_from_v_cheb(const CoefficientVector& v) {
  detail::require_basis(v, BasisKind::Chebyshev, "c_from_v_cheb");
  return v.relabel(Basis::quad_factor());
}

inline CoefficientVector a_from_c(const CoefficientVector& c) {
  detail::require_basis(c, BasisKind::QuadFactor, "a_from_c");
  return cheb_expand(c);
}

// Backward recurrence with c_{L} = c_{L+1} = 0 for input of length L:
//   c_m = c_{m+2} - 4 b_m (m >= 1),  c_0 = c_2/2 - 2 b_0.
inline CoefficientVector c_from_b(const CoefficientVector& b) {
  detail::require_basis(b, BasisKind::Difference, "c_from_b");
  const std::size_t n = b.size();
  std::vector<double> c(n + 2, 0.0);
  for (std::size_t m = n; m-- > 1;) c[m] = c[m + 2] - 4.0 * b[m];
  c[0] = 0.5 * c[2] - 2.0 * b[0];
  c.resize(n);
  return {Basis::quad_factor(), std::move(c)};
}

// b_0 = (c_2 - 2 c_0)/4, b_n = (c_{n+2} - c_n)/4, out-of-range c = 0.
inline CoefficientVector b_from_c(const CoefficientVector& c) {
  detail::require_basis(c, BasisKind::QuadFactor, "b_from_c");
  const std::size_t n = c.size();
  std::vector<double> b(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double scale = (k == 0) ? 2.0 : 1.0;
    b[k] = 0.25 * (c.at_or_zero(k + 2) - scale * c[k]);
  }
  return {Basis::difference(), std::move(b)};
}

// Sum of a series in any basis at x. Difference and quad-factor sums go
// through their Chebyshev expansion so all bases share one Clenshaw kernel.
inline double clenshaw_eval(const CoefficientVector& coeffs, double x) {
  switch (coeffs.basis().kind) {
    case BasisKind::Chebyshev:
      return clenshaw(coeffs.values(), x);
    case BasisKind::Difference:
    case BasisKind::QuadFactor:
      return clenshaw(cheb_expand(coeffs).values(), x);
    case BasisKind::Gegenbauer: {
      detail::check_unit_interval(x);
      const unsigned m = coeffs.basis().order;
      const std::size_t deg = coeffs.size() - 1 + m;
      const auto d = chebyshev_derivatives(m, deg, x);
      double s = 0.0;
      for (std::size_t n = 0; n < coeffs.size(); ++n) {
        s += coeffs[n] * d[m * (deg + 1) + n + m] / endpoint_deriv(n + m, m);
      }
      return s;
    }
  }
  return 0.0;
}

}  // namespace specbasis
