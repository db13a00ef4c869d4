#pragma once

// Reference computations that share no code with the library: naive sums,
// closed forms, dense elimination, and textbook recurrences.

#include <cmath>
#include <cstddef>
#include <numbers>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace oracle {

// Values of the exemplar at x = 0.5 computed in 30-digit arithmetic.
inline constexpr double kExemplarU05 = -0.202276457192658464605700863589;
inline constexpr double kExemplarV05 = -0.269701942923544619474267818119;

// Exemplar Chebyshev coefficients from 50-digit adaptive quadrature.
inline const std::vector<std::pair<std::size_t, double>>& exemplar_a() {
  static const std::vector<std::pair<std::size_t, double>> table{
      {0, -0.08236038541995898206292409},      {1, -0.03456006423665983034382068},
      {2, 0.02648051389327864275056545},       {3, 0.02840259635498974551573102},
      {5, 0.01553246788167008482808966},       {10, -0.001190476190476190476190476},
      {25, -0.00000520313020313020313020304},  {50, -3.096742227177009785705438e-7},
      {51, -1.410123692732388384562298e-7},    {100, -9.6192323083079385600394e-9},
  };
  return table;
}

inline double cheb_t(std::size_t n, double x) { return std::cos(static_cast<double>(n) * std::acos(x)); }

inline double naive_sum(const std::vector<double>& a, double x) {
  double s = 0.0;
  for (std::size_t n = 0; n < a.size(); ++n) s += a[n] * cheb_t(n, x);
  return s;
}

// Chebyshev coefficients of (1 - x^2)^{p/2} (that is sin^p t) from
//   int_0^pi sin^p t cos(n t) dt
//     = pi cos(n pi/2) Gamma(p+1) / (2^p Gamma((p+n)/2+1) Gamma((p-n)/2+1)),
// in log-magnitude form with 1/Gamma(b) for b < 0 via reflection.
inline double power_coeff(double p, std::size_t n) {
  using std::numbers::pi;
  if (n % 2 == 1) return 0.0;
  const double nn = static_cast<double>(n);
  const double sign_c = (n / 2) % 2 == 0 ? 1.0 : -1.0;  // cos(n pi / 2)
  const double a = (p + nn) / 2.0 + 1.0;
  const double b = (p - nn) / 2.0 + 1.0;
  double log_rb, sign_rb;
  if (b > 0.0) {
    log_rb = -std::lgamma(b);
    sign_rb = 1.0;
  } else {
    const double s = std::sin(pi * b);
    if (s == 0.0) return 0.0;
    log_rb = std::lgamma(1.0 - b) + std::log(std::abs(s)) - std::log(pi);
    sign_rb = s > 0.0 ? 1.0 : -1.0;
  }
  const double log_mag = std::lgamma(p + 1.0) - p * std::log(2.0) - std::lgamma(a) + log_rb;
  const double integral = pi * sign_c * sign_rb * std::exp(log_mag);
  return (n == 0 ? 1.0 : 2.0) / pi * integral;
}

// Classical Gegenbauer C_n^(lambda) by the three-term recurrence, rescaled to
// unit value at x = 1.
inline double gegenbauer_unit(double lambda, std::size_t n, double x) {
  double c0 = 1.0, c1 = 2.0 * lambda * x;
  double e0 = 1.0, e1 = 2.0 * lambda;
  if (n == 0) return 1.0;
  for (std::size_t k = 2; k <= n; ++k) {
    const double kk = static_cast<double>(k);
    const double c2 = (2.0 * x * (kk + lambda - 1.0) * c1 - (kk + 2.0 * lambda - 2.0) * c0) / kk;
    const double e2 = (2.0 * (kk + lambda - 1.0) * e1 - (kk + 2.0 * lambda - 2.0) * e0) / kk;
    c0 = c1;
    c1 = c2;
    e0 = e1;
    e1 = e2;
  }
  return c1 / e1;
}

// Gaussian elimination with partial pivoting on a dense copy.
inline std::vector<double> dense_solve(std::vector<std::vector<double>> a, std::vector<double> b) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
    }
    std::swap(a[col], a[piv]);
    std::swap(b[col], b[piv]);
    for (std::size_t r = col + 1; r < n; ++r) {
      const double f = a[r][col] / a[col][col];
      for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  std::vector<double> x(n);
  for (std::size_t i = n; i-- > 0;) {
    double s = b[i];
    for (std::size_t c = i + 1; c < n; ++c) s -= a[i][c] * x[c];
    x[i] = s / a[i][i];
  }
  return x;
}

// Difference-basis collocation at the N roots nodes, solved densely.
template <class F>
std::vector<double> difference_collocation(F&& u, std::size_t n) {
  std::vector<std::vector<double>> h(n, std::vector<double>(n));
  std::vector<double> rhs(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double x = std::cos((2.0 * static_cast<double>(k) + 1.0) * std::numbers::pi / (2.0 * static_cast<double>(n)));
    rhs[k] = u(x);
    for (std::size_t j = 0; j < n; ++j) h[k][j] = cheb_t(j + 2, x) - cheb_t(j, x);
  }
  return dense_solve(std::move(h), std::move(rhs));
}

// Tails sum_{n>N} n^-k for N = 1 .. n_max, each bracketed by the exact partial
// sum to L plus integral bounds on the remainder. Returns (low, high) pairs.
inline std::vector<std::pair<long double, long double>> power_tails(double k, std::size_t n_max,
                                                                    std::size_t l = 4'000'000) {
  long double partial = 0.0L;  // sum_{n = N+1}^{L}
  for (std::size_t n = l; n > n_max; --n) partial += std::pow(static_cast<long double>(n), -static_cast<long double>(k));
  const long double kk = k;
  const long double rem_hi = std::pow(static_cast<long double>(l), 1.0L - kk) / (kk - 1.0L);
  const long double rem_lo = std::pow(static_cast<long double>(l + 1), 1.0L - kk) / (kk - 1.0L);
  std::vector<std::pair<long double, long double>> out(n_max + 1);
  for (std::size_t n = n_max; n >= 1; --n) {
    out[n] = {partial + rem_lo, partial + rem_hi};
    partial += std::pow(static_cast<long double>(n), -kk);
  }
  return out;
}

// Chebyshev coefficients of a random test function: a low-degree polynomial
// plus even and odd power-law singular parts s (1 - x^2)^{p/2} and
// t x (1 - x^2)^{p/2 + 1}, with p drawn from 3..9.
inline std::vector<double> random_series(std::mt19937_64& gen, std::size_t len) {
  std::uniform_real_distribution<double> amp(-1.0, 1.0);
  std::uniform_int_distribution<int> exponent(3, 9);
  const double p = exponent(gen);
  const double s = amp(gen);
  std::vector<double> a(len, 0.0);
  for (std::size_t n = 0; n < len; ++n) a[n] = s * power_coeff(p, n);
  for (std::size_t n = 0; n < 12; ++n) a[n] += amp(gen) / (1.0 + static_cast<double>(n));
  // x T_n = (T_{n+1} + T_{|n-1|}) / 2
  const double t = amp(gen);
  for (std::size_t n = 0; n + 1 < len; ++n) {
    const double c = t * power_coeff(p + 2.0, n);
    if (n == 0) {
      a[1] += c;
    } else {
      a[n + 1] += 0.5 * c;
      a[n - 1] += 0.5 * c;
    }
  }
  return a;
}

inline std::mt19937_64 rng(std::uint64_t seed) { return std::mt19937_64(seed); }

}  // namespace oracle
