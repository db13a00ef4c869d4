#pragma once

// Error measurement, decay-slope fitting, aliasing predictions, tail-sum
// bounds, and the coefficient/error ratio tables.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <exception>
#include <mutex>
#include <optional>
#include <span>
#include <thread>
#include <utility>
#include <vector>

#include "specbasis/approximants.hpp"

namespace specbasis {

// Deterministic parallel map: result i is fn(inputs[i]) regardless of the
// number of workers. The first exception thrown by any task is rethrown.
template <class T, class F>
auto parallel_map(const std::vector<T>& inputs, F&& fn, unsigned workers = 0)
    -> std::vector<decltype(fn(inputs.front()))> {
  using R = decltype(fn(inputs.front()));
  std::vector<std::optional<R>> slots(inputs.size());
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, inputs.size()));
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto run = [&] {
    for (std::size_t i = next++; i < inputs.size(); i = next++) {
      try {
        slots[i].emplace(fn(inputs[i]));
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    }
  };
  if (workers <= 1) {
    run();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run);
  }
  if (error) std::rethrow_exception(error);
  std::vector<R> out;
  out.reserve(slots.size());
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

// ---------------------------------------------------------------- errors

inline constexpr double kInteriorDefault = 0.8;
inline constexpr double kInteriorHalf = 0.5;

struct ErrorSample {
  double x;
  double error;
};

struct ErrorReport {
  std::size_t n = 0;
  double linf_full = 0.0;
  double linf_interior = 0.0;
  double interior = kInteriorDefault;
  std::vector<ErrorSample> samples;
  std::optional<double> slope_fit;
};

// 2001 Chebyshev-distributed points (endpoints included) plus 50 points per
// endpoint at geometric distances 1e-8 .. 1e-1, ascending.
inline std::vector<double> error_sample_points() {
  constexpr int kCheb = 2001;
  constexpr int kLayer = 50;
  std::vector<double> xs;
  xs.reserve(kCheb + 2 * kLayer);
  for (int j = 0; j < kCheb; ++j) {
    xs.push_back(-std::cos(std::numbers::pi * j / (kCheb - 1)));
  }
  xs.front() = -1.0;
  xs.back() = 1.0;
  xs[kCheb / 2] = 0.0;
  for (int j = 0; j < kLayer; ++j) {
    const double delta = std::pow(10.0, -8.0 + 7.0 * j / (kLayer - 1));
    xs.push_back(-1.0 + delta);
    xs.push_back(1.0 - delta);
  }
  std::sort(xs.begin(), xs.end());
  return xs;
}

template <class Exact, class Approx>
ErrorReport error_report_fn(Exact&& exact, Approx&& approx, std::size_t n, double interior = kInteriorDefault) {
  if (!(interior > 0.0 && interior <= 1.0)) throw PreconditionError("interior window must lie in (0, 1]");
  ErrorReport r;
  r.n = n;
  r.interior = interior;
  for (double x : error_sample_points()) {
    const double e = std::abs(exact(x) - approx(x));
    if (!std::isfinite(e)) throw NonFiniteError("non-finite error sample");
    r.samples.push_back({x, e});
    r.linf_full = std::max(r.linf_full, e);
    if (std::abs(x) <= interior) r.linf_interior = std::max(r.linf_interior, e);
  }
  return r;
}

inline ErrorReport error_report(const SingularFunction& f, const Approximant& approx,
                                double interior = kInteriorDefault) {
  return error_report_fn([&f](double x) { return f.u(x); }, approx, approx.meta().n_basis, interior);
}

// ---------------------------------------------------------------- slopes

namespace detail {

inline double loglog_slope(const std::vector<double>& lx, const std::vector<double>& ly) {
  const double n = static_cast<double>(lx.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxy += (lx[i] - mx) * (ly[i] - my);
    sxx += (lx[i] - mx) * (lx[i] - mx);
  }
  return sxy / sxx;
}

inline double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(v.size() / 2), v.end());
  return v[v.size() / 2];
}

}  // namespace detail

inline constexpr std::size_t kMinSlopePoints = 8;
inline constexpr double kCurlTrimFraction = 0.15;

// Least-squares slope of log|values[n]| against log n for n in [n_lo, n_hi].
// A parity class whose median magnitude is below 1e-3 of the other's is
// dropped (functions of one parity), as are exact zeros. With `trim` the top
// 15% of the window is excluded, where interpolation and least-squares
// coefficients curl away from the series.
inline double fit_slope(std::span<const double> values, std::size_t n_lo, std::size_t n_hi, bool trim = false) {
  if (n_lo < 1 || n_hi < 2 * n_lo) throw WindowError("fit_slope: need 1 <= n_lo and n_hi >= 2 n_lo");
  if (n_hi >= values.size()) throw WindowError("fit_slope: window exceeds the data");
  if (trim) n_hi = n_lo + static_cast<std::size_t>(std::floor((1.0 - kCurlTrimFraction) * static_cast<double>(n_hi - n_lo)));
  std::vector<double> even, odd;
  for (std::size_t n = n_lo; n <= n_hi; ++n) (n % 2 == 0 ? even : odd).push_back(std::abs(values[n]));
  const double me = detail::median(even), mo = detail::median(odd);
  const bool skip_even = me < 1e-3 * mo;
  const bool skip_odd = mo < 1e-3 * me;
  std::vector<double> lx, ly;
  for (std::size_t n = n_lo; n <= n_hi; ++n) {
    if ((n % 2 == 0 && skip_even) || (n % 2 == 1 && skip_odd)) continue;
    const double v = std::abs(values[n]);
    if (!(v > 0.0) || !std::isfinite(v)) continue;
    lx.push_back(std::log(static_cast<double>(n)));
    ly.push_back(std::log(v));
  }
  if (lx.size() < kMinSlopePoints) throw WindowError("fit_slope: fewer than 8 usable points");
  return detail::loglog_slope(lx, ly);
}

// Same fit for paired data such as error norms over an N sweep.
inline double fit_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw SizeError("fit_slope: x and y lengths differ");
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double v = std::abs(y[i]);
    if (!(x[i] > 0.0) || !(v > 0.0) || !std::isfinite(v)) continue;
    lx.push_back(std::log(x[i]));
    ly.push_back(std::log(v));
  }
  if (lx.size() < kMinSlopePoints) throw WindowError("fit_slope: fewer than 8 usable points");
  return detail::loglog_slope(lx, ly);
}

// ---------------------------------------------------------------- aliasing

struct AliasingResult {
  double value = 0.0;
  bool tail_warning = false;
  std::size_t terms = 0;
};

// Aliasing error of the N-point roots-grid interpolant, a^I_n - a_n, in the
// plain a_0 convention:
//   E_n = sum_{j>=1} (-1)^j (a_{2jN-n} + a_{2jN+n}),   1 <= n < N
//   E_0 = sum_{j>=1} (-1)^j a_{2jN}
// summed over every index the reference provides. `tail_warning` is set when
// the last included term exceeds 1e-12 |E_n|.
inline AliasingResult aliasing_error(const CoefficientVector& a_ref, std::size_t n_grid, std::size_t n) {
  detail::require_basis(a_ref, BasisKind::Chebyshev, "aliasing_error");
  if (n_grid < 1 || n >= n_grid) throw PreconditionError("aliasing_error: need 0 <= n < N");
  const std::size_t len = a_ref.size();
  AliasingResult r;
  double last = 0.0;
  for (std::size_t j = 1;; ++j) {
    const std::size_t base = 2 * j * n_grid;
    if (base - n >= len) break;
    const double sign = (j % 2 == 0) ? 1.0 : -1.0;
    double term = a_ref[base - n];
    ++r.terms;
    if (n > 0 && base + n < len) {
      term += a_ref[base + n];
      ++r.terms;
    }
    r.value += sign * term;
    last = term;
  }
  r.tail_warning = r.terms > 0 && std::abs(last) > 1e-12 * std::abs(r.value);
  return r;
}

// All E_n, n = 0 .. N-1.
inline std::vector<double> aliasing_errors(const CoefficientVector& a_ref, std::size_t n_grid) {
  std::vector<double> e(n_grid);
  for (std::size_t n = 0; n < n_grid; ++n) e[n] = aliasing_error(a_ref, n_grid, n).value;
  return e;
}

// N-point roots-grid interpolant of the series sum a_m T_m, by sampling the
// series at the nodes and projecting; the direct counterpart of aliasing_error.
inline CoefficientVector interpolate_series(const CoefficientVector& a_ref, std::size_t n_grid) {
  detail::require_basis(a_ref, BasisKind::Chebyshev, "interpolate_series");
  const RootsRule rule(n_grid);
  std::vector<double> samples(n_grid, 0.0);
  for (std::size_t k = 0; k < n_grid; ++k) {
    double s = 0.0;
    for (std::size_t m = 0; m < a_ref.size(); ++m) s += a_ref[m] * rule.cos_nt(m, k);
    samples[k] = s;
  }
  return {Basis::chebyshev(), chebyshev_from_samples(rule, samples, n_grid)};
}

struct PowerLawAliasing {
  double small_n_error;      // E_n for n << N when a_m = A / m^k
  double near_limit_interp;  // a^I_{N-m} for n = N - m, m << N
  double relative_bound;     // bound on |E_n| / |a_n|
};

// For a_m = A / m^k:
//   E_n ~ A / (2^{k-1} N^k) sum_{j>=1} (-1)^j / j^k        (n << N)
//   a^I_{N-m} ~ (A / N^k) (2 k m / N)                        (m << N)
//   |E_n| / |a_n| <= n^k / (2^{k-1} N^k)
inline PowerLawAliasing aliasing_power_law(double k, std::size_t n, std::size_t n_grid, double amplitude) {
  if (k < 2.0) throw PreconditionError("aliasing_power_law: need k >= 2");
  if (n >= n_grid) throw PreconditionError("aliasing_power_law: need n < N");
  const double nn = static_cast<double>(n_grid);
  const double eta = (1.0 - std::pow(2.0, 1.0 - k)) * std::riemann_zeta(k);  // sum (-1)^{j-1} / j^k
  const double m = static_cast<double>(n_grid - n);
  PowerLawAliasing r;
  r.small_n_error = -amplitude / std::pow(2.0, k - 1.0) / std::pow(nn, k) * eta;
  r.near_limit_interp = amplitude / std::pow(nn, k) * (2.0 * k * m / nn);
  r.relative_bound = std::pow(static_cast<double>(n), k) / (std::pow(2.0, k - 1.0) * std::pow(nn, k));
  return r;
}

// ---------------------------------------------------------------- bounds

struct TailBounds {
  double lower;
  double upper;
  double even_tail_estimate;  // sum over even n > N of n^{-k}
};

// Bracket of sum_{n>N} n^{-k}.
inline TailBounds tail_bounds(double k, std::size_t n) {
  if (k < 2.0) throw PreconditionError("tail_bounds: need k >= 2");
  if (n < 1) throw PreconditionError("tail_bounds: need N >= 1");
  const double nn = static_cast<double>(n);
  TailBounds b;
  b.lower = 1.0 / ((k - 1.0) * std::pow(nn + 1.0, k - 1.0));
  b.upper = 1.0 / ((k - 1.0) * std::pow(nn, k - 1.0));
  b.even_tail_estimate = b.upper / std::pow(2.0, k);
  return b;
}

// Error bound for the quad-factor least-squares approximant under the plain
// integral inner product, given the Gegenbauer-2 amplitude W of v.
inline double quad_ls_bound(double w, double phi, std::size_t n) {
  if (!(w > 0.0)) throw PreconditionError("quad_ls_bound: need W > 0");
  if (!(phi > 0.5)) throw PreconditionError("quad_ls_bound: need phi > 1/2");
  return 3.0 * w / (2.0 * phi) / std::pow(static_cast<double>(n), 2.0 * phi);
}

// ---------------------------------------------------------------- tables

// Row labels count basis functions from 1, so row n reports b_{n-1}.
inline std::vector<std::size_t> ratio_table_rows() {
  return {10, 20, 30, 40, 50, 60, 70, 80, 82, 84, 86, 88, 90, 91, 92, 93, 94, 95, 96, 97, 98, 99};
}

struct RatioRow {
  std::size_t n;
  double interp_ratio;
  double ls_ratio;
};

// Difference-basis coefficient ratios b^I/b and b^LS/b with N basis functions,
// N roots-grid points, and least squares on N_col Gauss-Chebyshev nodes.
inline std::vector<RatioRow> ratio_table(const SingularFunction& f, std::size_t n = 100, std::size_t n_col = 2048,
                                         std::size_t m_ref = 0) {
  if (m_ref == 0) m_ref = 16 * n;
  const auto ref = reference_coeffs(f, Basis::difference(), n, m_ref);
  const auto interp = interpolate(f, Basis::difference(), GridKind::Roots, n);
  const auto ls = least_squares(f, Basis::difference(), n, n_col, WeightSpec::chebyshev());
  std::vector<RatioRow> rows;
  for (std::size_t label : ratio_table_rows()) {
    if (label > n) continue;
    const std::size_t i = label - 1;
    rows.push_back({label, interp.coeffs()[i] / ref[i], ls.coeffs()[i] / ref[i]});
  }
  return rows;
}

struct ErrorRatioRow {
  std::size_t n;
  double interp_ratio;
  double ls_ratio;
};

// L-infinity error ratios E^interp/E and E^LS/E for the difference basis.
inline std::vector<ErrorRatioRow> error_ratio_table(const SingularFunction& f, const std::vector<std::size_t>& ns,
                                                    std::size_t n_col = 2048) {
  return parallel_map(ns, [&](std::size_t n) {
    const double e = error_report(f, truncate(f, Basis::difference(), n, 16 * n)).linf_full;
    const double ei = error_report(f, interpolate(f, Basis::difference(), GridKind::Roots, n)).linf_full;
    const double el = error_report(f, least_squares(f, Basis::difference(), n, n_col)).linf_full;
    return ErrorRatioRow{n, ei / e, el / e};
  });
}

struct EndpointSlopeRow {
  std::size_t n;
  double basis_slope;        // d/dx of basis function N at x = +1
  double approximant_slope;  // d/dx of the roots-grid interpolant at x = +1
};

inline std::vector<EndpointSlopeRow> endpoint_slope_sweep(const Basis& basis, const std::vector<std::size_t>& ns,
                                                          const SingularFunction& f) {
  return parallel_map(ns, [&](std::size_t n) {
    const auto approx = interpolate(f, basis, GridKind::Roots, n);
    return EndpointSlopeRow{n, basis_endpoint_slope(basis, n), approx.slope_at_plus_one()};
  });
}

}  // namespace specbasis
