// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "specbasis/specbasis.hpp"

using namespace specbasis;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) pass = false;
    if (!detail.empty()) detail += "; ";
    detail += (ok ? "" : "MISS ") + what;
  }
};

std::string fmt(const char* f, double a) {
  char buf[96];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

std::string fmt2(const char* f, double a, double b) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

bool within(double v, double target, double tol) { return std::abs(v - target) <= tol; }

const std::vector<std::size_t> kSweep{16, 24, 32, 48, 64, 96, 128, 192, 256};

std::vector<double> as_x(const std::vector<std::size_t>& ns) { return {ns.begin(), ns.end()}; }

double sup_u(const SingularFunction& f) {
  double m = 0.0;
  for (double x : error_sample_points()) m = std::max(m, std::abs(f.u(x)));
  return m;
}

double max_diff(const Approximant& p, const Approximant& q) {
  double m = 0.0;
  for (double x : error_sample_points()) m = std::max(m, std::abs(p(x) - q(x)));
  return m;
}

// ------------------------------------------------------------ criteria

Outcome decay_exponents() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  const auto p = make_preset("power52");
  const auto a = reference_coeffs(p, Basis::chebyshev(), 300);
  const auto b = b_from_a(a);
  const auto c = reference_coeffs(p, Basis::quad_factor(), 300);
  const double sa = fit_slope(a.values(), 32, 256);
  const double sb = fit_slope(b.values(), 32, 256);
  const double sc = fit_slope(c.values(), 32, 256);
  o.require(within(sa, -6, 0.1) && within(sb, -5, 0.1) && within(sc, -4, 0.1),
            "power52 a/b/c " + fmt2("%.3f/%.3f", sa, sb) + fmt("/%.3f", sc));

  const auto f = make_exemplar();
  const auto ea = reference_coeffs(f, Basis::chebyshev(), 300);
  const auto eb = b_from_a(ea);
  const auto ec = reference_coeffs(f, Basis::quad_factor(), 300);
  const double xa = fit_slope(ea.values(), 32, 256);
  const double xb = fit_slope(eb.values(), 32, 256);
  const double xc = fit_slope(ec.values(), 32, 256);
  o.require(within(xa, -5, 0.3) && within(xb, -4, 0.3) && within(xc, -3, 0.3),
            "exemplar a/b/c " + fmt2("%.3f/%.3f", xa, xb) + fmt("/%.3f", xc));
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  o.require(secs < 10.0, fmt("%.2f s", secs));
  return o;
}

Outcome proportionality() {
  Outcome o;
  const auto p = make_preset("power52");
  const double phi = p.phi();
  const auto a = reference_coeffs(p, Basis::chebyshev(), 300);
  const auto b = b_from_a(a);
  const auto c = reference_coeffs(p, Basis::quad_factor(), 300);
  const std::size_t n = 256;
  const double nn = static_cast<double>(n);
  const double rb = std::abs(b[n] * 4 * phi / (a[n] * nn));
  const double rc = std::abs(c[n] * (2 * phi - 1) * (2 * phi) / (a[n] * nn * nn));
  o.require(rb >= 0.9 && rb <= 1.1, fmt("b ratio %.4f", rb));
  o.require(rc >= 0.9 && rc <= 1.1, fmt("c ratio %.4f", rc));
  o.require(c[n] / a[n] < 0, fmt("c/a %.3g", c[n] / a[n]));
  return o;
}

Outcome truncation_orders() {
  Outcome o;
  const auto f = make_exemplar();
  auto sweep = [&](const Basis& b) {
    return parallel_map(kSweep, [&](std::size_t n) { return error_report(f, truncate(f, b, n, 16 * n)); });
  };
  const auto xs = as_x(kSweep);
  auto norms = [](const std::vector<ErrorReport>& r, bool interior) {
    std::vector<double> v;
    for (const auto& e : r) v.push_back(interior ? e.linf_interior : e.linf_full);
    return v;
  };
  const auto cheb = sweep(Basis::chebyshev());
  const double cf = fit_slope(xs, norms(cheb, false));
  const double ci = fit_slope(xs, norms(cheb, true));
  const double df = fit_slope(xs, norms(sweep(Basis::difference()), false));
  const double qf = fit_slope(xs, norms(sweep(Basis::quad_factor()), false));
  o.require(within(cf, -4, 0.3), fmt("chebyshev full %.3f", cf));
  o.require(within(ci, -5, 0.3), fmt("chebyshev interior %.3f", ci));
  o.require(within(df, -4, 0.3), fmt("difference %.3f", df));
  o.require(within(qf, -3, 0.3), fmt("quadfactor %.3f", qf));
  return o;
}

Outcome equivalence() {
  Outcome o;
  const auto f = make_exemplar();
  const double scale = sup_u(f);
  double roots = 0.0, lob = 0.0;
  for (std::size_t n : {20, 50, 100}) {
    const auto d = interpolate(f, Basis::difference(), GridKind::Roots, n);
    const auto q = interpolate(f, Basis::quad_factor(), GridKind::Roots, n);
    roots = std::max(roots, max_diff(d, q) / scale);
    // All three on the same (N + 2)-point Lobatto grid.
    const auto lc = interpolate(f, Basis::chebyshev(), GridKind::Lobatto, n + 2);
    const auto ld = interpolate(f, Basis::difference(), GridKind::Lobatto, n);
    const auto lq = interpolate(f, Basis::quad_factor(), GridKind::Lobatto, n);
    lob = std::max({lob, max_diff(lc, ld) / scale, max_diff(ld, lq) / scale, max_diff(lc, lq) / scale});
  }
  o.require(roots < 1e-11, fmt("roots diff/quad %.2e", roots));
  o.require(lob < 1e-11, fmt("lobatto three-way %.2e", lob));
  return o;
}

Outcome ls_equals_interpolation() {
  Outcome o;
  const auto f = make_exemplar();
  double worst = 0.0;
  for (const auto& b : {Basis::difference(), Basis::quad_factor()}) {
    for (std::size_t n : {16, 64}) {
      const auto ls = least_squares(f, b, n, n);
      const auto in = interpolate(f, b, GridKind::Roots, n);
      for (std::size_t i = 0; i < n; ++i) worst = std::max(worst, std::abs(ls.coeffs()[i] - in.coeffs()[i]));
    }
  }
  o.require(worst < 1e-9, fmt("max coefficient difference %.2e", worst));
  return o;
}

Outcome aliasing_exactness() {
  Outcome o;
  auto gen = oracle::rng(20240611);
  const std::size_t n = 64;
  double worst = 0.0;
  for (int t = 0; t < 20; ++t) {
    const CoefficientVector a(Basis::chebyshev(), oracle::random_series(gen, 64 * n));
    const auto in = interpolate_series(a, n);
    for (std::size_t i = 0; i < n; ++i) worst = std::max(worst, std::abs(aliasing_error(a, n, i).value - (in[i] - a[i])));
  }
  o.require(worst < 1e-11, fmt("20 random functions, max mismatch %.2e", worst));

  const std::size_t m = 50;
  std::vector<double> single(8 * m, 0.0);
  single[3 * m / 2] = 1.0;
  const auto in = interpolate_series({Basis::chebyshev(), single}, m);
  double dev = 0.0;
  for (std::size_t i = 0; i < m; ++i) dev = std::max(dev, std::abs(in[i] - (i == m / 2 ? -1.0 : 0.0)));
  o.require(dev < 1e-12, fmt("T_75 on 50 nodes -> -T_25, deviation %.2e", dev));
  return o;
}

Outcome power_law_aliasing() {
  Outcome o;
  const std::size_t n = 64;
  std::vector<double> a(64 * n, 0.0);
  for (std::size_t m = 1; m < a.size(); ++m) a[m] = std::pow(static_cast<double>(m), -4.0);
  const CoefficientVector series(Basis::chebyshev(), a);
  const double rel8 = std::abs(aliasing_error(series, n, 8).value) / a[8];
  const double bound8 = aliasing_power_law(4, 8, n, 1.0).relative_bound;
  o.require(rel8 < bound8, fmt2("n=8 relative error %.3e < bound %.3e", rel8, bound8));
  for (std::size_t m : {1, 2, 4}) {
    const double exact = a[n - m] + aliasing_error(series, n, n - m).value;
    const double est = aliasing_power_law(4, n - m, n, 1.0).near_limit_interp;
    const double rel = std::abs(est / exact - 1.0);
    o.require(rel < 0.1, "m=" + std::to_string(m) + fmt(" near-limit off by %.1f%%", 100 * rel));
  }
  return o;
}

Outcome tail_bracketing() {
  Outcome o;
  std::size_t checked = 0, violations = 0;
  for (int k = 2; k <= 8; ++k) {
    const auto tails = oracle::power_tails(k, 512);
    for (std::size_t n = 4; n <= 512; ++n) {
      const auto tb = tail_bounds(k, n);
      ++checked;
      if (!(static_cast<long double>(tb.lower) < tails[n].first && tails[n].second < static_cast<long double>(tb.upper))) {
        ++violations;
      }
    }
  }
  o.require(violations == 0, std::to_string(checked) + " (k, N) pairs, " + std::to_string(violations) + " violations");
  return o;
}

Outcome table1() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  const auto rows = ratio_table(make_exemplar(), 100, 2048);
  struct Want {
    std::size_t n;
    double interp, ls;
  };
  for (const Want& w : {Want{10, 1.00, 1.00}, Want{90, 1.43, 0.47}, Want{99, 1.90, 0.095}}) {
    for (const auto& r : rows) {
      if (r.n != w.n) continue;
      const bool ok = w.n <= 90 ? within(r.interp_ratio, w.interp, 0.03) && within(r.ls_ratio, w.ls, 0.03)
                                : within(r.interp_ratio, w.interp, 0.1 * w.interp) && within(r.ls_ratio, w.ls, 0.1 * w.ls);
      o.require(ok, "n=" + std::to_string(w.n) + fmt2(" %.3f/%.3f", r.interp_ratio, r.ls_ratio));
    }
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  o.require(secs < 60.0, fmt("%.2f s", secs));
  return o;
}

Outcome table2() {
  Outcome o;
  const auto rows = error_ratio_table(make_exemplar(), {10, 60, 100}, 2048);
  const double want[][2] = {{1.98, 0.96}, {1.93, 1.09}, {1.85, 1.07}};
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const bool ok = within(rows[i].interp_ratio, want[i][0], 0.1) && within(rows[i].ls_ratio, want[i][1], 0.1);
    o.require(ok, "N=" + std::to_string(rows[i].n) + fmt2(" %.3f/%.3f", rows[i].interp_ratio, rows[i].ls_ratio));
  }
  return o;
}

Outcome interpolation_norms() {
  Outcome o;
  const auto f = make_exemplar();
  struct Row {
    double cheb, diff, quad, v;
  };
  const auto rows = parallel_map(kSweep, [&](std::size_t n) {
    Row r{};
    r.cheb = error_report(f, interpolate(f, Basis::chebyshev(), GridKind::Roots, n)).linf_full;
    r.diff = error_report(f, interpolate(f, Basis::difference(), GridKind::Roots, n)).linf_full;
    r.quad = error_report(f, interpolate(f, Basis::quad_factor(), GridKind::Roots, n)).linf_full;
    const CoefficientVector vi(Basis::chebyshev(), chebyshev_projection([&](double x) { return f.v(x); }, n, n));
    r.v = error_report_fn([&](double x) { return f.v(x); }, [&](double x) { return clenshaw_eval(vi, x); }, n).linf_full;
    return r;
  });
  double spread = 0.0;
  std::vector<double> diff, v;
  for (const auto& r : rows) {
    const double lo = std::min({r.cheb, r.diff, r.quad});
    const double hi = std::max({r.cheb, r.diff, r.quad});
    spread = std::max(spread, hi / lo - 1.0);
    diff.push_back(r.diff);
    v.push_back(r.v);
  }
  const auto xs = as_x(kSweep);
  const double sd = fit_slope(xs, diff);
  const double sv = fit_slope(xs, v);
  o.require(spread <= 0.01, fmt("three-basis spread %.1f%%", 100 * spread));
  o.require(within(sd, -4, 0.3), fmt("slope %.3f", sd));
  o.require(within(sv, -2, 0.3), fmt("v slope %.3f", sv));
  return o;
}

Outcome endpoint_slopes() {
  Outcome o;
  std::size_t bad = 0;
  for (std::size_t n = 0; n <= 10000; ++n) {
    if (basis_endpoint_slope(Basis::chebyshev(), n) != static_cast<double>(n * n)) ++bad;
    if (basis_endpoint_slope(Basis::difference(), n) != static_cast<double>(4 * n + 4)) ++bad;
  }
  o.require(bad == 0, "N = 0..10000, " + std::to_string(bad) + " mismatches");
  return o;
}

Outcome lagrange() {
  Outcome o;
  const auto f = make_exemplar();
  const auto fits = parallel_map(kSweep, [&](std::size_t n) { return lagrange_ls(f, n, 16 * n); });
  std::vector<double> lambda;
  double worst = 0.0;
  const double scale = sup_u(f);
  for (const auto& p : fits) {
    lambda.push_back(*p.meta().lambda);
    worst = std::max({worst, std::abs(p(1.0)) / scale, std::abs(p(-1.0)) / scale});
  }
  const double s = fit_slope(as_x(kSweep), lambda);
  o.require(within(s, -5, 0.4), fmt("lambda slope %.3f", s));
  o.require(worst < 1e-12, fmt("endpoint residual %.2e", worst));
  return o;
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"decay exponents", decay_exponents},
      {"proportionality constants", proportionality},
      {"truncation error orders", truncation_orders},
      {"equivalence and Lobatto uniqueness", equivalence},
      {"least squares equals interpolation at N_col = N", ls_equals_interpolation},
      {"aliasing exactness", aliasing_exactness},
      {"power-law aliasing", power_law_aliasing},
      {"tail bounds", tail_bracketing},
      {"coefficient ratio table", table1},
      {"error ratio table", table2},
      {"constrained interpolation error norms", interpolation_norms},
      {"endpoint slope laws", endpoint_slopes},
      {"Lagrange least squares", lagrange},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("[%s] %s: %s\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
    if (!o.pass) ++failed;
  }
  std::printf("%d of %zu criteria failed\n", failed, std::size(criteria));
  return failed == 0 ? 0 : 1;
}
