// Approximate (1 + x/2)(1 - x^2)^2 log(1 - x^2) three ways in three bases and
// print the max error of each.

#include <cstdio>

#include "specbasis/specbasis.hpp"

using namespace specbasis;

int main() {
  const auto f = make_exemplar();
  const Basis bases[] = {Basis::chebyshev(), Basis::difference(), Basis::quad_factor()};

  std::printf("%-12s %5s %14s %14s %14s\n", "basis", "N", "truncation", "interpolation", "least sq.");
  for (std::size_t n : {16, 32, 64, 128}) {
    for (const auto& b : bases) {
      const double et = error_report(f, truncate(f, b, n)).linf_full;
      const double ei = error_report(f, interpolate(f, b, GridKind::Roots, n)).linf_full;
      const double el = error_report(f, least_squares(f, b, n, 4 * n)).linf_full;
      std::printf("%-12s %5zu %14.3e %14.3e %14.3e\n", b.name().c_str(), n, et, ei, el);
    }
  }

  // Enforcing u(+-1) = 0 on a plain Chebyshev truncation.
  const auto lag = lagrange_ls(f, 64);
  std::printf("\nLagrange LS, N = 64: lambda = %.3e, mu = %.3e, u_N(1) = %.1e\n", *lag.meta().lambda,
              *lag.meta().mu, lag(1.0));
}
