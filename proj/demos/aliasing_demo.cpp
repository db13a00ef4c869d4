// Interpolating T_75 on the 50-point roots grid yields -T_25, and the
// aliasing series predicts this without forming the interpolant.

#include <cmath>
#include <cstdio>
#include <vector>

#include "specbasis/specbasis.hpp"

using namespace specbasis;

int main() {
  constexpr std::size_t n = 50;
  std::vector<double> a(8 * n, 0.0);
  a[3 * n / 2] = 1.0;
  const CoefficientVector series(Basis::chebyshev(), a);

  const auto interp = interpolate_series(series, n);
  for (std::size_t i = 0; i < n; ++i) {
    const double predicted = aliasing_error(series, n, i).value;
    if (std::abs(interp[i]) > 1e-12 || std::abs(predicted) > 1e-12) {
      std::printf("n = %zu: interpolant %.15f, predicted %.15f\n", i, interp[i], predicted);
    }
  }
}
