#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "specbasis/errors.hpp"

namespace specbasis {

// Dense symmetric matrix, row-major.
class SymmetricMatrix {
 public:
  explicit SymmetricMatrix(std::size_t n) : n_(n), data_(n * n, 0.0) {}
  std::size_t size() const { return n_; }
  double& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }

  std::vector<double> multiply(std::span<const double> x) const {
    std::vector<double> y(n_, 0.0);
    for (std::size_t i = 0; i < n_; ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < n_; ++j) s += data_[i * n_ + j] * x[j];
      y[i] = s;
    }
    return y;
  }

 private:
  std::size_t n_;
  std::vector<double> data_;
};

// Thomas algorithm. sub[i] couples rows i+1 and i, sup[i] rows i and i+1;
// both have length n - 1.
inline std::vector<double> solve_tridiagonal(std::span<const double> sub, std::span<const double> diag,
                                             std::span<const double> sup, std::span<const double> rhs) {
  const std::size_t n = diag.size();
  if (n == 0) return {};
  if (sub.size() + 1 != n || sup.size() + 1 != n || rhs.size() != n) {
    throw SizeError("solve_tridiagonal: inconsistent band lengths");
  }
  std::vector<double> c(n, 0.0), d(n, 0.0);
  double denom = diag[0];
  if (denom == 0.0) throw NumericalError("solve_tridiagonal: zero pivot");
  c[0] = n > 1 ? sup[0] / denom : 0.0;
  d[0] = rhs[0] / denom;
  for (std::size_t i = 1; i < n; ++i) {
    denom = diag[i] - sub[i - 1] * c[i - 1];
    if (denom == 0.0) throw NumericalError("solve_tridiagonal: zero pivot");
    c[i] = i + 1 < n ? sup[i] / denom : 0.0;
    d[i] = (rhs[i] - sub[i - 1] * d[i - 1]) / denom;
  }
  for (std::size_t i = n - 1; i-- > 0;) d[i] -= c[i] * d[i + 1];
  return d;
}

// G = L L^T without pivoting; throws if G is not numerically positive definite.
class Cholesky {
 public:
  explicit Cholesky(const SymmetricMatrix& g) : n_(g.size()), l_(n_ * n_, 0.0) {
    for (std::size_t j = 0; j < n_; ++j) {
      double diag = g(j, j);
      for (std::size_t k = 0; k < j; ++k) diag -= l_[j * n_ + k] * l_[j * n_ + k];
      if (!(diag > 0.0)) throw NumericalError("Cholesky: matrix is not positive definite");
      const double ljj = std::sqrt(diag);
      l_[j * n_ + j] = ljj;
      for (std::size_t i = j + 1; i < n_; ++i) {
        double s = g(i, j);
        for (std::size_t k = 0; k < j; ++k) s -= l_[i * n_ + k] * l_[j * n_ + k];
        l_[i * n_ + j] = s / ljj;
      }
    }
  }

  std::vector<double> solve(std::span<const double> rhs) const {
    std::vector<double> y(rhs.begin(), rhs.end());
    for (std::size_t i = 0; i < n_; ++i) {
      double s = y[i];
      for (std::size_t k = 0; k < i; ++k) s -= l_[i * n_ + k] * y[k];
      y[i] = s / l_[i * n_ + i];
    }
    for (std::size_t i = n_; i-- > 0;) {
      double s = y[i];
      for (std::size_t k = i + 1; k < n_; ++k) s -= l_[k * n_ + i] * y[k];
      y[i] = s / l_[i * n_ + i];
    }
    return y;
  }

 private:
  std::size_t n_;
  std::vector<double> l_;
};

// 2-norm condition number estimate of an SPD matrix: power iteration for the
// largest eigenvalue, inverse iteration (through the factorization) for the
// smallest.
inline double condition_estimate(const SymmetricMatrix& g, const Cholesky& chol, int max_iter = 200) {
  const std::size_t n = g.size();
  if (n == 0) return 1.0;
  auto normalize = [](std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    s = std::sqrt(s);
    for (double& x : v) x /= s;
    return s;
  };
  auto iterate = [&](auto&& apply) {
    std::vector<double> v(n);
    // Deterministic start vector with components in every direction.
    for (std::size_t i = 0; i < n; ++i) v[i] = 1.0 + 0.1 * std::sin(static_cast<double>(i) + 1.0);
    normalize(v);
    double lambda = 0.0;
    for (int it = 0; it < max_iter; ++it) {
      auto w = apply(v);
      const double next = normalize(w);
      v = std::move(w);
      if (std::abs(next - lambda) <= 1e-10 * next) {
        lambda = next;
        break;
      }
      lambda = next;
    }
    return lambda;
  };
  const double lmax = iterate([&](const std::vector<double>& v) { return g.multiply(v); });
  const double inv_lmin = iterate([&](const std::vector<double>& v) { return chol.solve(v); });
  return lmax * inv_lmin;
}

}  // namespace specbasis
