#pragma once

// Endpoint-singular test functions
//   u(x) = g(x) (1 - x^2)^phi log^vartheta(1 - x^2),   v(x) = u(x) / (1 - x^2)
// with g a polynomial given by its Chebyshev coefficients.

#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "specbasis/chebyshev.hpp"
#include "specbasis/errors.hpp"

namespace specbasis {

class SingularFunction {
 public:
  SingularFunction(std::vector<double> g_cheb, double phi, int vartheta, std::string name = {})
      : g_cheb_(std::move(g_cheb)), phi_(phi), vartheta_(vartheta), name_(std::move(name)) {
    if (!(phi_ > 0.0) || !std::isfinite(phi_)) throw PreconditionError("phi must be finite and > 0");
    if (vartheta_ < 0) throw PreconditionError("vartheta must be >= 0");
    if (g_cheb_.empty()) throw PreconditionError("g needs at least one Chebyshev coefficient");
    for (double c : g_cheb_) {
      if (!std::isfinite(c)) throw PreconditionError("g coefficients must be finite");
    }
    if (g(1.0) == 0.0 || g(-1.0) == 0.0) throw PreconditionError("g must not vanish at x = +-1");
  }

  std::span<const double> g_cheb() const { return g_cheb_; }
  double phi() const { return phi_; }
  int vartheta() const { return vartheta_; }
  const std::string& name() const { return name_; }

  // Algebraic order of convergence of the Chebyshev coefficients.
  double kappa() const { return 2.0 * phi_ + 1.0; }

  // True when u is a polynomial times g, i.e. there is no endpoint singularity.
  bool nonsingular() const { return vartheta_ == 0 && phi_ == std::floor(phi_); }

  double g(double x) const { return clenshaw(g_cheb_, x); }

  // 1 - x^2 without cancellation near the endpoints.
  static double one_minus_x2(double x) {
    return std::abs(x) > 0.9 ? (1.0 - x) * (1.0 + x) : 1.0 - x * x;
  }

  double u(double x) const {
    detail::check_unit_interval(x);
    if (std::abs(x) == 1.0) return 0.0;
    return g(x) * singular_factor(x, phi_);
  }

  double v(double x) const {
    detail::check_unit_interval(x);
    if (std::abs(x) == 1.0) {
      if (phi_ > 1.0) return 0.0;
      if (phi_ == 1.0 && vartheta_ == 0) return g(x);
      throw PreconditionError("v is unbounded at x = +-1 for this phi/vartheta");
    }
    return g(x) * singular_factor(x, phi_ - 1.0);
  }

  friend bool operator==(const SingularFunction&, const SingularFunction&) = default;

 private:
  double singular_factor(double x, double power) const {
    const double s = one_minus_x2(x);
    double r = (power == 0.0) ? 1.0 : std::pow(s, power);
    if (vartheta_ > 0) {
      const double l = std::abs(x) < 0.5 ? std::log1p(-x * x) : std::log(s);
      for (int i = 0; i < vartheta_; ++i) r *= l;
    }
    return r;
  }

  std::vector<double> g_cheb_;
  double phi_;
  int vartheta_;
  std::string name_;
};

inline double eval_u(const SingularFunction& f, double x) { return f.u(x); }
inline double eval_v(const SingularFunction& f, double x) { return f.v(x); }

// (1 + x/2) (1 - x^2)^2 log(1 - x^2): phi = 2, vartheta = 1, kappa = 5.
inline SingularFunction make_exemplar() { return {{1.0, 0.5}, 2.0, 1, "exemplar"}; }

// Named functions usable from configuration files.
//   exemplar   (1 + x/2)(1 - x^2)^2 log(1 - x^2)
//   quadratic  1 - x^2 (exactly representable by every basis)
//   power52    (1 - x^2)^{5/2}, a pure power law with no log factor
inline std::vector<std::string> preset_names() { return {"exemplar", "quadratic", "power52"}; }

inline SingularFunction make_preset(const std::string& name) {
  if (name == "exemplar") return make_exemplar();
  if (name == "quadratic") return {{1.0}, 1.0, 0, "quadratic"};
  if (name == "power52") return {{1.0}, 2.5, 0, "power52"};
  throw PreconditionError("unknown function preset '" + name + "'");
}

}  // namespace specbasis
