#pragma once

#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "conelw/errors.hpp"
#include "conelw/expr.hpp"

namespace conelw::quadrature {

inline constexpr int kDefaultPanels = 64;

// 5-point Gauss-Legendre rule on [-1, 1].
inline constexpr std::array<double, 5> kGaussNodes{
    -0.906179845938663992797626878299392965, -0.538469310105683091036314420700208805, 0.0,
    0.538469310105683091036314420700208805, 0.906179845938663992797626878299392965};
inline constexpr std::array<double, 5> kGaussWeights{
    0.236926885056189087514264040719917363, 0.478628670499366468041291514835638192,
    0.568888888888888888888888888888888889, 0.478628670499366468041291514835638192,
    0.236926885056189087514264040719917363};

/// Composite 5-point Gauss-Legendre on [a, b] with `n_panels` equal panels.
/// Throws IntegrationError if f returns a non-finite value.
template <class F>
double integrate(F&& f, double a, double b, int n_panels = kDefaultPanels) {
  if (!(a <= b)) throw PreconditionError("integrate: need a <= b");
  if (n_panels < 1) throw PreconditionError("integrate: need n_panels >= 1");
  if (a == b) return 0.0;
  const double h = (b - a) / n_panels;
  double total = 0.0;
  for (int k = 0; k < n_panels; ++k) {
    const double lo = a + k * h;
    const double hi = (k + 1 == n_panels) ? b : lo + h;
    const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
    double panel = 0.0;
    for (std::size_t q = 0; q < kGaussNodes.size(); ++q) {
      const double x = mid + half * kGaussNodes[q];
      const double v = f(x);
      if (!std::isfinite(v))
        throw IntegrationError("integrand is not finite at x = " + std::to_string(x), x);
      panel += kGaussWeights[q] * v;
    }
    total += half * panel;
  }
  return total;
}

/// P(t) = integral of p over [0, t], tabulated on a uniform grid. Values
/// between nodes are obtained by integrating p from the nearest node below.
class CumulativeCoefficient {
 public:
  CumulativeCoefficient() = default;
  CumulativeCoefficient(Expr p, int grid_size);

  double operator()(double t) const;

  const std::vector<double>& nodes() const noexcept { return nodes_; }
  const std::vector<double>& values() const noexcept { return values_; }
  const Expr& coefficient() const noexcept { return p_; }
  double total() const noexcept { return values_.back(); }

 private:
  Expr p_;
  std::vector<double> nodes_{0.0, 1.0};
  std::vector<double> values_{0.0, 0.0};
};

/// Throws InstanceError if p depends on y or is negative at a sample.
CumulativeCoefficient cumulative(const Expr& p, int grid_size);

}  // namespace conelw::quadrature
