#include "conelw/integral_operator.hpp"

#include <cmath>
#include <string>

#include "conelw/parallel.hpp"
#include "conelw/quadrature.hpp"

namespace conelw {

double boundary_sum(const ProblemInstance& inst, const SolutionCurve& y) {
  double total = 0.0;
  for (const auto& term : inst.boundary_terms) total += term.Phi(term.tau, y.at(term.tau));
  return total;
}

SolutionCurve apply_K(const GreensKernel& kernel, const ProblemInstance& inst,
                      const SolutionCurve& y) {
  using quadrature::kGaussNodes;
  using quadrature::kGaussWeights;

  const int n = y.intervals();
  const MonotoneCubic interp = y.interpolant();
  const auto& P = kernel.cumulative();

  // G(t,s) = e^{P(t)} e^{-P(s)} / denom * branch, so the s-integral on each
  // side of the diagonal reduces to prefix sums of int e^{-P(s)} F(s) ds.
  std::vector<double> panel(n, 0.0);
  parallel_for(static_cast<std::size_t>(n), [&](std::size_t k) {
    const double lo = y.grid[k], hi = y.grid[k + 1];
    const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
    double acc = 0.0;
    for (std::size_t q = 0; q < kGaussNodes.size(); ++q) {
      const double s = mid + half * kGaussNodes[q];
      acc += kGaussWeights[q] * std::exp(-P(s)) * inst.forcing(s, interp(s));
    }
    panel[k] = half * acc;
  });
  std::vector<double> prefix(n + 1, 0.0);
  for (int k = 0; k < n; ++k) prefix[k + 1] = prefix[k] + panel[k];
  const double total = prefix[n];

  const double bsum = boundary_sum(inst, y);
  const double lam = kernel.lambda(), ep1 = kernel.exp_p1(), denom = kernel.denom();
  std::vector<double> out(n + 1);
  for (int k = 0; k <= n; ++k) {
    const double t = y.grid[k];
    const double scale = std::exp(P(t)) / denom;
    const double below = prefix[k];          // s < t
    const double above = total - prefix[k];  // s >= t
    out[k] = scale * (lam * below + ep1 * above) + kernel.boundary_weight(t) * bsum;
  }
  return SolutionCurve::from_values(std::move(out));
}

PicardResult picard(const GreensKernel& kernel, const ProblemInstance& inst,
                    const SolutionCurve& y_init, const PicardOptions& opts) {
  PicardResult r;
  r.curve = y_init;
  for (int it = 1; it <= opts.max_iter; ++it) {
    SolutionCurve next = apply_K(kernel, inst, r.curve);
    double step = 0.0;
    for (std::size_t k = 0; k < next.values.size(); ++k) {
      const double v = next.values[k];
      if (!std::isfinite(v) || v < 0.0 || v > opts.escape_bound)
        throw DivergenceError("Picard iterate left [0, " + std::to_string(opts.escape_bound) +
                                  "] at iteration " + std::to_string(it),
                              it);
      step = std::max(step, std::fabs(v - r.curve.values[k]));
    }
    r.curve = std::move(next);
    r.iterations = it;
    r.last_step = step;
    if (step < opts.tol) {
      r.converged = true;
      break;
    }
  }
  return r;
}

Residuals residuals(const ProblemInstance& inst, const SolutionCurve& y) {
  Residuals r;
  const int n = y.intervals();
  const double h = y.step();
  auto rhs = [&](double t, double v) { return inst.p(t) * v + inst.forcing(t, v); };

  double g_lo = rhs(y.grid[0], y.values[0]);
  for (int k = 0; k < n; ++k) {
    const double t0 = y.grid[k], t1 = y.grid[k + 1];
    const double y0 = y.values[k], y1 = y.values[k + 1];
    const double g_hi = rhs(t1, y1);
    const double y_mid = 0.5 * (y0 + y1) + h * (g_lo - g_hi) / 8.0;
    const double g_mid = rhs(0.5 * (t0 + t1), y_mid);
    const double defect = std::fabs((y1 - y0) / h - (g_lo + 4.0 * g_mid + g_hi) / 6.0);
    if (defect > r.ode) {
      r.ode = defect;
      r.ode_at = t0;
    }
    g_lo = g_hi;
  }
  r.boundary = std::fabs(inst.lambda * y.y0 - y.y1 - boundary_sum(inst, y));
  return r;
}

}  // namespace conelw
