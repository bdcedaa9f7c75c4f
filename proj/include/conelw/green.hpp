#pragma once

#include "conelw/expr.hpp"
#include "conelw/quadrature.hpp"

namespace conelw {

/// Green's function of  y' - p y = h,  lambda y(0) = y(1):
///
///   G(t, s) = exp(P(t) - P(s)) / (lambda - e^{P(1)}) * { lambda    if s <  t
///                                                      { e^{P(1)}  if s >= t
///
/// with P the cumulative integral of p. Requires lambda > e^{P(1)}.
class GreensKernel {
 public:
  GreensKernel(const Expr& p, double lambda, int grid_size = quadrature::kDefaultPanels);

  double operator()(double t, double s) const;

  /// exp(P(t)) / denom; carries the boundary forcing into the solution.
  double boundary_weight(double t) const;

  double lambda() const noexcept { return lambda_; }
  double exp_p1() const noexcept { return exp_p1_; }
  double denom() const noexcept { return denom_; }
  const quadrature::CumulativeCoefficient& cumulative() const noexcept { return cumulative_; }

 private:
  double lambda_;
  quadrature::CumulativeCoefficient cumulative_;
  double exp_p1_;
  double denom_;
};

/// Sampled checks of the kernel's defining identities:
///   jump      G(s+eps, s) - G(s-eps, s) = 1          (eps = 1e-8, tol 1e-6)
///   boundary  lambda G(0, s) = G(1, s)               (tol 1e-10)
///   ode       dG/dt = p(t) G(t, s) off the diagonal  (central FD, h = 1e-5,
///                                                     relative tol 1e-4)
struct KernelInvariantReport {
  double jump_error = 0.0;
  double boundary_error = 0.0;
  double ode_rel_error = 0.0;
  bool jump_ok = false;
  bool boundary_ok = false;
  bool ode_ok = false;
  int samples = 0;

  bool all_ok() const { return jump_ok && boundary_ok && ode_ok; }
};

/// Checks on `samples` interior points s_k = k/(samples+1) and, for the ODE
/// property, t on the same lattice away from the diagonal.
KernelInvariantReport verify_kernel(const GreensKernel& kernel, int samples = 99);

/// Throws InadmissibleLambda when lambda <= exp(P(1)).
GreensKernel build_kernel(const Expr& p, double lambda,
                          int grid_size = quadrature::kDefaultPanels);

}  // namespace conelw
