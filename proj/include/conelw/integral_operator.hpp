#pragma once

#include <limits>

#include "conelw/curve.hpp"
#include "conelw/green.hpp"
#include "conelw/problem.hpp"

namespace conelw {

/// (Ky)(t) = int_0^1 G(t,s) sum_i f_i(s, y(s)) ds
///           + boundary_weight(t) * sum_j Phi_j(tau_j, y(tau_j)).
///
/// Fixed points of K are exactly the solutions of the boundary value
/// problem. The s-integral is split at s = t, so no quadrature panel crosses
/// the kernel's jump; y between nodes uses monotone cubic interpolation.
SolutionCurve apply_K(const GreensKernel& kernel, const ProblemInstance& inst,
                      const SolutionCurve& y);

/// sum_j Phi_j(tau_j, y(tau_j)), with y(tau_j) by monotone cubic interpolation.
double boundary_sum(const ProblemInstance& inst, const SolutionCurve& y);

struct PicardOptions {
  int max_iter = 100;
  double tol = 1e-12;
  /// Iterates leaving [0, escape_bound] raise DivergenceError.
  double escape_bound = std::numeric_limits<double>::infinity();
};

struct PicardResult {
  SolutionCurve curve;
  bool converged = false;
  int iterations = 0;
  double last_step = 0.0;  ///< sup-norm of the final update
};

/// y_{k+1} = K y_k until ||y_{k+1} - y_k|| < tol or max_iter applications.
PicardResult picard(const GreensKernel& kernel, const ProblemInstance& inst,
                    const SolutionCurve& y_init, const PicardOptions& opts = {});

/// Residuals of a discrete curve against the boundary value problem.
///
/// `ode` is the largest per-step defect
///   | (y_{k+1} - y_k) / h - mean_{[t_k, t_{k+1}]} (p y + sum_i f_i) |
/// with the mean taken by Simpson's rule and the midpoint value from the
/// cubic Hermite fit of y and y' = p y + sum f at the step ends.
/// `boundary` is | lambda y(0) - y(1) - sum_j Phi_j(tau_j, y(tau_j)) |.
struct Residuals {
  double ode = 0.0;
  double ode_at = 0.0;
  double boundary = 0.0;

  bool below(double tol) const { return ode < tol && boundary < tol; }
};

Residuals residuals(const ProblemInstance& inst, const SolutionCurve& y);

}  // namespace conelw
