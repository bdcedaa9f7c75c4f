#pragma once

#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "conelw/curve.hpp"
#include "conelw/integral_operator.hpp"
#include "conelw/problem.hpp"

namespace conelw {

/// Classical RK4 for y' = p(t) y + sum_i f_i(t, y), y(0) = c, with `steps`
/// uniform steps. Throws IvpBlowup if a stage value is non-finite or leaves
/// [0, upper_bound].
SolutionCurve integrate_ivp(const ProblemInstance& inst, double c, int steps,
                            double upper_bound = std::numeric_limits<double>::infinity());

/// R(c) = lambda c - y(1; c) - sum_j Phi_j(tau_j, y(tau_j; c)).
double shooting_residual(const ProblemInstance& inst, double c, int steps,
                         double upper_bound = std::numeric_limits<double>::infinity());

struct Bracket {
  double lo = 0.0;
  double hi = 0.0;
  double r_lo = 0.0;
  double r_hi = 0.0;

  bool degenerate() const noexcept { return lo == hi; }
};

struct ResidualProfile {
  std::vector<double> c_grid;
  std::vector<double> residuals;  ///< NaN where the IVP blew up
  std::vector<bool> valid;
  std::vector<Bracket> brackets;
};

/// Evaluates R on scan_points uniform values of c in [0, C] (safety box
/// [0, 10 C]) and records sign changes between consecutive valid points.
/// Exact zeros on grid nodes become degenerate brackets.
ResidualProfile scan_residual(const ProblemInstance& inst, double C, int scan_points, int steps);

/// Bisection on a sign-change bracket until its width is <= root_tol.
double refine_root(const std::function<double(double)>& residual, const Bracket& bracket,
                   double root_tol);
double refine_root(const ProblemInstance& inst, const Bracket& bracket, int steps,
                   double root_tol,
                   double upper_bound = std::numeric_limits<double>::infinity());

struct SolveResult {
  std::vector<SolutionCurve> solutions;
  std::vector<double> roots;  ///< y(0) of each solution
  std::vector<Residuals> checks;
  ResidualProfile profile;
  /// Roots whose curves failed the residual oracle, with the reason.
  std::vector<std::string> rejected;
  std::vector<std::string> notes;
  int scan_points = 0;
  int ode_steps = 0;
};

/// Scan + bisection over c in [0, C]; each root is re-integrated with
/// settings.ode_steps, duplicates within 10 root_tol are merged, and only
/// curves passing both residual checks below settings.residual_tol are kept.
SolveResult solve_all(const ProblemInstance& inst, const ThresholdSet& thr,
                      const Settings& settings);

}  // namespace conelw
