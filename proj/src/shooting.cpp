#include "conelw/shooting.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "conelw/parallel.hpp"

namespace conelw {

SolutionCurve integrate_ivp(const ProblemInstance& inst, double c, int steps, double upper_bound) {
  if (!(c >= 0.0)) throw PreconditionError("integrate_ivp: initial value must be >= 0");
  if (steps < 1) throw PreconditionError("integrate_ivp: steps must be >= 1");

  const double h = 1.0 / steps;
  auto check = [&](double t, double v) {
    if (!std::isfinite(v) || v < 0.0 || v > upper_bound) {
      std::ostringstream msg;
      msg << "IVP from c = " << c << " left [0, " << upper_bound << "] near t = " << t
          << " (y = " << v << ")";
      throw IvpBlowup(msg.str(), t, v);
    }
    return v;
  };
  auto rhs = [&](double t, double v) { return inst.p(t) * v + inst.forcing(t, v); };

  std::vector<double> v(steps + 1);
  v[0] = check(0.0, c);
  for (int k = 0; k < steps; ++k) {
    const double t = k * h, y = v[k];
    const double k1 = rhs(t, y);
    const double k2 = rhs(t + 0.5 * h, check(t + 0.5 * h, y + 0.5 * h * k1));
    const double k3 = rhs(t + 0.5 * h, check(t + 0.5 * h, y + 0.5 * h * k2));
    const double k4 = rhs(t + h, check(t + h, y + h * k3));
    v[k + 1] = check(t + h, y + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4));
  }
  return SolutionCurve::from_values(std::move(v));
}

double shooting_residual(const ProblemInstance& inst, double c, int steps, double upper_bound) {
  const SolutionCurve y = integrate_ivp(inst, c, steps, upper_bound);
  return inst.lambda * c - y.y1 - boundary_sum(inst, y);
}

ResidualProfile scan_residual(const ProblemInstance& inst, double C, int scan_points, int steps) {
  if (scan_points < 2) throw PreconditionError("scan_residual: need scan_points >= 2");
  if (!(C > 0.0)) throw PreconditionError("scan_residual: need C > 0");

  ResidualProfile prof;
  const std::size_t n = static_cast<std::size_t>(scan_points);
  prof.c_grid.resize(n);
  prof.residuals.assign(n, std::numeric_limits<double>::quiet_NaN());
  prof.valid.assign(n, false);
  for (std::size_t i = 0; i < n; ++i)
    prof.c_grid[i] = i + 1 == n ? C : C * static_cast<double>(i) / (n - 1);

  const double box = 10.0 * C;
  std::vector<char> ok(n, 0);
  parallel_for(n, [&](std::size_t i) {
    try {
      prof.residuals[i] = shooting_residual(inst, prof.c_grid[i], steps, box);
      ok[i] = std::isfinite(prof.residuals[i]) ? 1 : 0;
    } catch (const IvpBlowup&) {
      ok[i] = 0;
    }
  });
  for (std::size_t i = 0; i < n; ++i) prof.valid[i] = ok[i] != 0;

  for (std::size_t i = 0; i < n; ++i) {
    if (!prof.valid[i]) continue;
    const double r = prof.residuals[i];
    if (r == 0.0) {
      prof.brackets.push_back({prof.c_grid[i], prof.c_grid[i], 0.0, 0.0});
      continue;
    }
    if (i + 1 < n && prof.valid[i + 1]) {
      const double r_next = prof.residuals[i + 1];
      if ((r < 0.0 && r_next > 0.0) || (r > 0.0 && r_next < 0.0))
        prof.brackets.push_back({prof.c_grid[i], prof.c_grid[i + 1], r, r_next});
    }
  }
  return prof;
}

double refine_root(const std::function<double(double)>& residual, const Bracket& bracket,
                   double root_tol) {
  if (bracket.degenerate()) return bracket.lo;
  if (!(bracket.lo < bracket.hi))
    throw PreconditionError("refine_root: bracket must satisfy lo < hi");
  double lo = bracket.lo, hi = bracket.hi;
  double r_lo = residual(lo);
  const double r_hi = residual(hi);
  if (r_lo == 0.0) return lo;
  if (r_hi == 0.0) return hi;
  if ((r_lo < 0.0) == (r_hi < 0.0))
    throw PreconditionError("refine_root: residual has the same sign at both bracket ends");
  while (hi - lo > root_tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;  // interval is one ulp wide
    const double r_mid = residual(mid);
    if (r_mid == 0.0) return mid;
    if ((r_mid < 0.0) == (r_lo < 0.0)) {
      lo = mid;
      r_lo = r_mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double refine_root(const ProblemInstance& inst, const Bracket& bracket, int steps,
                   double root_tol, double upper_bound) {
  return refine_root([&](double c) { return shooting_residual(inst, c, steps, upper_bound); },
                     bracket, root_tol);
}

SolveResult solve_all(const ProblemInstance& inst, const ThresholdSet& thr,
                      const Settings& settings) {
  SolveResult out;
  out.scan_points = settings.scan_points;
  out.ode_steps = settings.ode_steps;
  const double box = 10.0 * thr.C;
  out.profile = scan_residual(inst, thr.C, settings.scan_points, settings.ode_steps);

  std::vector<double> roots;
  for (const auto& br : out.profile.brackets) {
    try {
      roots.push_back(refine_root(inst, br, settings.ode_steps, settings.root_tol, box));
    } catch (const IvpBlowup& e) {
      out.rejected.push_back("bracket [" + std::to_string(br.lo) + ", " + std::to_string(br.hi) +
                             "] invalidated during refinement: " + e.what());
    }
  }
  std::sort(roots.begin(), roots.end());

  const double merge = 10.0 * settings.root_tol;
  for (double c : roots) {
    if (!out.roots.empty() && c - out.roots.back() <= merge) continue;
    SolutionCurve curve = integrate_ivp(inst, c, settings.ode_steps, box);
    Residuals res = residuals(inst, curve);
    if (!res.below(settings.residual_tol)) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "root c = " << c << " rejected: ode residual " << res.ode << ", boundary residual "
          << res.boundary << " (tol " << settings.residual_tol << ")";
      out.rejected.push_back(msg.str());
      continue;
    }
    out.roots.push_back(c);
    out.solutions.push_back(std::move(curve));
    out.checks.push_back(res);
  }

  std::size_t invalid = 0;
  for (bool v : out.profile.valid) invalid += v ? 0 : 1;
  std::ostringstream note;
  note << "scanned y(0) in [0, " << thr.C << "] at " << settings.scan_points
       << " points; roots of even multiplicity between scan points can be missed";
  out.notes.push_back(note.str());
  if (invalid > 0)
    out.notes.push_back(std::to_string(invalid) +
                        " scan point(s) left the safety box [0, 10C] and were skipped");
  return out;
}

}  // namespace conelw
