#pragma once

#include <cstdint>
#include <filesystem>
#include <limits>
#include <string>
#include <vector>

#include <json.hpp>

#include "conelw/errors.hpp"
#include "conelw/expr.hpp"
#include "conelw/green.hpp"

namespace conelw {

/// One term Phi_j(tau_j, y(tau_j)) of the nonlocal boundary condition with
/// its envelope  y*phi_lower <= Phi <= y*psi_upper.
struct BoundaryTerm {
  Expr Phi;
  Expr phi_lower;
  Expr psi_upper;
  double tau = 0.0;
};

///   y'(t) - p(t) y(t) = sum_i f_i(t, y(t)),   t in [0, 1]
///   lambda y(0) = y(1) + sum_j Phi_j(tau_j, y(tau_j))
struct ProblemInstance {
  Expr p;
  std::vector<Expr> f;
  std::vector<BoundaryTerm> boundary_terms;
  double lambda = 0.0;

  /// sum_i f_i(t, y)
  double forcing(double t, double y) const;
};

/// 0 < A < B < lambda*B <= C. B_dagger is always lambda*B.
struct ThresholdSet {
  double A = 0.0;
  double B = 0.0;
  double C = 0.0;
  double B_dagger = 0.0;

  static ThresholdSet make(double A, double B, double C, double lambda) {
    return ThresholdSet{A, B, C, lambda * B};
  }
};

struct Settings {
  int grid = 257;
  int quad_panels = 64;
  int ode_steps = 2048;
  int scan_points = 1024;
  double root_tol = 1e-10;
  double residual_tol = 1e-6;
  /// (F1) and (F2) need margin > strict_eps.
  double strict_eps = 0.0;
};

struct Violation {
  std::string condition;
  double t = std::numeric_limits<double>::quiet_NaN();
  double y = std::numeric_limits<double>::quiet_NaN();
  std::string detail;
};

/// Samples the standing hypotheses on a (grid+1)^2 lattice of [0,1]x[0,C].
/// An empty result means "holds at this resolution".
std::vector<Violation> validate(const ProblemInstance& inst, const ThresholdSet& thr, int grid);

struct DerivedConstants {
  std::vector<double> alpha;
  std::vector<double> beta;
  double M = 0.0;
  double N = 0.0;
  double lambda_margin = 0.0;
  double exp_p1 = 0.0;
  double int_G1 = 0.0;  ///< integral of G(1, s) over [0, 1]
  double int_G0 = 0.0;  ///< integral of G(0, s) over [0, 1]
  int grid = 0;
};

struct Extremum {
  double value = 0.0;
  double t = 0.0;
  double y = 0.0;
};

/// Extremum of e over [0,1]x[y_lo,y_hi]: lattice scan with (grid+1)^2 points,
/// then golden-section refinement inside the neighbourhood of the best node.
Extremum box_extremum(const Expr& e, double y_lo, double y_hi, int grid, bool maximize);

/// alpha_j, beta_j, M, N and the lambda margin. Throws InadmissibleLambda
/// (with M, N and the margin attached) if any of the three is not positive.
DerivedConstants derive_constants(const ProblemInstance& inst, const ThresholdSet& thr,
                                  const GreensKernel& kernel, int grid,
                                  int quad_panels = quadrature::kDefaultPanels);

struct LoadedInstance {
  ProblemInstance instance;
  ThresholdSet thresholds;
  Settings settings;
  std::string canonical;  ///< canonical JSON text of the input document
  std::uint64_t hash = 0;  ///< FNV-1a of `canonical`
};

class ValidationFailed : public InstanceError {
 public:
  explicit ValidationFailed(std::vector<Violation> violations);
  const std::vector<Violation>& violations() const noexcept { return violations_; }

 private:
  std::vector<Violation> violations_;
};

/// Schema check and expression parsing only.
LoadedInstance parse_instance(const nlohmann::json& doc);
LoadedInstance parse_instance_text(const std::string& text);

/// Reads, parses and validates; throws ValidationFailed on violations.
LoadedInstance load_instance(const std::filesystem::path& path);

std::uint64_t fnv1a(const std::string& bytes);

}  // namespace conelw
