#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "conelw/curve.hpp"
#include "conelw/problem.hpp"

namespace conelw {

/// Concave functional used for localisation: the pointwise minimum of the
/// curve. On nonnegative nondecreasing curves this is y(0).
double theta(const SolutionCurve& y);

/// Nonnegative and nondecreasing, each up to `tol`.
bool in_cone(const SolutionCurve& y, double tol = 1e-9);

/// ||y|| < C. Throws NotInCone if y is not in the cone.
bool in_P_C(const SolutionCurve& y, double C);
/// A <= theta(y) and ||y|| <= B. Throws NotInCone if y is not in the cone.
bool in_P_theta(const SolutionCurve& y, double A, double B);

using Functional = std::function<double(const SolutionCurve&)>;

/// Checks f(w y + (1-w) z) >= w f(y) + (1-w) f(z) for every w in `weights`
/// (up to a relative rounding allowance). y and z must share a grid.
bool concavity_check(const Functional& f, const SolutionCurve& y, const SolutionCurve& z,
                     std::span<const double> weights);

enum class Bucket { Y1, Y2, Y3, Unclassified };

std::string to_string(Bucket b);

struct LocalizedSolution {
  double sup_norm = 0.0;
  double theta = 0.0;
  Bucket bucket = Bucket::Unclassified;
};

struct LocalizationReport {
  std::vector<LocalizedSolution> solutions;
  bool theorem_satisfied = false;

  bool has(Bucket b) const;
};

/// Predicates tested in order:
///   Y1: ||y|| < A,   Y2: theta(y) > B,   Y3: ||y|| > A and theta(y) < B.
/// theorem_satisfied iff each of Y1, Y2, Y3 holds for some solution.
LocalizationReport classify(std::span<const SolutionCurve> solutions, const ThresholdSet& thr);

/// Same, from precomputed (sup_norm, theta) pairs.
LocalizationReport classify_values(std::span<const std::pair<double, double>> norm_theta,
                                   const ThresholdSet& thr);

}  // namespace conelw
