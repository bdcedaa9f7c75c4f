#include "conelw/cone.hpp"

#include <algorithm>
#include <cmath>

namespace conelw {

double theta(const SolutionCurve& y) {
  if (y.values.empty()) throw PreconditionError("theta: empty curve");
  return *std::min_element(y.values.begin(), y.values.end());
}

bool in_cone(const SolutionCurve& y, double tol) {
  for (std::size_t k = 0; k < y.values.size(); ++k) {
    if (y.values[k] < -tol) return false;
    if (k > 0 && y.values[k] < y.values[k - 1] - tol) return false;
  }
  return true;
}

namespace {
void require_cone(const SolutionCurve& y) {
  if (!in_cone(y)) throw NotInCone("curve is not nonnegative and nondecreasing");
}
}  // namespace

bool in_P_C(const SolutionCurve& y, double C) {
  require_cone(y);
  return y.sup_norm < C;
}

bool in_P_theta(const SolutionCurve& y, double A, double B) {
  require_cone(y);
  return A <= theta(y) && y.sup_norm <= B;
}

bool concavity_check(const Functional& f, const SolutionCurve& y, const SolutionCurve& z,
                     std::span<const double> weights) {
  if (y.values.size() != z.values.size())
    throw PreconditionError("concavity_check: curves must share a grid");
  const double fy = f(y), fz = f(z);
  for (double w : weights) {
    std::vector<double> mix(y.values.size());
    for (std::size_t k = 0; k < mix.size(); ++k)
      mix[k] = w * y.values[k] + (1.0 - w) * z.values[k];
    const double lhs = f(SolutionCurve::from_values(std::move(mix)));
    const double rhs = w * fy + (1.0 - w) * fz;
    const double slack = 1e-12 * std::max({1.0, std::fabs(lhs), std::fabs(rhs)});
    if (lhs < rhs - slack) return false;
  }
  return true;
}

std::string to_string(Bucket b) {
  switch (b) {
    case Bucket::Y1: return "Y1";
    case Bucket::Y2: return "Y2";
    case Bucket::Y3: return "Y3";
    case Bucket::Unclassified: return "UNCLASSIFIED";
  }
  return "UNCLASSIFIED";
}

bool LocalizationReport::has(Bucket b) const {
  return std::any_of(solutions.begin(), solutions.end(),
                     [b](const LocalizedSolution& s) { return s.bucket == b; });
}

LocalizationReport classify_values(std::span<const std::pair<double, double>> norm_theta,
                                   const ThresholdSet& thr) {
  LocalizationReport rep;
  for (const auto& [norm, th] : norm_theta) {
    LocalizedSolution s{norm, th, Bucket::Unclassified};
    if (norm < thr.A)
      s.bucket = Bucket::Y1;
    else if (th > thr.B)
      s.bucket = Bucket::Y2;
    else if (norm > thr.A && th < thr.B)
      s.bucket = Bucket::Y3;
    rep.solutions.push_back(s);
  }
  rep.theorem_satisfied = rep.has(Bucket::Y1) && rep.has(Bucket::Y2) && rep.has(Bucket::Y3);
  return rep;
}

LocalizationReport classify(std::span<const SolutionCurve> solutions, const ThresholdSet& thr) {
  std::vector<std::pair<double, double>> pairs;
  pairs.reserve(solutions.size());
  for (const auto& s : solutions) pairs.emplace_back(s.sup_norm, theta(s));
  return classify_values(pairs, thr);
}

}  // namespace conelw
