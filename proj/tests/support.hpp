#pragma once

#include <initializer_list>
#include <random>
#include <string>
#include <vector>

#include "conelw/problem.hpp"

namespace conelw::testing {

inline ProblemInstance make_instance(const std::string& p, std::initializer_list<const char*> f,
                                     double lambda,
                                     std::vector<BoundaryTerm> terms = {}) {
  ProblemInstance inst;
  inst.p = Expr::parse(p);
  for (const char* fi : f) inst.f.push_back(Expr::parse(fi));
  inst.lambda = lambda;
  inst.boundary_terms = std::move(terms);
  return inst;
}

inline BoundaryTerm term(double tau, const std::string& Phi, const std::string& phi,
                         const std::string& psi) {
  return {Expr::parse(Phi), Expr::parse(phi), Expr::parse(psi), tau};
}

/// The constructed three-solution problem: p = 0, lambda = 2,
/// f = 0.4 + 2.6 ramp(y, 1, 2), A = 1, B = 2, C = 8.
inline ProblemInstance three_solution_instance(double shift = 0.0) {
  ProblemInstance inst;
  inst.p = Expr::parse("0");
  inst.f.push_back(Expr::parse("0.4 + 2.6*ramp(y, 1, 2) + " + std::to_string(shift)));
  inst.lambda = 2.0;
  return inst;
}

inline ThresholdSet three_solution_thresholds() { return ThresholdSet::make(1.0, 2.0, 8.0, 2.0); }

/// Random nonnegative nondecreasing curve values with `intervals`+1 nodes.
inline std::vector<double> random_monotone(std::mt19937_64& rng, int intervals, double scale) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> v(intervals + 1);
  double acc = scale * u(rng);
  for (auto& x : v) {
    x = acc;
    acc += scale * u(rng) / intervals;
  }
  return v;
}

}  // namespace conelw::testing
