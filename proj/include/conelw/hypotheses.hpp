#pragma once

#include <string>
#include <vector>

#include "conelw/problem.hpp"

namespace conelw {

/// Result of sampling one growth condition over its box.
struct ConditionResult {
  std::string name;      ///< "F1", "F2" or "F3"
  std::string relation;  ///< human-readable statement of the condition
  bool strict = true;
  bool holds = false;
  double worst_margin = 0.0;
  /// Sample achieving worst_margin and the f_i responsible (0-based).
  double witness_t = 0.0;
  double witness_y = 0.0;
  int witness_f = 0;
  /// Box [0,1] x [y_lo, y_hi] that was sampled.
  double y_lo = 0.0;
  double y_hi = 0.0;
  /// Threshold the f_i are compared against (MA/m, NB/m or MC/m).
  double bound = 0.0;
  std::vector<double> per_f_margin;
  std::vector<bool> per_f_holds;
};

struct HypothesisReport {
  ConditionResult f1;
  ConditionResult f2;
  ConditionResult f3;
  int grid = 0;
  double strict_eps = 0.0;
  DerivedConstants constants;

  bool all_hold() const { return f1.holds && f2.holds && f3.holds; }
};

///   (F1) f_i < M A / m  on [0,1] x [0, A]
///   (F2) f_i > N B / m  on [0,1] x [B, lambda B]
///   (F3) f_i <= M C / m on [0,1] x [0, C]
/// sampled on (grid+1)^2 lattices. Strict conditions hold iff the worst
/// margin exceeds strict_eps; (F3) holds iff its worst margin is >= 0.
HypothesisReport check_hypotheses(const ProblemInstance& inst, const ThresholdSet& thr,
                                  const DerivedConstants& consts, int grid,
                                  double strict_eps = 0.0);

}  // namespace conelw
