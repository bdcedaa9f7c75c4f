#include "conelw/hypotheses.hpp"

#include <limits>

#include "conelw/parallel.hpp"

namespace conelw {

namespace {

struct Sample {
  double margin = std::numeric_limits<double>::infinity();
  double t = 0.0, y = 0.0;
};

// margin_sign = +1 for "f <= bound" style conditions (margin = bound - f),
// -1 for "f > bound" (margin = f - bound).
ConditionResult sample_condition(const ProblemInstance& inst, std::string name,
                                 std::string relation, bool strict, double y_lo, double y_hi,
                                 double bound, double margin_sign, int grid, double strict_eps) {
  ConditionResult r;
  r.name = std::move(name);
  r.relation = std::move(relation);
  r.strict = strict;
  r.y_lo = y_lo;
  r.y_hi = y_hi;
  r.bound = bound;

  const std::size_t m = inst.f.size();
  r.per_f_margin.assign(m, std::numeric_limits<double>::infinity());
  r.per_f_holds.assign(m, true);
  r.worst_margin = std::numeric_limits<double>::infinity();

  for (std::size_t i = 0; i < m; ++i) {
    // One row of the lattice per t value; rows reduce independently.
    std::vector<Sample> rows(grid + 1);
    parallel_for(grid + 1, [&](std::size_t a) {
      const double t = static_cast<double>(a) / grid;
      Sample best;
      for (int b = 0; b <= grid; ++b) {
        const double y = b == grid ? y_hi : y_lo + (y_hi - y_lo) * b / grid;
        const double margin = margin_sign * (bound - inst.f[i](t, y));
        if (margin < best.margin) best = {margin, t, y};
      }
      rows[a] = best;
    });
    Sample worst;
    for (const auto& s : rows)
      if (s.margin < worst.margin) worst = s;

    r.per_f_margin[i] = worst.margin;
    r.per_f_holds[i] = strict ? worst.margin > strict_eps : worst.margin >= 0.0;
    if (worst.margin < r.worst_margin) {
      r.worst_margin = worst.margin;
      r.witness_t = worst.t;
      r.witness_y = worst.y;
      r.witness_f = static_cast<int>(i);
    }
  }
  r.holds = strict ? r.worst_margin > strict_eps : r.worst_margin >= 0.0;
  return r;
}

}  // namespace

HypothesisReport check_hypotheses(const ProblemInstance& inst, const ThresholdSet& thr,
                                  const DerivedConstants& consts, int grid, double strict_eps) {
  if (grid < 1) throw PreconditionError("check_hypotheses: grid must be >= 1");
  if (!(consts.M > 0.0 && consts.N > 0.0))
    throw PreconditionError("check_hypotheses: M and N must be positive");
  if (inst.f.empty()) throw PreconditionError("check_hypotheses: need at least one f_i");

  const double m = static_cast<double>(inst.f.size());
  HypothesisReport rep;
  rep.grid = grid;
  rep.strict_eps = strict_eps;
  rep.constants = consts;
  rep.f1 = sample_condition(inst, "F1", "f_i(t,y) < M*A/m on [0,1]x[0,A]", true, 0.0, thr.A,
                            consts.M * thr.A / m, +1.0, grid, strict_eps);
  rep.f2 = sample_condition(inst, "F2", "f_i(t,y) > N*B/m on [0,1]x[B,lambda*B]", true, thr.B,
                            inst.lambda * thr.B, consts.N * thr.B / m, -1.0, grid, strict_eps);
  rep.f3 = sample_condition(inst, "F3", "f_i(t,y) <= M*C/m on [0,1]x[0,C]", false, 0.0, thr.C,
                            consts.M * thr.C / m, +1.0, grid, strict_eps);
  return rep;
}

}  // namespace conelw
