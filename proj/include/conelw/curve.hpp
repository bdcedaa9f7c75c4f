#pragma once

#include <span>
#include <vector>

namespace conelw {

/// Shape-preserving piecewise cubic Hermite interpolant (Fritsch-Carlson
/// tangents). Monotone data gives a monotone interpolant without overshoot.
class MonotoneCubic {
 public:
  MonotoneCubic(std::span<const double> x, std::span<const double> y);

  double operator()(double x) const;

 private:
  std::vector<double> x_, y_, m_;
};

/// A discretised solution on a uniform grid of [0, 1].
struct SolutionCurve {
  std::vector<double> grid;
  std::vector<double> values;
  double sup_norm = 0.0;   ///< max |y|
  double min_value = 0.0;  ///< min y
  double y0 = 0.0;
  double y1 = 0.0;

  /// values[k] is taken at t = k / (values.size() - 1); needs >= 2 values.
  static SolutionCurve from_values(std::vector<double> values);
  static SolutionCurve constant(double value, int intervals);
  template <class F>
  static SolutionCurve sample(F&& fn, int intervals) {
    std::vector<double> v(intervals + 1);
    for (int k = 0; k <= intervals; ++k) v[k] = fn(static_cast<double>(k) / intervals);
    return from_values(std::move(v));
  }

  int intervals() const noexcept { return static_cast<int>(values.size()) - 1; }
  double step() const noexcept { return 1.0 / intervals(); }

  /// Value at t via monotone cubic interpolation (exact on nodes).
  double at(double t) const;
  MonotoneCubic interpolant() const { return MonotoneCubic(grid, values); }
};

}  // namespace conelw
