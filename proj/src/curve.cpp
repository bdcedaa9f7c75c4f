#include "conelw/curve.hpp"

#include <algorithm>
#include <cmath>

#include "conelw/errors.hpp"

namespace conelw {

MonotoneCubic::MonotoneCubic(std::span<const double> x, std::span<const double> y)
    : x_(x.begin(), x.end()), y_(y.begin(), y.end()), m_(x.size(), 0.0) {
  const std::size_t n = x_.size();
  if (n < 2 || y_.size() != n) throw PreconditionError("MonotoneCubic: need >= 2 matching points");

  std::vector<double> h(n - 1), d(n - 1);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    h[k] = x_[k + 1] - x_[k];
    if (!(h[k] > 0.0)) throw PreconditionError("MonotoneCubic: abscissae must increase");
    d[k] = (y_[k + 1] - y_[k]) / h[k];
  }
  if (n == 2) {
    m_[0] = m_[1] = d[0];
    return;
  }
  for (std::size_t k = 1; k + 1 < n; ++k) {
    if (d[k - 1] * d[k] <= 0.0) {
      m_[k] = 0.0;
    } else {
      // Weighted harmonic mean.
      const double w1 = 2.0 * h[k] + h[k - 1], w2 = h[k] + 2.0 * h[k - 1];
      m_[k] = (w1 + w2) / (w1 / d[k - 1] + w2 / d[k]);
    }
  }
  // One-sided three-point end slopes, limited to keep the shape.
  auto end_slope = [](double h0, double h1, double d0, double d1) {
    double m = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
    if (m * d0 <= 0.0) return 0.0;
    if (d0 * d1 <= 0.0 && std::fabs(m) > 3.0 * std::fabs(d0)) return 3.0 * d0;
    return m;
  };
  m_[0] = end_slope(h[0], h[1], d[0], d[1]);
  m_[n - 1] = end_slope(h[n - 2], h[n - 3], d[n - 2], d[n - 3]);
}

double MonotoneCubic::operator()(double x) const {
  if (x <= x_.front()) return y_.front();
  if (x >= x_.back()) return y_.back();
  const std::size_t k =
      static_cast<std::size_t>(std::upper_bound(x_.begin(), x_.end(), x) - x_.begin()) - 1;
  if (x == x_[k]) return y_[k];
  const double h = x_[k + 1] - x_[k];
  const double s = (x - x_[k]) / h;
  const double s2 = s * s, s3 = s2 * s;
  const double h00 = 2 * s3 - 3 * s2 + 1, h10 = s3 - 2 * s2 + s;
  const double h01 = -2 * s3 + 3 * s2, h11 = s3 - s2;
  return h00 * y_[k] + h10 * h * m_[k] + h01 * y_[k + 1] + h11 * h * m_[k + 1];
}

SolutionCurve SolutionCurve::from_values(std::vector<double> values) {
  if (values.size() < 2) throw PreconditionError("SolutionCurve: need at least two nodes");
  SolutionCurve c;
  const std::size_t n = values.size() - 1;
  c.grid.resize(n + 1);
  for (std::size_t k = 0; k <= n; ++k) c.grid[k] = static_cast<double>(k) / n;
  c.values = std::move(values);
  c.sup_norm = 0.0;
  c.min_value = c.values.front();
  for (double v : c.values) {
    c.sup_norm = std::max(c.sup_norm, std::fabs(v));
    c.min_value = std::min(c.min_value, v);
  }
  c.y0 = c.values.front();
  c.y1 = c.values.back();
  return c;
}

SolutionCurve SolutionCurve::constant(double value, int intervals) {
  return from_values(std::vector<double>(intervals + 1, value));
}

double SolutionCurve::at(double t) const {
  const int n = intervals();
  const double pos = t * n;
  const double nearest = std::round(pos);
  if (std::fabs(pos - nearest) < 1e-12 && nearest >= 0 && nearest <= n)
    return values[static_cast<std::size_t>(nearest)];
  return interpolant()(t);
}

}  // namespace conelw
