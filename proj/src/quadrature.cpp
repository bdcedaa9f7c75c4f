#include "conelw/quadrature.hpp"

#include <algorithm>

namespace conelw::quadrature {

CumulativeCoefficient::CumulativeCoefficient(Expr p, int grid_size) : p_(std::move(p)) {
  if (grid_size < 1) throw PreconditionError("cumulative: grid_size must be >= 1");
  if (p_.uses_y()) throw InstanceError("p", "coefficient may only depend on t");

  nodes_.resize(grid_size + 1);
  values_.assign(grid_size + 1, 0.0);
  for (int k = 0; k <= grid_size; ++k) nodes_[k] = static_cast<double>(k) / grid_size;

  auto checked_p = [this](double t) {
    const double v = p_(t);
    if (v < 0.0)
      throw InstanceError("p", "coefficient is negative (" + std::to_string(v) +
                                   ") at t = " + std::to_string(t));
    return v;
  };
  for (double t : nodes_) checked_p(t);
  for (int k = 0; k < grid_size; ++k)
    values_[k + 1] = values_[k] + integrate(checked_p, nodes_[k], nodes_[k + 1], 1);
}

double CumulativeCoefficient::operator()(double t) const {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return values_.back();
  const std::size_t cells = nodes_.size() - 1;
  std::size_t k = std::min(static_cast<std::size_t>(t * cells), cells - 1);
  // Guard against rounding in t * cells.
  while (k > 0 && nodes_[k] > t) --k;
  while (k + 1 < cells && nodes_[k + 1] <= t) ++k;
  if (t == nodes_[k]) return values_[k];
  return values_[k] + integrate(p_, nodes_[k], t, 1);
}

CumulativeCoefficient cumulative(const Expr& p, int grid_size) {
  return CumulativeCoefficient(p, grid_size);
}

}  // namespace conelw::quadrature
