#include "conelw/green.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace conelw {

GreensKernel::GreensKernel(const Expr& p, double lambda, int grid_size)
    : lambda_(lambda), cumulative_(p, grid_size) {
  exp_p1_ = std::exp(cumulative_.total());
  denom_ = lambda_ - exp_p1_;
  if (!(denom_ > 0.0)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "lambda = " << lambda_ << " must exceed exp(int_0^1 p) = " << exp_p1_;
    throw InadmissibleLambda(msg.str(), lambda_, exp_p1_);
  }
}

double GreensKernel::operator()(double t, double s) const {
  const double branch = s < t ? lambda_ : exp_p1_;
  return std::exp(cumulative_(t) - cumulative_(s)) / denom_ * branch;
}

double GreensKernel::boundary_weight(double t) const {
  return std::exp(cumulative_(t)) / denom_;
}

KernelInvariantReport verify_kernel(const GreensKernel& kernel, int samples) {
  constexpr double kEps = 1e-8, kH = 1e-5;
  KernelInvariantReport r;
  r.samples = samples;
  const Expr& p = kernel.cumulative().coefficient();
  const double lam = kernel.lambda();
  for (int k = 1; k <= samples; ++k) {
    const double s = static_cast<double>(k) / (samples + 1);
    r.jump_error =
        std::max(r.jump_error, std::fabs(kernel(s + kEps, s) - kernel(s - kEps, s) - 1.0));
    r.boundary_error = std::max(r.boundary_error, std::fabs(lam * kernel(0.0, s) - kernel(1.0, s)));
    for (int i = 1; i <= samples; ++i) {
      const double t = static_cast<double>(i) / (samples + 1);
      if (std::fabs(t - s) <= 2.0 * kH) continue;
      const double g = kernel(t, s);
      const double dg = (kernel(t + kH, s) - kernel(t - kH, s)) / (2.0 * kH);
      const double expected = p(t) * g;
      const double err = std::fabs(dg - expected) / std::max(std::fabs(expected), std::fabs(g));
      r.ode_rel_error = std::max(r.ode_rel_error, err);
    }
  }
  r.jump_ok = r.jump_error < 1e-6;
  r.boundary_ok = r.boundary_error < 1e-10;
  r.ode_ok = r.ode_rel_error < 1e-4;
  return r;
}

GreensKernel build_kernel(const Expr& p, double lambda, int grid_size) {
  return GreensKernel(p, lambda, grid_size);
}

}  // namespace conelw
