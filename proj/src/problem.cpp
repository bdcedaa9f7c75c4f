#include "conelw/problem.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "conelw/quadrature.hpp"

namespace conelw {

using nlohmann::json;

double ProblemInstance::forcing(double t, double y) const {
  double total = 0.0;
  for (const auto& fi : f) total += fi(t, y);
  return total;
}

namespace {

std::string fmt(double v) {
  std::ostringstream s;
  s.precision(10);
  s << v;
  return s.str();
}

// Keeps the worst sample of one sampled condition instead of one entry per
// failing lattice point.
struct Tally {
  explicit Tally(std::string name) : condition(std::move(name)) {}

  std::string condition;
  long count = 0;
  double worst = 0.0;
  double t = 0.0, y = 0.0;
  std::string detail;

  void record(double slack, double ts, double ys, const std::string& values) {
    if (count == 0 || slack < worst) {
      worst = slack;
      t = ts;
      y = ys;
      detail = values;
    }
    ++count;
  }

  void flush(std::vector<Violation>& out) const {
    if (count == 0) return;
    out.push_back({condition, t, y,
                   detail + " (" + std::to_string(count) + " failing sample" +
                       (count == 1 ? "" : "s") + ")"});
  }
};

// Envelope comparisons tolerate rounding between algebraically equal forms,
// e.g. y*(1/3) against y/3.
constexpr double kEnvelopeRelTol = 1e-12;

bool le_tol(double a, double b) {
  return a <= b + kEnvelopeRelTol * std::max({1.0, std::fabs(a), std::fabs(b)});
}

double safe_eval(const Expr& e, double t, double y, Tally& domain, bool& ok) {
  try {
    return e(t, y);
  } catch (const EvalError& err) {
    domain.record(-1.0, t, y, err.what());
    ok = false;
    return 0.0;
  }
}

}  // namespace

std::vector<Violation> validate(const ProblemInstance& inst, const ThresholdSet& thr, int grid) {
  std::vector<Violation> out;
  if (grid < 1) throw PreconditionError("validate: grid must be >= 1");

  const double A = thr.A, B = thr.B, C = thr.C, lam = inst.lambda;
  if (!(std::isfinite(lam)))
    out.push_back({"lambda finite", NAN, NAN, "lambda = " + fmt(lam)});
  if (!(0.0 < A && A < B && B < lam * B && lam * B <= C))
    out.push_back({"thresholds 0 < A < B < lambda*B <= C", NAN, NAN,
                   "A = " + fmt(A) + ", B = " + fmt(B) + ", lambda*B = " + fmt(lam * B) +
                       ", C = " + fmt(C)});
  if (thr.B_dagger != lam * B)
    out.push_back({"B_dagger = lambda*B", NAN, NAN,
                   "B_dagger = " + fmt(thr.B_dagger) + ", lambda*B = " + fmt(lam * B)});
  if (inst.f.empty()) out.push_back({"m >= 1", NAN, NAN, "no forcing terms f_i"});
  if (inst.p.uses_y()) out.push_back({"p depends on t only", NAN, NAN, inst.p.source()});

  const auto& bt = inst.boundary_terms;
  for (std::size_t j = 0; j < bt.size(); ++j) {
    if (!(bt[j].tau >= 0.0 && bt[j].tau <= 1.0))
      out.push_back({"tau_" + std::to_string(j + 1) + " in [0,1]", bt[j].tau, NAN,
                     "tau = " + fmt(bt[j].tau)});
    if (j > 0 && !(bt[j - 1].tau < bt[j].tau))
      out.push_back({"tau strictly increasing", bt[j].tau, NAN,
                     "tau_" + std::to_string(j) + " = " + fmt(bt[j - 1].tau) + ", tau_" +
                         std::to_string(j + 1) + " = " + fmt(bt[j].tau)});
  }

  Tally domain("finite evaluation");
  Tally p_sign("p >= 0");
  std::vector<Tally> f_sign, Phi_sign, phi_pos, psi_pos, env_lo, env_hi;
  for (std::size_t i = 0; i < inst.f.size(); ++i)
    f_sign.emplace_back("f_" + std::to_string(i + 1) + " >= 0");
  for (std::size_t j = 0; j < bt.size(); ++j) {
    const std::string k = std::to_string(j + 1);
    Phi_sign.emplace_back("Phi_" + k + " >= 0");
    phi_pos.emplace_back("phi_" + k + " > 0");
    psi_pos.emplace_back("psi_" + k + " > 0");
    env_lo.emplace_back("y*phi_" + k + " <= Phi_" + k);
    env_hi.emplace_back("Phi_" + k + " <= y*psi_" + k);
  }

  const double y_top = std::isfinite(C) && C > 0.0 ? C : 0.0;
  for (int a = 0; a <= grid; ++a) {
    const double t = static_cast<double>(a) / grid;
    bool ok = true;
    if (!inst.p.uses_y()) {
      const double pv = safe_eval(inst.p, t, 0.0, domain, ok);
      if (ok && pv < 0.0) p_sign.record(pv, t, 0.0, "p = " + fmt(pv));
    }
    for (int b = 0; b <= grid; ++b) {
      const double y = y_top * b / grid;
      for (std::size_t i = 0; i < inst.f.size(); ++i) {
        ok = true;
        const double fv = safe_eval(inst.f[i], t, y, domain, ok);
        if (ok && fv < 0.0) f_sign[i].record(fv, t, y, "f = " + fmt(fv));
      }
      for (std::size_t j = 0; j < bt.size(); ++j) {
        ok = true;
        const double Phi = safe_eval(bt[j].Phi, t, y, domain, ok);
        const double lo = safe_eval(bt[j].phi_lower, t, y, domain, ok);
        const double hi = safe_eval(bt[j].psi_upper, t, y, domain, ok);
        if (!ok) continue;
        const std::string vals =
            "Phi = " + fmt(Phi) + ", phi = " + fmt(lo) + ", psi = " + fmt(hi);
        if (Phi < 0.0) Phi_sign[j].record(Phi, t, y, vals);
        if (!(lo > 0.0)) phi_pos[j].record(lo, t, y, vals);
        if (!(hi > 0.0)) psi_pos[j].record(hi, t, y, vals);
        if (!le_tol(y * lo, Phi)) env_lo[j].record(Phi - y * lo, t, y, vals);
        if (!le_tol(Phi, y * hi)) env_hi[j].record(y * hi - Phi, t, y, vals);
      }
    }
  }

  domain.flush(out);
  p_sign.flush(out);
  for (const auto& v : {&f_sign, &Phi_sign, &phi_pos, &psi_pos, &env_lo, &env_hi})
    for (const auto& tally : *v) tally.flush(out);
  return out;
}

Extremum box_extremum(const Expr& e, double y_lo, double y_hi, int grid, bool maximize) {
  if (grid < 1) throw PreconditionError("box_extremum: grid must be >= 1");
  const double sign = maximize ? 1.0 : -1.0;
  auto score = [&](double t, double y) { return sign * e(t, y); };

  const double ht = 1.0 / grid;
  const double hy = (y_hi - y_lo) / grid;
  Extremum best{-std::numeric_limits<double>::infinity(), 0.0, y_lo};
  for (int a = 0; a <= grid; ++a) {
    const double t = a * ht;
    for (int b = 0; b <= grid; ++b) {
      const double y = b == grid ? y_hi : y_lo + b * hy;
      const double v = score(t, y);
      if (v > best.value) best = {v, t, y};
    }
  }

  // Golden-section along each coordinate inside the cells around the best
  // node; only improvements are accepted, so the lattice value is a bound.
  constexpr double kInvPhi = 0.6180339887498949;
  const double t_lo = std::max(0.0, best.t - ht), t_hi = std::min(1.0, best.t + ht);
  const double yy_lo = std::max(y_lo, best.y - hy), yy_hi = std::min(y_hi, best.y + hy);
  auto golden = [&](double lo, double hi, auto&& g) {
    double a = lo, b = hi;
    double c = b - kInvPhi * (b - a), d = a + kInvPhi * (b - a);
    double gc = g(c), gd = g(d);
    for (int it = 0; it < 60 && b - a > 1e-14; ++it) {
      if (gc > gd) {
        b = d;
        d = c;
        gd = gc;
        c = b - kInvPhi * (b - a);
        gc = g(c);
      } else {
        a = c;
        c = d;
        gc = gd;
        d = a + kInvPhi * (b - a);
        gd = g(d);
      }
    }
    const double x = 0.5 * (a + b);
    return std::pair{x, g(x)};
  };
  for (int sweep = 0; sweep < 2; ++sweep) {
    if (t_hi > t_lo) {
      auto [t, v] = golden(t_lo, t_hi, [&](double tt) { return score(tt, best.y); });
      if (v > best.value) best = {v, t, best.y};
    }
    if (yy_hi > yy_lo) {
      auto [y, v] = golden(yy_lo, yy_hi, [&](double yy) { return score(best.t, yy); });
      if (v > best.value) best = {v, best.t, y};
    }
  }
  best.value *= sign;
  return best;
}

DerivedConstants derive_constants(const ProblemInstance& inst, const ThresholdSet& thr,
                                  const GreensKernel& kernel, int grid, int quad_panels) {
  DerivedConstants dc;
  dc.grid = grid;
  dc.exp_p1 = kernel.exp_p1();
  for (const auto& term : inst.boundary_terms) {
    dc.beta.push_back(box_extremum(term.psi_upper, 0.0, thr.C, grid, true).value);
    dc.alpha.push_back(
        box_extremum(term.phi_lower, thr.B, inst.lambda * thr.B, grid, false).value);
  }
  const double sum_beta = std::accumulate(dc.beta.begin(), dc.beta.end(), 0.0);
  const double sum_alpha = std::accumulate(dc.alpha.begin(), dc.alpha.end(), 0.0);

  dc.int_G1 = quadrature::integrate([&](double s) { return kernel(1.0, s); }, 0.0, 1.0,
                                    quad_panels);
  dc.int_G0 = quadrature::integrate([&](double s) { return kernel(0.0, s); }, 0.0, 1.0,
                                    quad_panels);
  const double denom = kernel.denom();
  dc.M = (1.0 - dc.exp_p1 * sum_beta / denom) / dc.int_G1;
  dc.N = (1.0 - sum_alpha / denom) / dc.int_G0;
  dc.lambda_margin = inst.lambda - (1.0 + sum_beta) * dc.exp_p1;

  if (!(dc.M > 0.0 && dc.N > 0.0 && dc.lambda_margin > 0.0)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "lambda = " << inst.lambda << " is not admissible: need lambda > (1 + sum beta) "
        << "exp(int p) = " << (1.0 + sum_beta) * dc.exp_p1 << "; M = " << dc.M
        << ", N = " << dc.N << ", margin = " << dc.lambda_margin;
    InadmissibleLambda err(msg.str(), inst.lambda, dc.exp_p1);
    err.M = dc.M;
    err.N = dc.N;
    err.lambda_margin = dc.lambda_margin;
    throw err;
  }
  return dc;
}

ValidationFailed::ValidationFailed(std::vector<Violation> violations)
    : InstanceError("", [&] {
        std::string msg = "instance violates " + std::to_string(violations.size()) +
                          " condition(s):";
        for (const auto& v : violations) msg += "\n  " + v.condition + ": " + v.detail;
        return msg;
      }()),
      violations_(std::move(violations)) {}

namespace {

const json& require(const json& obj, const std::string& key, const std::string& path) {
  if (!obj.is_object()) throw InstanceError(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw InstanceError(path + "/" + key, "missing required field");
  return *it;
}

double require_number(const json& obj, const std::string& key, const std::string& path) {
  const json& v = require(obj, key, path);
  if (!v.is_number()) throw InstanceError(path + "/" + key, "expected a number");
  return v.get<double>();
}

Expr require_expr(const json& v, const std::string& path) {
  if (!v.is_string()) throw InstanceError(path, "expected an expression string");
  try {
    return Expr::parse(v.get<std::string>());
  } catch (const ParseError& e) {
    throw InstanceError(path, e.what());
  }
}

template <class T>
void optional_setting(const json& s, const char* key, T& out) {
  auto it = s.find(key);
  if (it == s.end()) return;
  if constexpr (std::is_integral_v<T>) {
    if (!it->is_number_integer() || it->template get<long long>() < 1)
      throw InstanceError(std::string("/settings/") + key, "expected a positive integer");
  } else {
    if (!it->is_number()) throw InstanceError(std::string("/settings/") + key, "expected a number");
  }
  out = it->template get<T>();
}

}  // namespace

LoadedInstance parse_instance(const json& doc) {
  if (!doc.is_object()) throw InstanceError("", "instance must be a JSON object");
  LoadedInstance out;
  ProblemInstance& inst = out.instance;

  inst.p = require_expr(require(doc, "p", ""), "/p");
  if (inst.p.uses_y()) throw InstanceError("/p", "coefficient p may only use the variable t");

  const json& f = require(doc, "f", "");
  if (!f.is_array() || f.empty()) throw InstanceError("/f", "expected a non-empty array");
  for (std::size_t i = 0; i < f.size(); ++i)
    inst.f.push_back(require_expr(f[i], "/f/" + std::to_string(i)));

  inst.lambda = require_number(doc, "lambda", "");

  if (auto it = doc.find("boundary_terms"); it != doc.end()) {
    if (!it->is_array()) throw InstanceError("/boundary_terms", "expected an array");
    for (std::size_t j = 0; j < it->size(); ++j) {
      const std::string path = "/boundary_terms/" + std::to_string(j);
      const json& term = (*it)[j];
      BoundaryTerm bt;
      bt.tau = require_number(term, "tau", path);
      bt.Phi = require_expr(require(term, "Phi", path), path + "/Phi");
      bt.phi_lower = require_expr(require(term, "phi", path), path + "/phi");
      bt.psi_upper = require_expr(require(term, "psi", path), path + "/psi");
      inst.boundary_terms.push_back(std::move(bt));
    }
  }

  const json& thr = require(doc, "thresholds", "");
  out.thresholds = ThresholdSet::make(require_number(thr, "A", "/thresholds"),
                                      require_number(thr, "B", "/thresholds"),
                                      require_number(thr, "C", "/thresholds"), inst.lambda);

  if (auto it = doc.find("settings"); it != doc.end()) {
    if (!it->is_object()) throw InstanceError("/settings", "expected an object");
    static const char* kKnown[] = {"grid",     "quad_panels",  "ode_steps", "scan_points",
                                   "root_tol", "residual_tol", "strict_eps"};
    for (const auto& [key, value] : it->items()) {
      if (std::find(std::begin(kKnown), std::end(kKnown), key) == std::end(kKnown))
        throw InstanceError("/settings/" + key, "unknown setting");
    }
    Settings& s = out.settings;
    optional_setting(*it, "grid", s.grid);
    optional_setting(*it, "quad_panels", s.quad_panels);
    optional_setting(*it, "ode_steps", s.ode_steps);
    optional_setting(*it, "scan_points", s.scan_points);
    optional_setting(*it, "root_tol", s.root_tol);
    optional_setting(*it, "residual_tol", s.residual_tol);
    optional_setting(*it, "strict_eps", s.strict_eps);
  }

  out.canonical = doc.dump();
  out.hash = fnv1a(out.canonical);
  return out;
}

LoadedInstance parse_instance_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InstanceError("", std::string("malformed JSON: ") + e.what());
  }
  return parse_instance(doc);
}

LoadedInstance load_instance(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open instance file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  LoadedInstance loaded = parse_instance_text(buf.str());
  auto violations = validate(loaded.instance, loaded.thresholds, loaded.settings.grid);
  if (!violations.empty()) throw ValidationFailed(std::move(violations));
  return loaded;
}

std::uint64_t fnv1a(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace conelw
