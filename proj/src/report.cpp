#include "conelw/report.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

namespace conelw {

namespace {
// NaN/inf are not representable in JSON.
json num(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }
}  // namespace

std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

json to_json(const Settings& s) {
  return {{"grid", s.grid},
          {"quad_panels", s.quad_panels},
          {"ode_steps", s.ode_steps},
          {"scan_points", s.scan_points},
          {"root_tol", s.root_tol},
          {"residual_tol", s.residual_tol},
          {"strict_eps", s.strict_eps}};
}

json to_json(const Violation& v) {
  return {{"condition", v.condition}, {"t", num(v.t)}, {"y", num(v.y)}, {"detail", v.detail}};
}

json to_json(const std::vector<Violation>& vs) {
  json arr = json::array();
  for (const auto& v : vs) arr.push_back(to_json(v));
  return arr;
}

json to_json(const DerivedConstants& c) {
  return {{"alpha", c.alpha},
          {"beta", c.beta},
          {"M", num(c.M)},
          {"N", num(c.N)},
          {"lambda_margin", num(c.lambda_margin)},
          {"exp_int_p", num(c.exp_p1)},
          {"int_G1", num(c.int_G1)},
          {"int_G0", num(c.int_G0)},
          {"grid", c.grid}};
}

json to_json(const ConditionResult& c) {
  json per_f = json::array();
  for (std::size_t i = 0; i < c.per_f_margin.size(); ++i)
    per_f.push_back({{"f", i + 1}, {"margin", num(c.per_f_margin[i])}, {"holds", bool(c.per_f_holds[i])}});
  return {{"condition", c.name},
          {"relation", c.relation},
          {"strict", c.strict},
          {"holds", c.holds},
          {"worst_margin", num(c.worst_margin)},
          {"witness", {{"t", c.witness_t}, {"y", c.witness_y}, {"f", c.witness_f + 1}}},
          {"box", {{"t", {0.0, 1.0}}, {"y", {c.y_lo, c.y_hi}}}},
          {"bound", num(c.bound)},
          {"per_f", per_f}};
}

json to_json(const HypothesisReport& r) {
  return {{"f1_holds", r.f1.holds},
          {"f2_holds", r.f2.holds},
          {"f3_holds", r.f3.holds},
          {"worst_margins", {{"F1", num(r.f1.worst_margin)},
                             {"F2", num(r.f2.worst_margin)},
                             {"F3", num(r.f3.worst_margin)}}},
          {"conditions", {to_json(r.f1), to_json(r.f2), to_json(r.f3)}},
          {"grid", r.grid},
          {"resolution", 1.0 / r.grid},
          {"strict_eps", r.strict_eps},
          {"constants", to_json(r.constants)}};
}

json to_json(const LocalizationReport& r) {
  json sols = json::array();
  for (const auto& s : r.solutions)
    sols.push_back({{"sup_norm", s.sup_norm}, {"theta", s.theta}, {"bucket", to_string(s.bucket)}});
  return {{"solutions", sols},
          {"buckets_filled", {{"Y1", r.has(Bucket::Y1)}, {"Y2", r.has(Bucket::Y2)}, {"Y3", r.has(Bucket::Y3)}}},
          {"theorem_satisfied", r.theorem_satisfied}};
}

json to_json(const Residuals& r) {
  return {{"ode", num(r.ode)}, {"ode_at", r.ode_at}, {"boundary", num(r.boundary)}};
}

json to_json(const KernelInvariantReport& r) {
  return {{"samples", r.samples},
          {"jump", {{"max_error", r.jump_error}, {"tolerance", 1e-6}, {"pass", r.jump_ok}}},
          {"boundary_relation",
           {{"max_error", r.boundary_error}, {"tolerance", 1e-10}, {"pass", r.boundary_ok}}},
          {"ode_property",
           {{"max_rel_error", r.ode_rel_error}, {"tolerance", 1e-4}, {"pass", r.ode_ok}}},
          {"all_pass", r.all_ok()}};
}

json to_json(const InadmissibleLambda& e) {
  json j = {{"kind", "InadmissibleLambda"},
            {"message", e.what()},
            {"lambda", num(e.lambda)},
            {"exp_int_p", num(e.exp_p1)}};
  if (e.M) j["M"] = num(*e.M);
  if (e.N) j["N"] = num(*e.N);
  if (e.lambda_margin) j["lambda_margin"] = num(*e.lambda_margin);
  return j;
}

json to_json(const SolutionCurve& c, bool with_arrays) {
  json j = {{"nodes", c.values.size()},
            {"y0", c.y0},
            {"y1", c.y1},
            {"sup_norm", c.sup_norm},
            {"min_value", c.min_value}};
  if (with_arrays) {
    j["t"] = c.grid;
    j["y"] = c.values;
  }
  return j;
}

void write_curve_csv(const SolutionCurve& c, std::ostream& out) {
  out << "t,y\n";
  for (std::size_t k = 0; k < c.values.size(); ++k)
    out << format_g17(c.grid[k]) << ',' << format_g17(c.values[k]) << '\n';
}

SolutionCurve read_curve_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != "t,y") throw Error("curve CSV: expected header 't,y'");
  std::vector<double> t, y;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw Error("curve CSV: malformed row '" + line + "'");
    t.push_back(std::stod(line.substr(0, comma)));
    y.push_back(std::stod(line.substr(comma + 1)));
  }
  SolutionCurve c = SolutionCurve::from_values(std::move(y));
  for (std::size_t k = 0; k < t.size(); ++k)
    if (std::fabs(t[k] - c.grid[k]) > 1e-15) throw Error("curve CSV: grid is not uniform on [0,1]");
  return c;
}

}  // namespace conelw
