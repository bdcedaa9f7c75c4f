#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "conelw/cone.hpp"
#include "conelw/curve.hpp"
#include "conelw/green.hpp"
#include "conelw/hypotheses.hpp"
#include "conelw/integral_operator.hpp"
#include "conelw/problem.hpp"
#include "conelw/shooting.hpp"

namespace conelw {

using json = nlohmann::json;

json to_json(const Settings& s);
json to_json(const Violation& v);
json to_json(const std::vector<Violation>& vs);
json to_json(const DerivedConstants& c);
json to_json(const ConditionResult& c);
json to_json(const HypothesisReport& r);
json to_json(const LocalizationReport& r);
json to_json(const Residuals& r);
json to_json(const KernelInvariantReport& r);
json to_json(const InadmissibleLambda& e);

/// Metadata only, or metadata plus `t`/`y` arrays.
json to_json(const SolutionCurve& c, bool with_arrays = false);

/// `t,y` header followed by one row per node, 17 significant digits.
void write_curve_csv(const SolutionCurve& c, std::ostream& out);
/// Inverse of write_curve_csv; the grid must be uniform on [0, 1].
SolutionCurve read_curve_csv(std::istream& in);

std::string format_g17(double v);
std::string hex64(std::uint64_t v);

}  // namespace conelw
