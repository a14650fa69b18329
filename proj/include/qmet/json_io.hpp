#pragma once

#include <json.hpp>

#include "qmet/formal_ball.hpp"
#include "qmet/prevision.hpp"

namespace qmet {

using Json = nlohmann::ordered_json;

// Schemas:
//   space      {"labels":[...], "dist":[["p/q"|"inf", ...], ...]}
//   function   {"label": "p/q"|"inf", ...}
//   valuation  {"weights": {"label": "p/q", ...}}
//   ball       {"center":"label", "radius":"p/q"}
//   set        ["label", ...]           (sorted by point index)
//   lens       {"Q":[...], "C":[...]}
//   prevision  {"kind":"sublinear"|"superlinear", "generators":[valuation...]}
//   fork       {"lower":prevision, "upper":prevision}
// All numbers are exact rational strings; no floats appear anywhere.

Json space_to_json(const QSpace& s);
QSpace space_from_json(const Json& j);  // parses, then validates

Json func_to_json(const QSpace& s, const ExtFunc& f);
ExtFunc func_from_json(const QSpace& s, const Json& j);

Json valuation_to_json(const QSpace& s, const SimpleValuation& v);
SimpleValuation valuation_from_json(const QSpace& s, const Json& j);

Json ball_to_json(const QSpace& s, const FormalBall& b);
FormalBall ball_from_json(const QSpace& s, const Json& j);

Json set_to_json(const QSpace& s, const PointSet& ps);
PointSet set_from_json(const QSpace& s, const Json& j);

Json lens_to_json(const QSpace& s, const QuasiLens& l);
QuasiLens lens_from_json(const QSpace& s, const Json& j);  // validates

Json prevision_to_json(const QSpace& s, const GenPrevision& f);
GenPrevision prevision_from_json(const QSpace& s, const Json& j);

Json fork_to_json(const QSpace& s, const Fork& f);
Fork fork_from_json(const QSpace& s, const Json& j);

Json plan_to_json(const QSpace& s, const TransportPlan& plan);
Json moves_to_json(const QSpace& s, const std::vector<TransportMove>& moves);

Json load_json_file(const std::string& path);  // throws ParseError

}  // namespace qmet
