#include "qmet/json_io.hpp"

#include <fstream>

namespace qmet {

namespace {

std::string as_string(const Json& j, const char* what) {
  if (!j.is_string()) throw ParseError(std::string(what) + ": expected string");
  return j.get<std::string>();
}

int resolve_label(const QSpace& s, const std::string& label) {
  int i = s.index_of(label);
  if (i < 0) throw Error("unknown label: " + label);
  return i;
}

}  // namespace

Json space_to_json(const QSpace& s) {
  Json j;
  j["labels"] = s.labels;
  Json rows = Json::array();
  for (const auto& row : s.dist) {
    Json r = Json::array();
    for (const auto& d : row) r.push_back(d.str());
    rows.push_back(std::move(r));
  }
  j["dist"] = std::move(rows);
  return j;
}

QSpace space_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("labels") || !j.contains("dist"))
    throw ParseError("space: expected {labels, dist}");
  std::vector<std::string> labels;
  for (const auto& l : j.at("labels")) labels.push_back(as_string(l, "label"));
  std::vector<std::vector<ExtRat>> dist;
  if (!j.at("dist").is_array()) throw ParseError("space: dist must be an array");
  for (const auto& row : j.at("dist")) {
    std::vector<ExtRat> r;
    if (!row.is_array()) throw ParseError("space: dist rows must be arrays");
    for (const auto& e : row) r.push_back(parse_extrat(as_string(e, "distance")));
    dist.push_back(std::move(r));
  }
  return validate_space(std::move(labels), std::move(dist));
}

Json func_to_json(const QSpace& s, const ExtFunc& f) {
  Json j = Json::object();
  for (int x = 0; x < s.size(); ++x) j[s.labels[x]] = f.v[x].str();
  return j;
}

ExtFunc func_from_json(const QSpace& s, const Json& j) {
  if (!j.is_object()) throw ParseError("function: expected an object");
  ExtFunc f(s.size());
  std::vector<char> seen(s.size(), 0);
  for (const auto& [label, val] : j.items()) {
    int x = resolve_label(s, label);
    f.v[x] = parse_extrat(as_string(val, "value"));
    seen[x] = 1;
  }
  for (int x = 0; x < s.size(); ++x)
    if (!seen[x]) throw Error("function misses point " + s.labels[x]);
  return f;
}

Json valuation_to_json(const QSpace& s, const SimpleValuation& v) {
  Json w = Json::object();
  for (const auto& [p, a] : v.w) w[s.labels[p]] = a.str();
  return Json{{"weights", std::move(w)}};
}

SimpleValuation valuation_from_json(const QSpace& s, const Json& j) {
  if (!j.is_object() || !j.contains("weights"))
    throw ParseError("valuation: expected {weights}");
  SimpleValuation v;
  for (const auto& [label, val] : j.at("weights").items()) {
    Rat a = parse_rat(as_string(val, "weight"));
    if (a <= 0) throw Error("valuation weight must be positive");
    v.w[resolve_label(s, label)] = a;
  }
  return v;
}

Json ball_to_json(const QSpace& s, const FormalBall& b) {
  return Json{{"center", s.labels[b.center]}, {"radius", b.radius.str()}};
}

FormalBall ball_from_json(const QSpace& s, const Json& j) {
  if (!j.is_object() || !j.contains("center") || !j.contains("radius"))
    throw ParseError("ball: expected {center, radius}");
  Rat r = parse_rat(as_string(j.at("radius"), "radius"));
  if (r < 0) throw Error("ball radius must be nonnegative");
  return FormalBall{resolve_label(s, as_string(j.at("center"), "center")), r};
}

Json set_to_json(const QSpace& s, const PointSet& ps) {
  Json j = Json::array();
  for (int x : ps.members()) j.push_back(s.labels[x]);
  return j;
}

PointSet set_from_json(const QSpace& s, const Json& j) {
  if (!j.is_array()) throw ParseError("set: expected an array of labels");
  PointSet ps(s.size());
  for (const auto& l : j) ps.add(resolve_label(s, as_string(l, "label")));
  return ps;
}

Json lens_to_json(const QSpace& s, const QuasiLens& l) {
  return Json{{"Q", set_to_json(s, l.q.pts)}, {"C", set_to_json(s, l.c.pts)}};
}

QuasiLens lens_from_json(const QSpace& s, const Json& j) {
  if (!j.is_object() || !j.contains("Q") || !j.contains("C"))
    throw ParseError("lens: expected {Q, C}");
  PointSet q = set_from_json(s, j.at("Q"));
  PointSet c = set_from_json(s, j.at("C"));
  auto violations = validate_quasi_lens(s, q, c);
  if (!violations.empty()) {
    std::string msg = "invalid quasi-lens:";
    for (const auto& v : violations) msg += " [" + v.describe() + "]";
    throw Error(msg);
  }
  return QuasiLens{UpperSet{q}, LowerSet{c}};
}

Json prevision_to_json(const QSpace& s, const GenPrevision& f) {
  Json gens = Json::array();
  for (const auto& g : f.gens) gens.push_back(valuation_to_json(s, g));
  return Json{
      {"kind", f.kind == PrevKind::Sublinear ? "sublinear" : "superlinear"},
      {"generators", std::move(gens)}};
}

GenPrevision prevision_from_json(const QSpace& s, const Json& j) {
  if (!j.is_object() || !j.contains("kind") || !j.contains("generators"))
    throw ParseError("prevision: expected {kind, generators}");
  std::string kind = as_string(j.at("kind"), "kind");
  GenPrevision f;
  if (kind == "sublinear")
    f.kind = PrevKind::Sublinear;
  else if (kind == "superlinear")
    f.kind = PrevKind::Superlinear;
  else
    throw ParseError("prevision: unknown kind " + kind);
  for (const auto& g : j.at("generators"))
    f.gens.push_back(valuation_from_json(s, g));
  if (f.gens.empty()) throw Error("prevision has no generators");
  f.norm_class();  // validates the shared normalization class
  return f;
}

Json fork_to_json(const QSpace& s, const Fork& f) {
  return Json{{"lower", prevision_to_json(s, f.lower)},
              {"upper", prevision_to_json(s, f.upper)}};
}

Fork fork_from_json(const QSpace& s, const Json& j) {
  if (!j.is_object() || !j.contains("lower") || !j.contains("upper"))
    throw ParseError("fork: expected {lower, upper}");
  Fork f{prevision_from_json(s, j.at("lower")),
         prevision_from_json(s, j.at("upper"))};
  if (f.lower.kind != PrevKind::Superlinear)
    throw Error("fork lower part must be superlinear");
  if (f.upper.kind != PrevKind::Sublinear)
    throw Error("fork upper part must be sublinear");
  return f;
}

Json plan_to_json(const QSpace& s, const TransportPlan& plan) {
  Json t = Json::array();
  for (const auto& [xy, mass] : plan.t)
    t.push_back(Json{{"from", s.labels[xy.first]},
                     {"to", s.labels[xy.second]},
                     {"mass", mass.str()}});
  Json j{{"t", std::move(t)}};
  if (plan.bound) {
    Json u = Json::object(), v = Json::object();
    for (const auto& [x, m] : plan.u) u[s.labels[x]] = m.str();
    for (const auto& [y, m] : plan.v) v[s.labels[y]] = m.str();
    j["u"] = std::move(u);
    j["v"] = std::move(v);
    j["bound"] = plan.bound->str();
  }
  return j;
}

Json moves_to_json(const QSpace& s, const std::vector<TransportMove>& moves) {
  Json j = Json::array();
  for (const auto& m : moves)
    j.push_back(Json{{"from", s.labels[m.from]},
                     {"to", s.labels[m.to]},
                     {"mass", m.mass.str()},
                     {"cost", m.cost.str()}});
  return j;
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  Json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw ParseError("malformed JSON in " + path + ": " + e.what());
  }
  return j;
}

}  // namespace qmet
