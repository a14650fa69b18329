#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>

#include "qmet/checks.hpp"
#include "qmet/json_io.hpp"
#include "qmet/powerdomain.hpp"
#include "qmet/prevision.hpp"

// Exit codes: 0 success, 1 usage, 2 domain failure or counterexample,
// 3 I/O or parse failure.
namespace {

constexpr int kOk = 0, kUsage = 1, kDomain = 2, kParse = 3;

using namespace qmet;

void emit(const Json& j, const std::string& out_path) {
  std::string text = j.dump(2);
  text += "\n";
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw ParseError("cannot write " + out_path);
    out << text;
  }
}

int cmd_validate(const std::string& space_file) {
  Json j = load_json_file(space_file);
  // Parse shape first, then report all axiom violations at once.
  if (!j.is_object() || !j.contains("labels") || !j.contains("dist"))
    throw ParseError("space: expected {labels, dist}");
  std::vector<std::string> labels;
  for (const auto& l : j.at("labels")) {
    if (!l.is_string()) throw ParseError("space: labels must be strings");
    labels.push_back(l.get<std::string>());
  }
  std::vector<std::vector<ExtRat>> dist;
  for (const auto& row : j.at("dist")) {
    std::vector<ExtRat> r;
    for (const auto& e : row) {
      if (!e.is_string()) throw ParseError("space: distances must be strings");
      r.push_back(parse_extrat(e.get<std::string>()));
    }
    dist.push_back(std::move(r));
  }
  try {
    QSpace s = validate_space(labels, dist);
    emit(Json{{"command", "validate"},
              {"file", space_file},
              {"valid", true},
              {"points", s.size()}},
         "");
    return kOk;
  } catch (const SpaceError& e) {
    Json v = Json::array();
    for (const auto& viol : e.violations) v.push_back(viol.describe(labels));
    emit(Json{{"command", "validate"},
              {"file", space_file},
              {"valid", false},
              {"violations", std::move(v)}},
         "");
    return kDomain;
  }
}

int cmd_dist(const std::string& kind, const std::string& space_file,
             const std::string& lhs_file, const std::string& rhs_file,
             const std::optional<Rat>& bound) {
  QSpace s = space_from_json(load_json_file(space_file));
  Json lhs = load_json_file(lhs_file);
  Json rhs = load_json_file(rhs_file);
  Json report{{"command", "dist"}, {"kind", kind}};
  if (bound) report["bound"] = bound->str();

  if (kind == "dkrh" || kind == "dkrh-a") {
    SimpleValuation mu = valuation_from_json(s, lhs);
    SimpleValuation nu = valuation_from_json(s, rhs);
    ExtRat value = dkrh_lp(s, mu, nu, bound);
    report["value"] = value.str();
    if (mu.is_normalized() && nu.is_normalized()) {
      // Both routes are computed and must agree exactly.
      ExtRat tv;
      std::optional<TransportPlan> plan;
      if (bound) {
        auto [v, p] = dkrha_transport(s, mu, nu, *bound);
        tv = ExtRat(v);
        plan = std::move(p);
      } else {
        auto [v, p] = dkrh_transport(s, mu, nu);
        tv = v;
        plan = std::move(p);
      }
      report["lp_certificates"] =
          Json{{"lipschitz_lp", value.str()}, {"transport_lp", tv.str()}};
      if (plan) {
        report["plan"] = plan_to_json(s, *plan);
        report["witness"] = report["plan"];
        // Move decomposition applies to exact transition matrices only;
        // bounded plans route part of the mass through slacks.
        if (!bound)
          report["moves"] = moves_to_json(s, decompose_plan(s, mu, *plan));
      }
      if (value != tv) {
        report["error"] = "route mismatch";
        emit(report, "");
        return kDomain;
      }
    }
    emit(report, "");
    return kOk;
  }
  if (kind == "dh") {
    LowerSet c{set_from_json(s, lhs)}, c2{set_from_json(s, rhs)};
    if (!is_downward_closed(s, c.pts) || !is_downward_closed(s, c2.pts))
      throw Error("dh operands must be downward-closed sets");
    report["value"] = dH(s, c, c2, bound).str();
    emit(report, "");
    return kOk;
  }
  if (kind == "dq") {
    UpperSet q{set_from_json(s, lhs)}, q2{set_from_json(s, rhs)};
    if (!is_upward_closed(s, q.pts) || !is_upward_closed(s, q2.pts))
      throw Error("dq operands must be upward-closed sets");
    report["value"] = dQ(s, q, q2, bound).str();
    emit(report, "");
    return kOk;
  }
  if (kind == "dp") {
    QuasiLens l = lens_from_json(s, lhs), l2 = lens_from_json(s, rhs);
    ExtRat v = dP(s, l, l2, bound);
    report["value"] = v.str();
    report["witness"] = Json{{"smyth", dQ(s, l.q, l2.q, bound).str()},
                             {"hoare", dH(s, l.c, l2.c, bound).str()}};
    emit(report, "");
    return kOk;
  }
  if (kind == "fork") {
    Fork f = fork_from_json(s, lhs), g = fork_from_json(s, rhs);
    Rat v = fork_distance(s, f, g, *bound);
    report["value"] = v.str();
    report["witness"] =
        Json{{"lower", dkrh_superlinear(s, f.lower, g.lower, *bound).str()},
             {"upper", dkrh_sublinear(s, f.upper, g.upper, *bound).str()}};
    emit(report, "");
    return kOk;
  }
  throw Error("unknown kind: " + kind);
}

int cmd_check(const std::string& suite, uint64_t seed, long trials,
              const std::string& space_file, const std::string& out_path) {
  std::optional<QSpace> space;
  if (!space_file.empty())
    space = space_from_json(load_json_file(space_file));

  std::vector<SuiteResult> results;
  if (suite == "all") {
    results = run_all_suites(seed, trials, space);
  } else {
    bool known = false;
    for (const auto& n : suite_names()) known = known || n == suite;
    if (!known) {
      std::cerr << "unknown suite: " << suite << "\n";
      return kUsage;
    }
    results.push_back(run_suite(suite, seed, trials, space));
  }

  bool ok = true;
  Json rj = Json::array();
  for (const auto& r : results) {
    ok = ok && r.ok();
    rj.push_back(r.to_json());
  }
  Json report{{"command", "check"}, {"suite", suite}, {"seed", seed},
              {"trials", trials},   {"results", rj},  {"ok", ok}};
  if (!space_file.empty()) report["space"] = space_file;
  emit(report, out_path);
  return ok ? kOk : kDomain;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact quasi-metrics on finite spaces: formal balls, "
               "Kantorovich-Rubinshtein-Hutchinson distances, powerdomains, "
               "previsions, and their property suites"};
  app.require_subcommand(1);

  std::string space_file, lhs_file, rhs_file, kind, suite, out_path;
  std::string bound_str;
  uint64_t seed = 0;
  bool have_seed_flag = false;
  long trials = 100;

  auto* validate = app.add_subcommand("validate", "Validate a space file");
  validate->add_option("space", space_file)->required();

  auto* dist = app.add_subcommand("dist", "Compute a quasi-metric value");
  dist->add_option("--kind", kind)
      ->required()
      ->check(CLI::IsMember({"dkrh", "dkrh-a", "dh", "dq", "dp", "fork"}));
  dist->add_option("--bound", bound_str);
  dist->add_option("space", space_file)->required();
  dist->add_option("lhs", lhs_file)->required();
  dist->add_option("rhs", rhs_file)->required();

  auto* check = app.add_subcommand("check", "Run a seeded property suite");
  check->add_option("suite", suite)->required();
  check->add_option("--space", space_file);
  auto* seed_opt = check->add_option("--seed", seed);
  check->add_option("--trials", trials);
  check->add_option("--out", out_path);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }
  have_seed_flag = seed_opt->count() > 0;

  try {
    if (validate->parsed()) return cmd_validate(space_file);
    if (dist->parsed()) {
      std::optional<qmet::Rat> bound;
      if (!bound_str.empty()) {
        bound = qmet::parse_rat(bound_str);
        if (*bound <= 0) {
          std::cerr << "--bound must be positive\n";
          return kUsage;
        }
      }
      if ((kind == "dkrh-a" || kind == "fork") && !bound) {
        std::cerr << "--bound is required for kind " << kind << "\n";
        return kUsage;
      }
      return cmd_dist(kind, space_file, lhs_file, rhs_file, bound);
    }
    if (check->parsed()) {
      if (!have_seed_flag) {
        if (const char* env = std::getenv("QMET_SEED"))
          seed = std::strtoull(env, nullptr, 10);
      }
      if (trials < 1) {
        std::cerr << "--trials must be >= 1\n";
        return kUsage;
      }
      return cmd_check(suite, seed, trials, space_file, out_path);
    }
  } catch (const qmet::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kParse;
  } catch (const qmet::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kDomain;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kDomain;
  }
  return kUsage;
}
