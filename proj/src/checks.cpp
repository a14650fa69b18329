#include "qmet/checks.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "qmet/lp.hpp"
#include "qmet/powerdomain.hpp"
#include "qmet/prevision.hpp"

namespace qmet {

long SuiteResult::passes(const std::string& property) const {
  for (const auto& [name, count] : pass_counts)
    if (name == property) return count;
  return 0;
}

Json SuiteResult::to_json() const {
  Json props = Json::object();
  for (const auto& [name, count] : pass_counts) props[name] = count;
  Json fails = Json::array();
  for (const auto& f : failures)
    fails.push_back(Json{
        {"property", f.property}, {"trial", f.trial}, {"detail", f.detail}});
  return Json{{"suite", suite},
              {"trials", trials},
              {"passes", std::move(props)},
              {"failures", std::move(fails)},
              {"ok", ok()}};
}

namespace {

class Checker {
public:
  explicit Checker(std::string suite) { result_.suite = std::move(suite); }

  void check(const std::string& property, long trial, bool ok,
             const std::function<Json()>& detail = nullptr) {
    auto it = index_.find(property);
    if (it == index_.end()) {
      index_[property] = result_.pass_counts.size();
      result_.pass_counts.emplace_back(property, 0);
      it = index_.find(property);
    }
    if (ok) {
      ++result_.pass_counts[it->second].second;
    } else if (!failed_.count(property)) {
      failed_.insert(property);
      result_.failures.push_back(
          {property, trial, detail ? detail() : Json::object()});
    }
  }

  SuiteResult take(long trials) {
    result_.trials = trials;
    // Deterministic report order regardless of control flow.
    std::sort(result_.failures.begin(), result_.failures.end(),
              [](const auto& a, const auto& b) {
                return a.property < b.property;
              });
    return std::move(result_);
  }

private:
  SuiteResult result_;
  std::map<std::string, size_t> index_;
  std::set<std::string> failed_;
};

QSpace pick_space(Rng& rng, const std::optional<QSpace>& fixed, int max_n) {
  if (fixed) return *fixed;
  return gen_space(rng, max_n);
}

Json space_detail(const QSpace& s, const std::string& msg) {
  return Json{{"space", space_to_json(s)}, {"info", msg}};
}

// ---------------------------------------------------------------- axioms

void suite_axioms(Checker& ck, Rng& rng, long trials,
                  const std::optional<QSpace>& fixed) {
  for (long trial = 0; trial < trials; ++trial) {
    QSpace s = pick_space(rng, fixed, 6);
    ck.check("space_axioms", trial, check_space_axioms(s.dist).empty(),
             [&] { return space_detail(s, "generated space invalid"); });

    bool po = true;
    for (int x = 0; x < s.size() && po; ++x) po = s.leq(x, x);
    for (int x = 0; x < s.size() && po; ++x)
      for (int y = 0; y < s.size() && po; ++y) {
        if (x != y && s.leq(x, y) && s.leq(y, x)) po = false;
        for (int z = 0; z < s.size() && po; ++z)
          if (s.leq(x, y) && s.leq(y, z) && !s.leq(x, z)) po = false;
      }
    ck.check("specialization_partial_order", trial, po,
             [&] { return space_detail(s, "specialization not a partial order"); });

    QSpace op = opposite(s);
    bool ok = check_space_axioms(op.dist).empty();
    ok = ok && opposite(op).dist == s.dist;
    ck.check("opposite_involution_valid", trial, ok,
             [&] { return space_detail(s, "opposite failed"); });

    ck.check("product_sq_valid", trial,
             check_space_axioms(product_sq(s).dist).empty(),
             [&] { return space_detail(s, "square space invalid"); });

    QSpace t = s;
    for (auto& l : t.labels) l += "'";
    QSpace cp = coproduct(s, t);
    ok = check_space_axioms(cp.dist).empty();
    for (int x = 0; x < s.size() && ok; ++x)
      for (int y = 0; y < t.size() && ok; ++y)
        ok = cp.d(x, s.size() + y).is_inf() && cp.d(s.size() + y, x).is_inf();
    ck.check("coproduct_valid", trial, ok,
             [&] { return space_detail(s, "coproduct failed"); });

    {
      int n = 2 + static_cast<int>(rng.below(5));
      std::vector<std::string> labels;
      for (int i = 0; i < n; ++i) labels.push_back("v" + std::to_string(i));
      std::vector<WeightedEdge> edges;
      long ne = rng.below(2 * n + 1);
      for (long e = 0; e < ne; ++e)
        edges.push_back({static_cast<int>(rng.below(n)),
                         static_cast<int>(rng.below(n)),
                         Rat(rng.below(4)) / 2});
      bool good;
      try {
        QSpace g = from_digraph(labels, edges);
        good = check_space_axioms(g.dist).empty();
      } catch (const SpaceError& e) {
        good = !e.violations.empty();
        for (const auto& v : e.violations)
          good = good && v.kind == SpaceViolationKind::T0;
      }
      ck.check("digraph_closure", trial, good, [&] {
        return Json{{"info", "digraph closure violated an axiom"}};
      });
    }
  }
}

// --------------------------------------------------------------- duality

Json pair_detail(const QSpace& s, const SimpleValuation& mu,
                 const SimpleValuation& nu, const std::string& msg) {
  return Json{{"space", space_to_json(s)},
              {"lhs", valuation_to_json(s, mu)},
              {"rhs", valuation_to_json(s, nu)},
              {"info", msg}};
}

// Random transition matrix from mu to nu by a greedy fill over shuffled
// supports; always a valid plan, possibly using infinite-distance pairs.
TransportPlan random_plan(Rng& rng, const SimpleValuation& mu,
                          const SimpleValuation& nu) {
  std::vector<std::pair<int, Rat>> rows(mu.w.begin(), mu.w.end());
  std::vector<std::pair<int, Rat>> cols(nu.w.begin(), nu.w.end());
  for (size_t i = rows.size(); i > 1; --i)
    std::swap(rows[i - 1], rows[rng.below(static_cast<long>(i))]);
  for (size_t i = cols.size(); i > 1; --i)
    std::swap(cols[i - 1], cols[rng.below(static_cast<long>(i))]);
  TransportPlan plan;
  size_t i = 0, j = 0;
  while (i < rows.size() && j < cols.size()) {
    Rat m = std::min(rows[i].second, cols[j].second);
    if (m > 0) plan.t[{rows[i].first, cols[j].first}] += m;
    rows[i].second -= m;
    cols[j].second -= m;
    if (rows[i].second == 0) ++i;
    if (j < cols.size() && cols[j].second == 0) ++j;
  }
  return plan;
}

void suite_duality(Checker& ck, Rng& rng, long trials,
                   const std::optional<QSpace>& fixed) {
  const Rat bounds[3] = {Rat(1) / 2, Rat(1), Rat(3)};
  for (long trial = 0; trial < trials; ++trial) {
    QSpace s = pick_space(rng, fixed, 6);
    SimpleValuation mu = gen_valuation(rng, s, MassClass::Normalized);
    SimpleValuation nu = rng.chance(1, 4)
                             ? mu
                             : gen_valuation(rng, s, MassClass::Normalized);

    ExtRat lp = dkrh_lp(s, mu, nu);
    auto [tv, plan] = dkrh_transport(s, mu, nu);
    bool ok = lp == tv && plan.has_value() == !tv.is_inf();
    if (plan) {
      ok = ok && plan->weight(s, std::nullopt) == tv;
      ExtRat total(0);
      for (const auto& m : decompose_plan(s, mu, *plan)) total += m.cost;
      ok = ok && total == tv;
    }
    ck.check("kantorovich_duality", trial, ok, [&] {
      return pair_detail(s, mu, nu,
                         "lp=" + lp.str() + " transport=" + tv.str());
    });

    {
      bool bok = true;
      ExtRat prev(0);
      for (const Rat& a : bounds) {
        ExtRat v = dkrh_lp(s, mu, nu, a);
        auto [bv, bplan] = dkrha_transport(s, mu, nu, a);
        bok = bok && v == ExtRat(bv) && v <= ExtRat(a);
        bok = bok && bplan.weight(s, a) == ExtRat(bv);
        bok = bok && prev <= v;
        prev = v;
      }
      bok = bok && prev <= lp;
      if (!lp.is_inf()) {
        // dKRH is attained at a polytope vertex, whose values are sums
        // of at most n-1 finite distances, so a large enough bound
        // recovers the unbounded value exactly.
        Rat big(1);
        for (int x = 0; x < s.size(); ++x)
          for (int y = 0; y < s.size(); ++y)
            if (!s.d(x, y).is_inf()) big = std::max(big, s.d(x, y).value());
        big *= s.size();
        bok = bok && dkrh_lp(s, mu, nu, big) == lp;
      }
      ck.check("bounded_duality_and_monotone", trial, bok,
               [&] { return pair_detail(s, mu, nu, "bounded route mismatch"); });
    }

    {
      SimpleValuation rho = gen_valuation(rng, s, MassClass::General);
      ck.check("dkrh_self_zero", trial,
               dkrh_lp(s, mu, mu) == ExtRat(0) &&
                   dkrh_lp(s, mu, mu, Rat(1)) == ExtRat(0) &&
                   dkrh_lp(s, rho, rho) == ExtRat(0),
               [&] { return pair_detail(s, mu, mu, "self distance not 0"); });
    }

    {
      SimpleValuation xi = gen_valuation(rng, s, MassClass::Normalized);
      bool tri = dkrh_lp(s, mu, xi) <= dkrh_lp(s, mu, nu) + dkrh_lp(s, nu, xi);
      tri = tri && dkrh_lp(s, mu, xi, Rat(1)) <=
                       dkrh_lp(s, mu, nu, Rat(1)) + dkrh_lp(s, nu, xi, Rat(1));
      ck.check("dkrh_triangle", trial, tri,
               [&] { return pair_detail(s, mu, nu, "triangle violated"); });
    }

    {
      bool t0 = !(dkrh_lp(s, mu, nu) == ExtRat(0) &&
                  dkrh_lp(s, nu, mu) == ExtRat(0)) ||
                mu == nu;
      t0 = t0 && (!(dkrh_lp(s, mu, nu, Rat(1)) == ExtRat(0) &&
                    dkrh_lp(s, nu, mu, Rat(1)) == ExtRat(0)) ||
                  mu == nu);
      ck.check("dkrh_t0", trial, t0,
               [&] { return pair_detail(s, mu, nu, "two-way zero, distinct"); });
    }

    {
      bool ok2 = true;
      for (int x = 0; x < s.size() && ok2; ++x)
        for (int y = 0; y < s.size() && ok2; ++y) {
          SimpleValuation dx = SimpleValuation::dirac(x);
          SimpleValuation dy = SimpleValuation::dirac(y);
          ok2 = dkrh_lp(s, dx, dy) == s.d(x, y);
          ok2 = ok2 && dkrh_lp(s, dx, dy, Rat(1)) == min(ExtRat(1), s.d(x, y));
        }
      ck.check("dirac_identity", trial, ok2,
               [&] { return space_detail(s, "dirac distance mismatch"); });
    }

    {
      TransportPlan rp = random_plan(rng, mu, nu);
      ck.check("plan_weight_dominates", trial,
               rp.weight(s, std::nullopt) >= lp,
               [&] { return pair_detail(s, mu, nu, "plan below optimum"); });
    }

    {
      QSpace ms = gen_metric_space(rng, 5);
      SimpleValuation a = gen_valuation(rng, ms, MassClass::Normalized);
      SimpleValuation b = gen_valuation(rng, ms, MassClass::Normalized);
      bool sym = dkrh_lp(ms, a, b, Rat(1)) == dkrh_lp(ms, b, a, Rat(1)) &&
                 dkrh_lp(ms, a, b) == dkrh_lp(ms, b, a);
      ck.check("metric_symmetry", trial, sym,
               [&] { return pair_detail(ms, a, b, "asymmetric on a metric"); });
    }

    {
      Rat r = gen_radius(rng), t = gen_radius(rng);
      bool want = t <= r && dkrh_lp(s, mu, nu) <= ExtRat(r - t);
      bool wantb =
          t <= r && dkrh_lp(s, mu, nu, Rat(1)) <= ExtRat(r - t);
      bool got = ball_leq_valuations(s, mu, r, nu, t);
      bool gotb = ball_leq_valuations(s, mu, r, nu, t, Rat(1));
      ck.check("ball_leq_valuations_consistent", trial,
               want == got && wantb == gotb,
               [&] { return pair_detail(s, mu, nu, "ball order mismatch"); });
    }

    {
      bool ok3 = true;
      try {
        ExtRat d = dkrh_lp(s, nu, mu);
        std::vector<std::pair<SimpleValuation, Rat>> chain;
        std::vector<ChainProbe> probes;
        probes.push_back({envelope(s, gen_func(rng, s, false), Rat(1)), Rat(1)});
        probes.push_back({envelope(s, gen_func(rng, s, false), Rat(2)), Rat(2)});
        chain.push_back({mu, Rat(2)});
        chain.push_back({mu, Rat(1)});  // constant chain, radii decreasing
        ChainTable t1 = naive_sup_chain(s, chain, probes);
        ok3 = t1.r == Rat(1);
        if (!d.is_inf()) {
          chain.clear();
          chain.push_back({nu, d.is_inf() ? Rat(0) : d.value() + 1});
          chain.push_back({mu, Rat(1)});
          ChainTable t2 = naive_sup_chain(s, chain, probes);
          for (size_t i = 0; i < probes.size(); ++i)
            ok3 = ok3 && t2.values[i] == integrate(s, mu, probes[i].h);
        }
      } catch (const std::exception&) {
        ok3 = false;
      }
      ck.check("naive_sup_chain_top", trial, ok3,
               [&] { return pair_detail(s, mu, nu, "naive sup mismatch"); });
    }
  }
}

// -------------------------------------------------------------- envelopes

void suite_envelopes(Checker& ck, Rng& rng, long trials,
                     const std::optional<QSpace>& fixed) {
  const Rat alphas[3] = {Rat(1) / 2, Rat(1), Rat(2)};
  for (long trial = 0; trial < trials; ++trial) {
    QSpace s = pick_space(rng, fixed, 6);
    Rat alpha = alphas[rng.below(3)];
    ExtFunc f = gen_func(rng, s, true);
    ExtFunc env = envelope(s, f, alpha);

    bool ok = is_alpha_lipschitz(s, env, alpha) && pointwise_leq(env, f);
    ExtFunc minor = envelope(s, pointwise_min(f, gen_func(rng, s, true)), alpha);
    ok = ok && pointwise_leq(minor, env);
    ck.check("envelope_largest_below", trial, ok, [&] {
      return Json{{"space", space_to_json(s)},
                  {"f", func_to_json(s, f)},
                  {"alpha", alpha.str()}};
    });

    {
      ExtFunc zf = envelope(s, f, Rat(0));
      bool z = is_alpha_lipschitz(s, zf, Rat(0)) && pointwise_leq(zf, f) &&
               pointwise_leq(envelope(s, pointwise_min(f, zf), Rat(0)), zf);
      ck.check("envelope_alpha_zero", trial, z, [&] {
        return Json{{"space", space_to_json(s)}, {"f", func_to_json(s, f)}};
      });
    }

    {
      ExtFunc g = envelope(s, gen_func(rng, s, true), alpha);
      Rat c(1 + rng.below(3));
      bool laws = is_alpha_lipschitz(s, scale(c, env), c * alpha);
      laws = laws && is_alpha_lipschitz(s, add(env, g), alpha + alpha);
      laws = laws && is_alpha_lipschitz(s, pointwise_min(env, g), alpha);
      laws = laws && is_alpha_lipschitz(s, pointwise_max(env, g), alpha);
      laws = laws && is_alpha_lipschitz(s, ExtFunc::constant(s.size(),
                                                             ExtRat(c)),
                                        alpha);
      ck.check("lipschitz_closure_laws", trial, laws, [&] {
        return Json{{"space", space_to_json(s)}, {"alpha", alpha.str()}};
      });
    }

    {
      // env is alpha-Lipschitz hence beta-Lipschitz for beta >= alpha,
      // and both envelopes restore it unchanged.
      Rat beta = alpha * 2;
      bool hb = is_alpha_lipschitz(s, env, beta) &&
                envelope(s, env, alpha) == env && envelope(s, env, beta) == env;
      ck.check("envelope_of_member_fixed", trial, hb, [&] {
        return Json{{"space", space_to_json(s)}, {"alpha", alpha.str()}};
      });
    }

    {
      ExtFunc s1 = step_envelope(s, f, alpha, 1);
      ExtFunc s2 = step_envelope(s, f, alpha, 2);
      ExtFunc s3 = step_envelope(s, f, alpha, 3);
      bool st = pointwise_leq(s1, s2) && pointwise_leq(s2, s3) &&
                pointwise_leq(s3, env);
      // Dyadic-exact case: multiples of 1/2^K bounded by K.
      const int K = 2;
      ExtFunc fd(s.size());
      for (int x = 0; x < s.size(); ++x)
        fd.v[x] = ExtRat(Rat(rng.below(4 * K + 1)) / 4);
      st = st && step_envelope(s, fd, alpha, K) == envelope(s, fd, alpha);
      ck.check("step_envelope_bounds", trial, st, [&] {
        return Json{{"space", space_to_json(s)},
                    {"f", func_to_json(s, f)},
                    {"alpha", alpha.str()}};
      });
    }

    {
      int x = static_cast<int>(rng.below(s.size()));
      ExtRat b = rng.chance(1, 5) ? ExtRat::infinity()
                                  : ExtRat(gen_radius(rng));
      ExtFunc sb = sea(s, x, b);
      bool sea_ok = is_alpha_lipschitz(s, sb, Rat(1)) && sb.v[x] == b;
      sea_ok = sea_ok && sea(s, x, ExtRat(0)) ==
                             ExtFunc::constant(s.size(), ExtRat(0));
      ck.check("sea_lipschitz", trial, sea_ok, [&] {
        return Json{{"space", space_to_json(s)}, {"x", s.labels[x]}};
      });
    }

    {
      std::vector<LipschitzConstraint> cons;
      PointSet pts = gen_pointset(rng, s, false);
      for (int p : pts.members())
        cons.push_back({p, ExtRat(gen_radius(rng))});
      ExtFunc fmin = min_lip_above(s, cons);
      bool mok = is_alpha_lipschitz(s, fmin, Rat(1));
      for (const auto& c : cons) mok = mok && fmin.v[c.point] >= c.target;
      if (cons.empty()) mok = mok && fmin == ExtFunc::constant(s.size(), ExtRat(0));
      ExtFunc g = envelope(s, gen_func(rng, s, false), Rat(1));
      bool meets = true;
      for (const auto& c : cons) meets = meets && g.v[c.point] >= c.target;
      if (meets) mok = mok && pointwise_leq(fmin, g);
      ck.check("min_lip_above_smallest", trial, mok,
               [&] { return Json{{"space", space_to_json(s)}}; });
    }

    {
      LowerSet c = lower_closure(s, gen_pointset(rng, s, false));
      int x = static_cast<int>(rng.below(s.size()));
      ExtRat d = dist_to_closed(s, x, c);
      bool dok = (d == ExtRat(0)) == c.pts.contains(x);
      if (c.pts.empty()) dok = dok && d.is_inf();
      int y = static_cast<int>(rng.below(s.size()));
      dok = dok && d <= s.d(x, y) + dist_to_closed(s, y, c);
      ck.check("dist_to_closed_props", trial, dok,
               [&] { return Json{{"space", space_to_json(s)}}; });
    }
  }
}

// ------------------------------------------------------------------ monad

void suite_monad(Checker& ck, Rng& rng, long trials,
                 const std::optional<QSpace>& fixed) {
  for (long trial = 0; trial < trials; ++trial) {
    QSpace s = pick_space(rng, fixed, 6);

    std::vector<DoubleBall> doubles;
    std::vector<TripleBall> triples;
    for (int i = 0; i < 500; ++i)
      doubles.push_back({gen_ball(rng, s), gen_radius(rng)});
    for (int i = 0; i < 200; ++i)
      triples.push_back(
          {DoubleBall{gen_ball(rng, s), gen_radius(rng)}, gen_radius(rng)});
    MonadLawReport rep = check_monad_laws(s, doubles, triples);
    ck.check("monad_laws", trial, rep.ok(), [&] {
      Json j = space_detail(s, "monad law failure");
      if (!rep.failures.empty()) {
        j["law"] = rep.failures.front().law;
        j["witness"] = rep.failures.front().witness;
      }
      return j;
    });

    {
      FormalBall a = gen_ball(rng, s), b = gen_ball(rng, s),
                 c = gen_ball(rng, s);
      bool po = ball_leq(s, a, a);
      if (ball_leq(s, a, b) && ball_leq(s, b, a)) po = po && a == b;
      if (ball_leq(s, a, b) && ball_leq(s, b, c)) po = po && ball_leq(s, a, c);
      po = po && (dplus(s, a, b) == ExtRat(0)) == ball_leq(s, a, b);
      if (way_below(s, a, b)) po = po && ball_leq(s, a, b);
      if (ball_leq(s, c, a) && way_below(s, a, b))
        po = po && way_below(s, c, b);
      ck.check("ball_order_props", trial, po,
               [&] { return space_detail(s, "ball order failure"); });
    }

    {
      // Materialize the ball space over a small radius grid and check
      // that d+ is itself a quasi-metric.
      std::vector<Rat> radii = {Rat(0), Rat(1) / 2, Rat(1)};
      std::vector<FormalBall> pts;
      for (int x = 0; x < s.size(); ++x)
        for (const Rat& r : radii) pts.push_back({x, r});
      std::vector<std::vector<ExtRat>> dist(pts.size(),
                                            std::vector<ExtRat>(pts.size()));
      for (size_t i = 0; i < pts.size(); ++i)
        for (size_t j = 0; j < pts.size(); ++j)
          dist[i][j] = dplus(s, pts[i], pts[j]);
      ck.check("dplus_is_quasi_metric", trial,
               check_space_axioms(dist).empty(),
               [&] { return space_detail(s, "d+ violates an axiom"); });
    }

    {
      std::vector<FormalBall> fam;
      int k = 1 + static_cast<int>(rng.below(3));
      for (int i = 0; i < k; ++i) fam.push_back(gen_ball(rng, s));
      LubResult r = lub_formal_balls(s, fam);
      bool ok = true;
      if (r.status == LubResult::Found) {
        for (const auto& b : fam) ok = ok && ball_leq(s, b, r.ball);
        for (int y = 0; y < s.size() && ok; ++y)
          for (const Rat& rad :
               {Rat(0), Rat(1) / 4, Rat(1) / 2, Rat(1), Rat(2), Rat(3)}) {
            FormalBall cand{y, rad};
            bool ub = true;
            for (const auto& b : fam) ub = ub && ball_leq(s, b, cand);
            if (ub) ok = ok && ball_leq(s, r.ball, cand);
          }
      } else {
        // Re-derive the candidate set; it must be empty (no upper
        // bound) or have no least element.
        std::vector<FormalBall> cands;
        for (int y = 0; y < s.size(); ++y) {
          std::optional<Rat> smax;
          bool feas = true;
          for (const auto& b : fam) {
            if (s.d(b.center, y).is_inf()) {
              feas = false;
              break;
            }
            Rat allowed = b.radius - s.d(b.center, y).value();
            if (!smax || allowed < *smax) smax = allowed;
          }
          if (feas && smax && *smax >= 0) cands.push_back({y, *smax});
        }
        if (r.status == LubResult::NoUpperBound)
          ok = cands.empty();
        else {
          ok = !cands.empty();
          for (const auto& c : cands) {
            bool least = true;
            for (const auto& o : cands) least = least && ball_leq(s, c, o);
            ok = ok && !least;
          }
        }
      }
      ck.check("lub_consistent", trial, ok,
               [&] { return space_detail(s, "lub search inconsistent"); });
    }

    {
      // A descending chain of balls around one center has its top as lub.
      FormalBall top = gen_ball(rng, s);
      std::vector<FormalBall> chain = {FormalBall{top.center, top.radius + 2},
                                       FormalBall{top.center, top.radius + 1},
                                       top};
      LubResult r = lub_formal_balls(s, chain);
      ck.check("lub_chain_top", trial,
               r.status == LubResult::Found && r.ball == top,
               [&] { return space_detail(s, "chain lub mismatch"); });
    }
  }
}

// ------------------------------------------------------------ powerdomains

void suite_powerdomains(Checker& ck, Rng& rng, long trials,
                        const std::optional<QSpace>& fixed) {
  for (long trial = 0; trial < trials; ++trial) {
    QSpace s = pick_space(rng, fixed, 6);
    Rat a = Rat(1 + rng.below(3)) / 2;

    LowerSet c1 = lower_closure(s, gen_pointset(rng, s, false));
    LowerSet c2 = lower_closure(s, gen_pointset(rng, s, false));
    LowerSet c3 = lower_closure(s, gen_pointset(rng, s, false));
    bool h = dH(s, c1, c1) == ExtRat(0) &&
             dH(s, c1, c3) <= dH(s, c1, c2) + dH(s, c2, c3) &&
             dH(s, c1, c2, a) == min(ExtRat(a), dH(s, c1, c2));
    ck.check("dH_axioms", trial, h,
             [&] { return space_detail(s, "dH axiom failure"); });

    UpperSet q1 = upper_closure(s, gen_pointset(rng, s, true));
    UpperSet q2 = upper_closure(s, gen_pointset(rng, s, true));
    UpperSet q3 = upper_closure(s, gen_pointset(rng, s, true));
    bool qx = dQ(s, q1, q1) == ExtRat(0) &&
              dQ(s, q1, q3) <= dQ(s, q1, q2) + dQ(s, q2, q3) &&
              dQ(s, q1, q2, a) == min(ExtRat(a), dQ(s, q1, q2));
    ck.check("dQ_axioms", trial, qx,
             [&] { return space_detail(s, "dQ axiom failure"); });

    QuasiLens l1 = make_quasi_lens(s, gen_pointset(rng, s, true));
    QuasiLens l2 = make_quasi_lens(s, gen_pointset(rng, s, true));
    QuasiLens l3 = make_quasi_lens(s, gen_pointset(rng, s, true));
    bool p = dP(s, l1, l1) == ExtRat(0) &&
             dP(s, l1, l3) <= dP(s, l1, l2) + dP(s, l2, l3) &&
             dP(s, l1, l2, a) == min(ExtRat(a), dP(s, l1, l2));
    ck.check("dP_axioms", trial, p,
             [&] { return space_detail(s, "dP axiom failure"); });

    {
      bool t0 = true;
      if (dH(s, c1, c2) == ExtRat(0) && dH(s, c2, c1) == ExtRat(0))
        t0 = c1.pts == c2.pts;
      if (dQ(s, q1, q2) == ExtRat(0) && dQ(s, q2, q1) == ExtRat(0))
        t0 = t0 && q1.pts == q2.pts;
      if (dP(s, l1, l2) == ExtRat(0) && dP(s, l2, l1) == ExtRat(0))
        t0 = t0 && l1.q.pts == l2.q.pts && l1.c.pts == l2.c.pts;
      ck.check("powerdomain_t0", trial, t0,
               [&] { return space_detail(s, "two-way zero, distinct sets"); });
    }

    {
      QSpace s4 = fixed ? *fixed : gen_space(rng, 4);
      bool spec = true;
      auto lowers = all_lower_sets(s4);
      for (const auto& ca : lowers)
        for (const auto& cb : lowers)
          spec = spec && ((dH(s4, LowerSet{ca}, LowerSet{cb}) == ExtRat(0)) ==
                          ca.subset_of(cb));
      auto uppers = all_upper_sets(s4);
      for (const auto& qa : uppers)
        for (const auto& qb : uppers) {
          if (qa.empty() || qb.empty()) continue;
          spec = spec && ((dQ(s4, UpperSet{qa}, UpperSet{qb}) == ExtRat(0)) ==
                          qb.subset_of(qa));
        }
      ck.check("specialization_exhaustive", trial, spec,
               [&] { return space_detail(s4, "dH/dQ zero-spec mismatch"); });
    }

    {
      Rat r = gen_radius(rng), r2 = gen_radius(rng);
      bool bh = ball_leq_H(s, c1, r, c2, r2) ==
                (r2 <= r && dH(s, c1, c2) <= ExtRat(r - r2));
      bool bq = ball_leq_Q(s, q1, r, q2, r2) ==
                (r2 <= r && dQ(s, q1, q2) <= ExtRat(r - r2));
      ck.check("ball_leq_consistent", trial, bh && bq,
               [&] { return space_detail(s, "ball-order characterization"); });
    }

    {
      bool lens_ok = validate_quasi_lens(s, l1.q.pts, l1.c.pts).empty();
      PointSet core = l1.q.pts.intersect(l1.c.pts);
      QuasiLens rebuilt = make_quasi_lens(s, core);
      lens_ok = lens_ok && rebuilt.q.pts == l1.q.pts &&
                rebuilt.c.pts == l1.c.pts;
      ck.check("lens_make_valid", trial, lens_ok,
               [&] { return space_detail(s, "make_quasi_lens invalid"); });
    }

    {
      // The neighborhood condition quantified over all open U containing
      // Q is equivalent to its instance at U = Q (the minimal one).
      QSpace s5 = fixed ? *fixed : gen_space(rng, 5);
      PointSet qa = upper_closure_set(s5, gen_pointset(rng, s5, true));
      PointSet cb = lower_closure_set(s5, gen_pointset(rng, s5, true));
      bool at_q =
          cb.subset_of(lower_closure_set(s5, qa.intersect(cb)));
      bool quantified = true;
      for (const PointSet& u : all_upper_sets(s5)) {
        if (!qa.subset_of(u)) continue;
        quantified =
            quantified && cb.subset_of(lower_closure_set(s5, u.intersect(cb)));
      }
      ck.check("lens_neighborhood_reduction", trial, at_q == quantified,
               [&] { return space_detail(s5, "U=Q reduction mismatch"); });
    }
  }
}

// ------------------------------------------------------------- isometries

void suite_isometries(Checker& ck, Rng& rng, long trials,
                      const std::optional<QSpace>& fixed) {
  for (long trial = 0; trial < trials; ++trial) {
    QSpace s = pick_space(rng, fixed, 5);
    Rat a = Rat(1 + rng.below(3)) / 2;

    LowerSet c1 = lower_closure(s, gen_pointset(rng, s, true));
    LowerSet c2 = lower_closure(s, gen_pointset(rng, s, true));
    GenPrevision fc1 = GenPrevision::diracs(PrevKind::Sublinear, c1.pts);
    GenPrevision fc2 = GenPrevision::diracs(PrevKind::Sublinear, c2.pts);
    bool hoare = dkrh_sublinear(s, fc1, fc2) == dH(s, c1, c2) &&
                 dkrh_sublinear(s, fc1, fc2, a) == dH(s, c1, c2, a);
    ck.check("hoare_isometry", trial, hoare,
             [&] { return space_detail(s, "dH != dKRH on F^C"); });

    UpperSet q1 = upper_closure(s, gen_pointset(rng, s, true));
    UpperSet q2 = upper_closure(s, gen_pointset(rng, s, true));
    GenPrevision fq1 = GenPrevision::diracs(PrevKind::Superlinear, q1.pts);
    GenPrevision fq2 = GenPrevision::diracs(PrevKind::Superlinear, q2.pts);
    bool smyth =
        ExtRat(dkrh_superlinear(s, fq1, fq2, a)) == dQ(s, q1, q2, a);
    ck.check("smyth_isometry", trial, smyth,
             [&] { return space_detail(s, "dQ^a != dKRH^a on F_Q"); });

    QuasiLens l1 = make_quasi_lens(s, gen_pointset(rng, s, true));
    QuasiLens l2 = make_quasi_lens(s, gen_pointset(rng, s, true));
    Fork f1 = fork_from_lens(s, l1);
    Fork f2 = fork_from_lens(s, l2);
    bool plotkin = ExtRat(fork_distance(s, f1, f2, a)) == dP(s, l1, l2, a);
    ck.check("plotkin_isometry", trial, plotkin,
             [&] { return space_detail(s, "dP^a != fork distance"); });

    {
      QSpace ms = gen_metric_space(rng, 5);
      PointSet e1 = gen_pointset(rng, ms, true);
      PointSet e2 = gen_pointset(rng, ms, true);
      ExtRat dp = dP(ms, make_quasi_lens(ms, e1), make_quasi_lens(ms, e2));
      ExtRat fwd(0), bwd(0);
      for (int x : e1.members()) {
        ExtRat best = ExtRat::infinity();
        for (int y : e2.members()) best = min(best, ms.d(x, y));
        fwd = max(fwd, best);
      }
      for (int y : e2.members()) {
        ExtRat best = ExtRat::infinity();
        for (int x : e1.members()) best = min(best, ms.d(x, y));
        bwd = max(bwd, best);
      }
      ck.check("hausdorff_recovery", trial, dp == max(fwd, bwd),
               [&] { return space_detail(ms, "dP != two-sided Hausdorff"); });
    }

    {
      SimpleValuation g1 = gen_valuation(rng, s, MassClass::Normalized);
      SimpleValuation g2 = gen_valuation(rng, s, MassClass::Normalized);
      SimpleValuation mix;
      for (const auto& [p, w] : g1.w) mix.w[p] += w / 2;
      for (const auto& [p, w] : g2.w) mix.w[p] += w / 2;
      GenPrevision sub{PrevKind::Sublinear, {g1, g2}};
      GenPrevision sub2{PrevKind::Sublinear, {g1, g2, mix}};
      GenPrevision sup{PrevKind::Superlinear, {g1, g2}};
      GenPrevision sup2{PrevKind::Superlinear, {g1, g2, mix}};
      GenPrevision other{PrevKind::Sublinear,
                         {gen_valuation(rng, s, MassClass::Normalized)}};
      GenPrevision others{PrevKind::Superlinear, other.gens};
      bool hull = true;
      for (int i = 0; i < 3; ++i) {
        ExtFunc h = gen_monotone_func(rng, s, Rat(1));
        hull = hull && eval_prevision(s, sub, h) == eval_prevision(s, sub2, h);
        hull = hull && eval_prevision(s, sup, h) == eval_prevision(s, sup2, h);
      }
      hull = hull && dkrh_sublinear(s, sub, other, a) ==
                         dkrh_sublinear(s, sub2, other, a);
      hull = hull && dkrh_sublinear(s, other, sub, a) ==
                         dkrh_sublinear(s, other, sub2, a);
      hull = hull && dkrh_superlinear(s, sup, others, a) ==
                         dkrh_superlinear(s, sup2, others, a);
      hull = hull && dkrh_superlinear(s, others, sup, a) ==
                         dkrh_superlinear(s, others, sup2, a);
      // Two-way zero distance coincides with evaluation equivalence:
      // adding a hull point is invisible both ways.
      hull = hull && dkrh_sublinear(s, sub, sub2, a) == ExtRat(0) &&
             dkrh_sublinear(s, sub2, sub, a) == ExtRat(0) &&
             dkrh_superlinear(s, sup, sup2, a) == 0 &&
             dkrh_superlinear(s, sup2, sup, a) == 0;
      ck.check("hull_invariance", trial, hull,
               [&] { return space_detail(s, "hull generator changed a value"); });
    }

    {
      GenPrevision f{PrevKind::Sublinear,
                     {gen_valuation(rng, s, MassClass::Normalized),
                      gen_valuation(rng, s, MassClass::Normalized)}};
      GenPrevision g{PrevKind::Sublinear,
                     {gen_valuation(rng, s, MassClass::Normalized),
                      gen_valuation(rng, s, MassClass::Normalized)}};
      GenPrevision h{PrevKind::Sublinear,
                     {gen_valuation(rng, s, MassClass::Normalized)}};
      bool qm = dkrh_sublinear(s, f, f, a) == ExtRat(0);
      ExtRat d13 = dkrh_sublinear(s, f, h, a);
      qm = qm && d13 <= dkrh_sublinear(s, f, g, a) + dkrh_sublinear(s, g, h, a);
      ck.check("prevision_quasi_metric", trial, qm,
               [&] { return space_detail(s, "prevision distance axioms"); });
    }
  }
}

// ---------------------------------------------------------------- minimax

void suite_minimax(Checker& ck, Rng& rng, long trials,
                   const std::optional<QSpace>& fixed) {
  const Rat as[3] = {Rat(1) / 2, Rat(1), Rat(3) / 2};
  for (long trial = 0; trial < trials; ++trial) {
    QSpace s = fixed ? *fixed : gen_space(rng, 4);
    Rat a = as[rng.below(3)];
    Rat alpha = Rat(1 + rng.below(2));
    SimpleValuation g = gen_valuation(rng, s, MassClass::Normalized);
    std::vector<SimpleValuation> gens;
    int m = 1 + static_cast<int>(rng.below(3));
    for (int i = 0; i < m; ++i)
      gens.push_back(gen_valuation(rng, s, MassClass::Normalized));

    auto [lan, ran] = minimax_check(s, g, gens, MinimaxSide::AN, a, alpha);
    auto [ldn, rdn] = minimax_check(s, g, gens, MinimaxSide::DN, a, alpha);
    ck.check("minimax_exchange", trial, lan == ran && ldn == rdn, [&] {
      return Json{{"space", space_to_json(s)},
                  {"AN", Json{{"lhs", lan.str()}, {"rhs", ran.str()}}},
                  {"DN", Json{{"lhs", ldn.str()}, {"rhs", rdn.str()}}}};
    });

    auto [l1, r1] =
        minimax_check(s, g, {gens.front()}, MinimaxSide::AN, a, alpha);
    auto [l0, r0] = minimax_check(s, g, {g}, MinimaxSide::AN, a, alpha);
    ck.check("minimax_degenerate_cases", trial,
             l1 == r1 && l0 == r0 && l0 == 0,
             [&] { return space_detail(s, "single-generator minimax"); });
  }
}

// ----------------------------------------------------------------- walley

void suite_walley(Checker& ck, Rng& rng, long trials,
                  const std::optional<QSpace>& fixed) {
  for (long trial = 0; trial < trials; ++trial) {
    QSpace s = fixed ? *fixed : gen_space(rng, 4);
    QuasiLens l = make_quasi_lens(s, gen_pointset(rng, s, true));
    bool built = true;
    Fork f{GenPrevision::diracs(PrevKind::Superlinear, l.q.pts),
           GenPrevision::diracs(PrevKind::Sublinear, l.c.pts)};
    try {
      f = fork_from_lens(s, l);  // includes the exhaustive small-space gate
    } catch (const Error&) {
      built = false;
    }
    ck.check("lens_fork_walley_exhaustive", trial, built,
             [&] { return space_detail(s, "Walley violated on lens fork"); });

    {
      QSpace s6 = fixed ? *fixed : gen_space(rng, 6);
      QuasiLens l6 = make_quasi_lens(s6, gen_pointset(rng, s6, true));
      Fork f6 = fork_from_lens(s6, l6);
      std::vector<std::pair<ExtFunc, ExtFunc>> probes;
      for (int i = 0; i < 500; ++i)
        probes.emplace_back(gen_monotone_func(rng, s6, Rat(1)),
                            gen_monotone_func(rng, s6, Rat(1)));
      WalleyReport rep = check_walley(s6, f6, probes);
      ck.check("lens_fork_walley_random", trial, rep.ok(),
               [&] { return space_detail(s6, "Walley violated on probes"); });
    }

    {
      // A deliberately corrupted fork must be caught: take x not below
      // y, lower = delta_x, upper = delta_y, probe with the indicator
      // of the upward closure of x.
      int x = -1, y = -1;
      for (int i = 0; i < s.size() && x < 0; ++i)
        for (int j = 0; j < s.size() && x < 0; ++j)
          if (!s.leq(i, j)) {
            x = i;
            y = j;
          }
      bool caught = false;
      if (x >= 0) {
        Fork bad{GenPrevision{PrevKind::Superlinear,
                              {SimpleValuation::dirac(x)}},
                 GenPrevision{PrevKind::Sublinear,
                              {SimpleValuation::dirac(y)}}};
        ExtFunc chi(s.size());
        for (int i = 0; i < s.size(); ++i)
          chi.v[i] = s.leq(x, i) ? ExtRat(1) : ExtRat(0);
        std::vector<std::pair<ExtFunc, ExtFunc>> probes = {
            {chi, ExtFunc::constant(s.size(), ExtRat(0))}};
        caught = !check_walley(s, bad, probes).ok();
      }
      ck.check("corrupted_fork_caught", trial, caught,
               [&] { return space_detail(s, "corruption not detected"); });
    }

    {
      bool zero_probe = true, two_forms = true;
      PointSet core = l.q.pts.intersect(l.c.pts);
      GenPrevision fq_core = GenPrevision::diracs(PrevKind::Superlinear, core);
      for (int i = 0; i < 20; ++i) {
        ExtFunc h = gen_monotone_func(rng, s, Rat(1));
        ExtRat lo = eval_prevision(s, f.lower, h);
        zero_probe = zero_probe && lo <= eval_prevision(s, f.upper, h);
        two_forms = two_forms && lo == eval_prevision(s, fq_core, h);
      }
      ck.check("fork_lower_leq_upper", trial, zero_probe,
               [&] { return space_detail(s, "F- above F+"); });
      ck.check("fq_two_forms_agree", trial, two_forms,
               [&] { return space_detail(s, "inf over Q vs over Q and C"); });
    }

    {
      GenPrevision fp{PrevKind::Sublinear,
                      {gen_valuation(rng, s, MassClass::Normalized),
                       gen_valuation(rng, s, MassClass::Normalized)}};
      Rat alpha(1 + rng.below(2));
      ExtFunc h = envelope(s, gen_func(rng, s, false), alpha);
      ExtRat v1 = extend_prevision(s, fp, h, alpha);
      ExtRat v2 = extend_prevision(s, fp, h, alpha * 2);
      bool ext = v1 == v2 && v1 == eval_prevision(s, fp, h);
      ck.check("extension_alpha_independent", trial, ext,
               [&] { return space_detail(s, "extension depends on alpha"); });
    }
  }
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {
      "axioms",     "duality",      "envelopes", "monad",
      "powerdomains", "isometries", "minimax",   "walley"};
  return names;
}

SuiteResult run_suite(const std::string& name, uint64_t seed, long trials,
                      const std::optional<QSpace>& space) {
  if (trials < 1) throw Error("trials must be >= 1");
  Checker ck(name);
  Rng rng(seed);
  if (name == "axioms")
    suite_axioms(ck, rng, trials, space);
  else if (name == "duality")
    suite_duality(ck, rng, trials, space);
  else if (name == "envelopes")
    suite_envelopes(ck, rng, trials, space);
  else if (name == "monad")
    suite_monad(ck, rng, trials, space);
  else if (name == "powerdomains")
    suite_powerdomains(ck, rng, trials, space);
  else if (name == "isometries")
    suite_isometries(ck, rng, trials, space);
  else if (name == "minimax")
    suite_minimax(ck, rng, trials, space);
  else if (name == "walley")
    suite_walley(ck, rng, trials, space);
  else
    throw Error("unknown suite: " + name);
  return ck.take(trials);
}

std::vector<SuiteResult> run_all_suites(uint64_t seed, long trials,
                                        const std::optional<QSpace>& space) {
  std::vector<SuiteResult> out;
  uint64_t k = 0;
  for (const auto& name : suite_names())
    out.push_back(run_suite(name, seed + 0x9e3779b97f4a7c15ull * ++k, trials,
                            space));
  return out;
}

}  // namespace qmet
