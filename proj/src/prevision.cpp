#include "qmet/prevision.hpp"

#include <algorithm>

#include "qmet/lp.hpp"

namespace qmet {

NormClass GenPrevision::norm_class() const {
  if (gens.empty()) throw Error("prevision has no generators");
  bool all_one = true;
  for (const auto& g : gens) {
    Rat m = g.mass();
    if (m > 1) throw Error("generator mass exceeds 1");
    if (m != 1) all_one = false;
  }
  if (all_one) return NormClass::Normalized;
  return NormClass::Subnormalized;
}

GenPrevision GenPrevision::diracs(PrevKind kind, const PointSet& pts) {
  if (pts.empty()) throw Error("prevision has no generators");
  GenPrevision f{kind, {}};
  for (int x : pts.members()) f.gens.push_back(SimpleValuation::dirac(x));
  return f;
}

ExtRat eval_prevision(const QSpace& s, const GenPrevision& f,
                      const ExtFunc& h) {
  if (h.size() != s.size()) throw Error("function/space size mismatch");
  if (f.gens.empty()) throw Error("prevision has no generators");
  std::optional<ExtRat> acc;
  for (const auto& g : f.gens) {
    ExtRat v = integrate(s, g, h);
    if (!acc)
      acc = v;
    else
      acc = f.kind == PrevKind::Sublinear ? max(*acc, v) : min(*acc, v);
  }
  return *acc;
}

namespace {

// Rows h_u - h_v <= alpha d(u,v) over the finite-distance pairs, for
// variables h_off .. h_off+n-1 inside an nvars-wide system.
void append_lipschitz_rows(const QSpace& s, const Rat& alpha, int nvars,
                           int h_off, std::vector<LpConstraint>& rows) {
  for (int u = 0; u < s.size(); ++u)
    for (int v = 0; v < s.size(); ++v) {
      if (u == v || s.d(u, v).is_inf()) continue;
      LpConstraint row;
      row.coeffs.assign(nvars, Rat(0));
      row.coeffs[h_off + u] = 1;
      row.coeffs[h_off + v] = -1;
      row.rel = Rel::Le;
      row.rhs = alpha * s.d(u, v).value();
      rows.push_back(std::move(row));
    }
}

std::vector<Rat> weight_vector(const QSpace& s, const SimpleValuation& g) {
  std::vector<Rat> w(s.size(), Rat(0));
  for (const auto& [p, a] : g.w) {
    if (p < 0 || p >= s.size()) throw Error("valuation point out of range");
    w[p] = a;
  }
  return w;
}

void require_same_class(const GenPrevision& a, const GenPrevision& b) {
  if (a.norm_class() != b.norm_class())
    throw Error("normalization class mismatch");
}

}  // namespace

ExtRat dkrh_sublinear(const QSpace& s, const GenPrevision& a,
                      const GenPrevision& b, const std::optional<Rat>& bound) {
  if (a.kind != PrevKind::Sublinear || b.kind != PrevKind::Sublinear)
    throw Error("kind mismatch: sublinear previsions required");
  require_same_class(a, b);
  if (bound && *bound <= 0) throw Error("bound must be positive");
  const int n = s.size();
  ExtRat best(0);
  for (const auto& gj : a.gens) {
    std::vector<Rat> wj = weight_vector(s, gj);
    // Variables: t, then h.
    LpProblem lp;
    lp.sense = Sense::Max;
    lp.objective.assign(1 + n, Rat(0));
    lp.objective[0] = 1;
    for (const auto& gk : b.gens) {
      std::vector<Rat> wk = weight_vector(s, gk);
      LpConstraint row;
      row.coeffs.assign(1 + n, Rat(0));
      row.coeffs[0] = 1;
      for (int x = 0; x < n; ++x) row.coeffs[1 + x] = wk[x] - wj[x];
      row.rel = Rel::Le;
      row.rhs = 0;
      lp.rows.push_back(std::move(row));
    }
    append_lipschitz_rows(s, Rat(1), 1 + n, 1, lp.rows);
    if (bound) {
      lp.upper.assign(1 + n, std::nullopt);
      for (int x = 0; x < n; ++x) lp.upper[1 + x] = *bound;
    }
    LpOutcome out = solve_lp(lp);
    if (std::holds_alternative<LpUnbounded>(out)) return ExtRat::infinity();
    best = max(best, ExtRat(std::max(std::get<LpOptimal>(out).value, Rat(0))));
  }
  return best;
}

Rat dkrh_superlinear(const QSpace& s, const GenPrevision& a,
                     const GenPrevision& b, const Rat& bound) {
  if (a.kind != PrevKind::Superlinear || b.kind != PrevKind::Superlinear)
    throw Error("kind mismatch: superlinear previsions required");
  require_same_class(a, b);
  if (bound <= 0) throw Error("bound must be positive");
  const int n = s.size();
  Rat best = 0;
  for (size_t j = 0; j < a.gens.size(); ++j) {
    std::vector<Rat> wj = weight_vector(s, a.gens[j]);
    // Region where generator j attains the lower min.
    std::vector<LpConstraint> region;
    for (size_t i = 0; i < a.gens.size(); ++i) {
      if (i == j) continue;
      std::vector<Rat> wi = weight_vector(s, a.gens[i]);
      LpConstraint row;
      row.coeffs.assign(n, Rat(0));
      for (int x = 0; x < n; ++x) row.coeffs[x] = wj[x] - wi[x];
      row.rel = Rel::Le;
      row.rhs = 0;
      region.push_back(std::move(row));
    }
    for (const auto& gk : b.gens) {
      std::vector<Rat> wk = weight_vector(s, gk);
      LpProblem lp;
      lp.sense = Sense::Max;
      lp.objective.assign(n, Rat(0));
      for (int x = 0; x < n; ++x) lp.objective[x] = wj[x] - wk[x];
      lp.rows = region;
      append_lipschitz_rows(s, Rat(1), n, 0, lp.rows);
      lp.upper.assign(n, bound);
      best = std::max(best, std::get<LpOptimal>(solve_lp(lp)).value);
    }
  }
  return std::max(best, Rat(0));
}

ExtRat dkrh_superlinear(const QSpace& s, const GenPrevision& a,
                        const GenPrevision& b) {
  if (a.kind != PrevKind::Superlinear || b.kind != PrevKind::Superlinear)
    throw Error("kind mismatch: superlinear previsions required");
  require_same_class(a, b);
  if (a.gens.size() != 1 || b.gens.size() != 1)
    throw Error(
        "unbounded superlinear distance is offered for single-generator "
        "previsions only");
  return dkrh_lp(s, a.gens.front(), b.gens.front());
}

Rat fork_distance(const QSpace& s, const Fork& f, const Fork& g,
                  const Rat& bound) {
  Rat lo = dkrh_superlinear(s, f.lower, g.lower, bound);
  ExtRat hi = dkrh_sublinear(s, f.upper, g.upper, bound);
  return std::max(lo, hi.value());
}

WalleyReport check_walley(
    const QSpace& s, const Fork& f,
    const std::vector<std::pair<ExtFunc, ExtFunc>>& probes) {
  if (f.lower.kind != PrevKind::Superlinear ||
      f.upper.kind != PrevKind::Sublinear)
    throw Error("kind mismatch: fork parts are (superlinear, sublinear)");
  WalleyReport rep;
  for (size_t i = 0; i < probes.size(); ++i) {
    const auto& [h, h2] = probes[i];
    ExtFunc sum = add(h, h2);
    ExtRat lo_sum = eval_prevision(s, f.lower, sum);
    ExtRat mid = eval_prevision(s, f.lower, h) + eval_prevision(s, f.upper, h2);
    ExtRat hi_sum = eval_prevision(s, f.upper, sum);
    ++rep.probes;
    if (!(lo_sum <= mid))
      rep.violations.push_back({static_cast<int>(i), "lower"});
    if (!(mid <= hi_sum))
      rep.violations.push_back({static_cast<int>(i), "upper"});
  }
  return rep;
}

std::vector<ExtFunc> walley_probe_functions(const QSpace& s) {
  const int n = s.size();
  std::vector<ExtFunc> out;
  auto monotone = [&](const ExtFunc& h) {
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y)
        if (s.leq(x, y) && !(h.v[x] <= h.v[y])) return false;
    return true;
  };
  if (n <= 4) {
    // Exhaustive over {0, 1/2, 1}-valued monotone functions.
    const ExtRat levels[3] = {ExtRat(0), ExtRat(Rat(1) / 2), ExtRat(1)};
    long total = 1;
    for (int i = 0; i < n; ++i) total *= 3;
    for (long code = 0; code < total; ++code) {
      ExtFunc h(n);
      long c = code;
      for (int x = 0; x < n; ++x) {
        h.v[x] = levels[c % 3];
        c /= 3;
      }
      if (monotone(h)) out.push_back(std::move(h));
    }
  } else {
    // Scaled indicators of upward-closed sets.
    for (const PointSet& u : all_upper_sets(s)) {
      if (u.empty()) continue;
      for (const Rat& c : {Rat(1) / 2, Rat(1)}) {
        ExtFunc h(n);
        for (int x = 0; x < n; ++x)
          h.v[x] = u.contains(x) ? ExtRat(c) : ExtRat(0);
        out.push_back(std::move(h));
      }
      if (out.size() >= 60) break;
    }
    out.push_back(ExtFunc::constant(n, ExtRat(0)));
  }
  return out;
}

Fork fork_from_lens(const QSpace& s, const QuasiLens& l) {
  auto violations = validate_quasi_lens(s, l.q.pts, l.c.pts);
  if (!violations.empty()) {
    std::string msg = "invalid quasi-lens:";
    for (const auto& v : violations) msg += " [" + v.describe() + "]";
    throw Error(msg);
  }
  Fork f{GenPrevision::diracs(PrevKind::Superlinear, l.q.pts),
         GenPrevision::diracs(PrevKind::Sublinear, l.c.pts)};
  auto funcs = walley_probe_functions(s);
  std::vector<std::pair<ExtFunc, ExtFunc>> probes;
  probes.reserve(funcs.size() * funcs.size());
  for (const auto& h : funcs)
    for (const auto& h2 : funcs) probes.emplace_back(h, h2);
  WalleyReport rep = check_walley(s, f, probes);
  if (!rep.ok()) throw Error("Walley violation on a lens-derived fork");
  return f;
}

ExtRat extend_prevision(const QSpace& s, const GenPrevision& f,
                        const ExtFunc& h, const Rat& alpha) {
  if (alpha <= 0) throw Error("alpha must be positive");
  if (!is_alpha_lipschitz(s, h, alpha))
    throw Error("function is not alpha-Lipschitz");
  return eval_prevision(s, f, envelope(s, h, alpha));
}

std::pair<Rat, Rat> minimax_check(const QSpace& s, const SimpleValuation& g,
                                  const std::vector<SimpleValuation>& gens,
                                  MinimaxSide side, const Rat& a,
                                  const Rat& alpha) {
  if (gens.empty()) throw Error("degenerate minimax instance: no generators");
  if (a <= 0 || alpha <= 0) throw Error("bounds must be positive");
  if (!g.is_subnormalized()) throw Error("fixed valuation must have mass <= 1");
  for (const auto& gk : gens)
    if (!gk.is_subnormalized())
      throw Error("generator valuations must have mass <= 1");
  const int n = s.size();
  const int m = static_cast<int>(gens.size());
  std::vector<Rat> wg = weight_vector(s, g);
  std::vector<std::vector<Rat>> wk(m);
  for (int k = 0; k < m; ++k) wk[k] = weight_vector(s, gens[k]);

  // Signed objective rows: side AN compares G(h) - G_k(h), side DN
  // compares G_k(h) - G(h).
  auto diff = [&](int k, int x) {
    return side == MinimaxSide::AN ? wg[x] - wk[k][x] : wk[k][x] - wg[x];
  };

  // lhs: max t s.t. t <= sum_x diff(k,x) h_x for each k.
  LpProblem lhs_lp;
  lhs_lp.sense = Sense::Max;
  lhs_lp.objective.assign(1 + n, Rat(0));
  lhs_lp.objective[0] = 1;
  for (int k = 0; k < m; ++k) {
    LpConstraint row;
    row.coeffs.assign(1 + n, Rat(0));
    row.coeffs[0] = 1;
    for (int x = 0; x < n; ++x) row.coeffs[1 + x] = -diff(k, x);
    row.rel = Rel::Le;
    row.rhs = 0;
    lhs_lp.rows.push_back(std::move(row));
  }
  append_lipschitz_rows(s, alpha, 1 + n, 1, lhs_lp.rows);
  lhs_lp.upper.assign(1 + n, std::nullopt);
  for (int x = 0; x < n; ++x) lhs_lp.upper[1 + x] = a;
  Rat lhs = std::get<LpOptimal>(solve_lp(lhs_lp)).value;

  // rhs: min over the hull simplex of the max over the Lipschitz
  // polytope of the bilinear form lambda^T M h.
  std::vector<std::vector<Rat>> bil(m, std::vector<Rat>(n));
  for (int k = 0; k < m; ++k)
    for (int x = 0; x < n; ++x) bil[k][x] = diff(k, x);
  Polytope simplex;
  simplex.dim = m;
  {
    LpConstraint row;
    row.coeffs.assign(m, Rat(1));
    row.rel = Rel::Eq;
    row.rhs = 1;
    simplex.rows.push_back(std::move(row));
  }
  Polytope lip;
  lip.dim = n;
  append_lipschitz_rows(s, alpha, n, 0, lip.rows);
  lip.upper.assign(n, a);
  Rat rhs = solve_saddle(bil, simplex, lip);
  return {lhs, rhs};
}

}  // namespace qmet
