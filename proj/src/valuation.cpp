#include "qmet/valuation.hpp"

#include <algorithm>

#include "qmet/lp.hpp"

namespace qmet {

ExtRat integrate(const QSpace& s, const SimpleValuation& nu, const ExtFunc& h) {
  if (h.size() != s.size()) throw Error("function/space size mismatch");
  ExtRat acc(0);
  for (const auto& [p, a] : nu.w) {
    if (p < 0 || p >= s.size()) throw Error("valuation point out of range");
    if (a <= 0) throw Error("valuation weight must be positive");
    acc += scale(a, h.v[p]);
  }
  return acc;
}

ExtRat dkrh_lp(const QSpace& s, const SimpleValuation& mu,
               const SimpleValuation& nu, const std::optional<Rat>& bound) {
  const int n = s.size();
  for (const auto& [p, a] : mu.w)
    if (p < 0 || p >= n) throw Error("valuation point out of range");
  for (const auto& [p, a] : nu.w)
    if (p < 0 || p >= n) throw Error("valuation point out of range");
  if (bound && *bound <= 0) throw Error("bound must be positive");

  LpProblem lp;
  lp.sense = Sense::Max;
  lp.objective.assign(n, Rat(0));
  for (const auto& [p, a] : mu.w) lp.objective[p] += a;
  for (const auto& [p, a] : nu.w) lp.objective[p] -= a;
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v) {
      if (u == v || s.d(u, v).is_inf()) continue;
      LpConstraint row;
      row.coeffs.assign(n, Rat(0));
      row.coeffs[u] = 1;
      row.coeffs[v] = -1;
      row.rel = Rel::Le;
      row.rhs = s.d(u, v).value();
      lp.rows.push_back(std::move(row));
    }
  if (bound) lp.upper.assign(n, *bound);

  LpOutcome out = solve_lp(lp);
  if (std::holds_alternative<LpUnbounded>(out)) return ExtRat::infinity();
  const auto& opt = std::get<LpOptimal>(out);
  return opt.value > 0 ? ExtRat(opt.value) : ExtRat(0);
}

ExtRat TransportPlan::weight(const QSpace& s,
                             const std::optional<Rat>& a) const {
  ExtRat acc(0);
  for (const auto& [xy, mass] : t) acc += scale(mass, s.d(xy.first, xy.second));
  if (a) {
    for (const auto& [x, m] : u) acc += ExtRat(*a * m);
    for (const auto& [y, m] : v) acc += ExtRat(*a * m);
  }
  return acc;
}

static void require_normalized(const SimpleValuation& nu, const char* which) {
  if (!nu.is_normalized())
    throw Error(std::string("transport route requires normalized valuations (") +
                which + " has mass " + nu.mass().str() + ")");
}

std::pair<ExtRat, std::optional<TransportPlan>> dkrh_transport(
    const QSpace& s, const SimpleValuation& mu, const SimpleValuation& nu) {
  require_normalized(mu, "lhs");
  require_normalized(nu, "rhs");
  std::vector<int> srcs, dsts;
  for (const auto& [p, a] : mu.w) srcs.push_back(p);
  for (const auto& [p, a] : nu.w) dsts.push_back(p);

  std::vector<std::pair<int, int>> vars;  // finite-distance pairs only
  for (int x : srcs)
    for (int y : dsts)
      if (!s.d(x, y).is_inf()) vars.emplace_back(x, y);

  LpProblem lp;
  lp.sense = Sense::Min;
  lp.objective.resize(vars.size());
  for (size_t j = 0; j < vars.size(); ++j)
    lp.objective[j] = s.d(vars[j].first, vars[j].second).value();
  for (int x : srcs) {
    LpConstraint row;
    row.coeffs.assign(vars.size(), Rat(0));
    for (size_t j = 0; j < vars.size(); ++j)
      if (vars[j].first == x) row.coeffs[j] = 1;
    row.rel = Rel::Eq;
    row.rhs = mu.w.at(x);
    lp.rows.push_back(std::move(row));
  }
  for (int y : dsts) {
    LpConstraint row;
    row.coeffs.assign(vars.size(), Rat(0));
    for (size_t j = 0; j < vars.size(); ++j)
      if (vars[j].second == y) row.coeffs[j] = 1;
    row.rel = Rel::Eq;
    row.rhs = nu.w.at(y);
    lp.rows.push_back(std::move(row));
  }

  LpOutcome out = solve_lp(lp);
  if (std::holds_alternative<LpInfeasible>(out))
    return {ExtRat::infinity(), std::nullopt};
  const auto& opt = std::get<LpOptimal>(out);
  TransportPlan plan;
  for (size_t j = 0; j < vars.size(); ++j)
    if (opt.x[j] != 0) plan.t[vars[j]] = opt.x[j];
  return {ExtRat(opt.value), plan};
}

std::pair<Rat, TransportPlan> dkrha_transport(const QSpace& s,
                                              const SimpleValuation& mu,
                                              const SimpleValuation& nu,
                                              const Rat& a) {
  require_normalized(mu, "lhs");
  require_normalized(nu, "rhs");
  if (a <= 0) throw Error("bound must be positive");
  std::vector<int> srcs, dsts;
  for (const auto& [p, w] : mu.w) srcs.push_back(p);
  for (const auto& [p, w] : nu.w) dsts.push_back(p);
  std::vector<std::pair<int, int>> vars;
  for (int x : srcs)
    for (int y : dsts)
      if (!s.d(x, y).is_inf()) vars.emplace_back(x, y);
  const int nt = static_cast<int>(vars.size());
  const int nu_off = nt, nv_off = nt + static_cast<int>(srcs.size());
  const int nvars = nv_off + static_cast<int>(dsts.size());

  LpProblem lp;
  lp.sense = Sense::Min;
  lp.objective.assign(nvars, Rat(0));
  for (int j = 0; j < nt; ++j)
    lp.objective[j] = s.d(vars[j].first, vars[j].second).value();
  for (size_t i = 0; i < srcs.size(); ++i) lp.objective[nu_off + i] = a;
  for (size_t i = 0; i < dsts.size(); ++i) lp.objective[nv_off + i] = a;
  for (size_t i = 0; i < srcs.size(); ++i) {
    LpConstraint row;
    row.coeffs.assign(nvars, Rat(0));
    for (int j = 0; j < nt; ++j)
      if (vars[j].first == srcs[i]) row.coeffs[j] = 1;
    row.coeffs[nu_off + i] = 1;
    row.rel = Rel::Ge;
    row.rhs = mu.w.at(srcs[i]);
    lp.rows.push_back(std::move(row));
  }
  for (size_t i = 0; i < dsts.size(); ++i) {
    LpConstraint row;
    row.coeffs.assign(nvars, Rat(0));
    for (int j = 0; j < nt; ++j)
      if (vars[j].second == dsts[i]) row.coeffs[j] = 1;
    row.coeffs[nv_off + i] = -1;
    row.rel = Rel::Le;
    row.rhs = nu.w.at(dsts[i]);
    lp.rows.push_back(std::move(row));
  }

  LpOutcome out = solve_lp(lp);
  const auto& opt = std::get<LpOptimal>(out);
  TransportPlan plan;
  plan.bound = a;
  for (int j = 0; j < nt; ++j)
    if (opt.x[j] != 0) plan.t[vars[j]] = opt.x[j];
  for (size_t i = 0; i < srcs.size(); ++i)
    if (opt.x[nu_off + i] != 0) plan.u[srcs[i]] = opt.x[nu_off + i];
  for (size_t i = 0; i < dsts.size(); ++i)
    if (opt.x[nv_off + i] != 0) plan.v[dsts[i]] = opt.x[nv_off + i];
  return {opt.value, plan};
}

std::vector<TransportMove> decompose_plan(const QSpace& s,
                                          const SimpleValuation& mu,
                                          const TransportPlan& plan) {
  std::map<int, Rat> rowsum;
  for (const auto& [xy, mass] : plan.t) {
    if (mass < 0) throw Error("invalid plan: negative entry");
    rowsum[xy.first] += mass;
  }
  for (const auto& [x, total] : rowsum) {
    auto it = mu.w.find(x);
    if (it == mu.w.end() || it->second != total)
      throw Error("invalid plan: row sums do not match the source valuation");
  }
  for (const auto& [x, a] : mu.w)
    if (!rowsum.count(x) || rowsum[x] != a)
      throw Error("invalid plan: row sums do not match the source valuation");

  // Any enumeration order is valid: mass moved out of x never exceeds
  // the mass initially at x plus what moves preserve.
  std::vector<TransportMove> moves;
  for (const auto& [xy, mass] : plan.t) {
    if (mass == 0) continue;
    moves.push_back(
        {xy.first, xy.second, mass, scale(mass, s.d(xy.first, xy.second))});
  }
  return moves;
}

bool ball_leq_valuations(const QSpace& s, const SimpleValuation& mu,
                         const Rat& r, const SimpleValuation& nu, const Rat& t,
                         const std::optional<Rat>& a) {
  if (t > r) return false;
  return dkrh_lp(s, mu, nu, a) <= ExtRat(r - t);
}

ChainTable naive_sup_chain(
    const QSpace& s, const std::vector<std::pair<SimpleValuation, Rat>>& chain,
    const std::vector<ChainProbe>& probes, const std::optional<Rat>& a) {
  if (chain.empty()) throw Error("empty chain");
  for (size_t i = 0; i + 1 < chain.size(); ++i)
    if (!ball_leq_valuations(s, chain[i].first, chain[i].second,
                             chain[i + 1].first, chain[i + 1].second, a))
      throw Error("list is not an increasing chain of formal balls");
  for (const auto& probe : probes) {
    if (probe.alpha <= 0) throw Error("probe Lipschitz constant must be > 0");
    if (!is_alpha_lipschitz(s, probe.h, probe.alpha))
      throw Error("probe is not alpha-Lipschitz");
  }

  Rat r = chain.front().second;
  for (const auto& [nu, ri] : chain) r = std::min(r, ri);

  ChainTable table;
  table.r = r;
  for (const auto& probe : probes) {
    // sup_i (int h dnu_i + alpha r - alpha r_i); the additive part can
    // dip below zero for non-top elements, so track it as a signed
    // rational alongside the infinite case.
    bool isinf = false;
    std::optional<Rat> best;
    for (const auto& [nu, ri] : chain) {
      ExtRat integral = integrate(s, nu, probe.h);
      if (integral.is_inf()) {
        isinf = true;
        continue;
      }
      Rat term = integral.value() + probe.alpha * (r - ri);
      if (!best || term > *best) best = term;
    }
    ExtRat value =
        isinf ? ExtRat::infinity() : ExtRat(*best < 0 ? Rat(0) : *best);
    ExtRat top = integrate(s, chain.back().first, probe.h);
    if (value != top)
      throw std::logic_error(
          "naive supremum of a finite chain differs from its top");
    table.values.push_back(value);
  }
  return table;
}

}  // namespace qmet
