#include "qmet/lp.hpp"

#include <algorithm>
#include <sstream>

namespace qmet {

std::string LpProblem::dump() const {
  std::ostringstream os;
  os << (sense == Sense::Max ? "max" : "min");
  for (int j = 0; j < num_vars(); ++j) os << " " << objective[j].str() << "*x" << j;
  os << "\n";
  for (const auto& r : rows) {
    for (size_t j = 0; j < r.coeffs.size(); ++j)
      os << (j ? " + " : "  ") << r.coeffs[j].str() << "*x" << j;
    os << (r.rel == Rel::Le ? " <= " : r.rel == Rel::Eq ? " = " : " >= ")
       << r.rhs.str() << "\n";
  }
  if (!upper.empty())
    for (int j = 0; j < num_vars(); ++j)
      if (upper[j]) os << "  x" << j << " <= " << upper[j]->str() << "\n";
  return os.str();
}

namespace {

// Tableau over the normalized system: rows a.x (+/- slack) = b, b >= 0,
// all variables >= 0.  z-row holds reduced costs c_B B^-1 A - c; the
// rhs entry of the z-row is the current objective value.
struct Tableau {
  int m = 0, ncols = 0;
  std::vector<std::vector<Rat>> a;  // m x (ncols+1)
  std::vector<Rat> z;               // ncols+1
  std::vector<int> basis;

  void pivot(int pr, int pc) {
    Rat piv = a[pr][pc];
    if (piv != 1)
      for (auto& e : a[pr])
        if (!e.is_zero()) e /= piv;
    for (int i = 0; i < m; ++i) {
      if (i == pr || a[i][pc].is_zero()) continue;
      Rat f = a[i][pc];
      for (int j = 0; j <= ncols; ++j)
        if (!a[pr][j].is_zero()) a[i][j] -= f * a[pr][j];
    }
    if (!z[pc].is_zero()) {
      Rat f = z[pc];
      for (int j = 0; j <= ncols; ++j)
        if (!a[pr][j].is_zero()) z[j] -= f * a[pr][j];
    }
    basis[pr] = pc;
  }

  void set_costs(const std::vector<Rat>& c) {
    z.assign(ncols + 1, Rat(0));
    for (int j = 0; j <= ncols; ++j) {
      Rat acc = 0;
      for (int i = 0; i < m; ++i)
        if (c[basis[i]] != 0) acc += c[basis[i]] * a[i][j];
      z[j] = acc - (j < ncols ? c[j] : Rat(0));
    }
  }

  // Bland's rule; returns false at optimum, throws tag on unbounded.
  struct UnboundedAt {
    int col;
  };
  bool step(const std::vector<char>& allowed) {
    int enter = -1;
    for (int j = 0; j < ncols; ++j)
      if (allowed[j] && z[j] < 0) {
        enter = j;
        break;
      }
    if (enter < 0) return false;
    int leave = -1;
    Rat best;
    for (int i = 0; i < m; ++i) {
      if (a[i][enter] <= 0) continue;
      Rat ratio = a[i][ncols] / a[i][enter];
      if (leave < 0 || ratio < best ||
          (ratio == best && basis[i] < basis[leave])) {
        leave = i;
        best = ratio;
      }
    }
    if (leave < 0) throw UnboundedAt{enter};
    pivot(leave, enter);
    return true;
  }
};

struct NormRow {
  std::vector<Rat> coeffs;
  Rel rel;
  Rat rhs;
  int orig;   // index into the user's row list, or -(var+1) for bound rows
  int sigma;  // +1 kept, -1 flipped
};

}  // namespace

LpOutcome solve_lp(const LpProblem& p) {
  const int nv = p.num_vars();
  for (const auto& r : p.rows)
    if (static_cast<int>(r.coeffs.size()) != nv)
      throw Error("malformed LP: ragged constraint row");
  if (!p.upper.empty() && static_cast<int>(p.upper.size()) != nv)
    throw Error("malformed LP: bounds size mismatch");
  if (!p.upper.empty())
    for (const auto& u : p.upper)
      if (u && *u < 0) throw Error("malformed LP: negative upper bound");

  // Collect rows (user rows + bound rows), normalized to rhs >= 0.
  std::vector<NormRow> rows;
  for (size_t i = 0; i < p.rows.size(); ++i) {
    NormRow r{p.rows[i].coeffs, p.rows[i].rel, p.rows[i].rhs,
              static_cast<int>(i), 1};
    rows.push_back(std::move(r));
  }
  if (!p.upper.empty())
    for (int j = 0; j < nv; ++j)
      if (p.upper[j]) {
        NormRow r;
        r.coeffs.assign(nv, Rat(0));
        r.coeffs[j] = 1;
        r.rel = Rel::Le;
        r.rhs = *p.upper[j];
        r.orig = -(j + 1);
        r.sigma = 1;
        rows.push_back(std::move(r));
      }
  for (auto& r : rows)
    if (r.rhs < 0) {
      for (auto& c : r.coeffs) c = -c;
      r.rhs = -r.rhs;
      r.sigma = -1;
      if (r.rel == Rel::Le)
        r.rel = Rel::Ge;
      else if (r.rel == Rel::Ge)
        r.rel = Rel::Le;
    }

  const int m = static_cast<int>(rows.size());
  // Column layout: structurals, then one slack/surplus per inequality
  // row, then one artificial per Ge/Eq row.
  std::vector<int> slack_col(m, -1), art_col(m, -1);
  int ncols = nv;
  for (int i = 0; i < m; ++i)
    if (rows[i].rel != Rel::Eq) slack_col[i] = ncols++;
  for (int i = 0; i < m; ++i)
    if (rows[i].rel != Rel::Le) art_col[i] = ncols++;

  Tableau t;
  t.m = m;
  t.ncols = ncols;
  t.a.assign(m, std::vector<Rat>(ncols + 1, Rat(0)));
  t.basis.assign(m, -1);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < nv; ++j) t.a[i][j] = rows[i].coeffs[j];
    if (slack_col[i] >= 0)
      t.a[i][slack_col[i]] = rows[i].rel == Rel::Le ? Rat(1) : Rat(-1);
    if (art_col[i] >= 0) t.a[i][art_col[i]] = 1;
    t.a[i][ncols] = rows[i].rhs;
    t.basis[i] = art_col[i] >= 0 ? art_col[i] : slack_col[i];
  }

  const bool maximize = p.sense == Sense::Max;
  std::vector<Rat> cost(ncols, Rat(0));
  for (int j = 0; j < nv; ++j)
    cost[j] = maximize ? p.objective[j] : -p.objective[j];

  std::vector<char> allow_all(ncols, 1), allow_real(ncols, 1);
  for (int i = 0; i < m; ++i)
    if (art_col[i] >= 0) allow_real[art_col[i]] = 0;

  // Phase 1: maximize minus the sum of artificials.
  bool need_phase1 = false;
  for (int i = 0; i < m; ++i) need_phase1 |= art_col[i] >= 0;
  if (need_phase1) {
    std::vector<Rat> c1(ncols, Rat(0));
    for (int i = 0; i < m; ++i)
      if (art_col[i] >= 0) c1[art_col[i]] = -1;
    t.set_costs(c1);
    try {
      while (t.step(allow_all)) {
      }
    } catch (const Tableau::UnboundedAt&) {
      throw Error("internal LP error: phase 1 unbounded on\n" + p.dump());
    }
    if (t.z[ncols] < 0) {
      // Infeasible; phase-1 duals give a Farkas certificate.
      std::vector<Rat> ynorm(m, Rat(0));
      for (int i = 0; i < m; ++i) {
        if (slack_col[i] >= 0 && rows[i].rel == Rel::Le)
          ynorm[i] = t.z[slack_col[i]];
        else if (slack_col[i] >= 0)  // Ge: surplus coefficient is -1
          ynorm[i] = -t.z[slack_col[i]];
        if (art_col[i] >= 0 && rows[i].rel != Rel::Le)
          ynorm[i] = t.z[art_col[i]] - 1;
      }
      LpInfeasible out;
      out.farkas.assign(p.rows.size(), Rat(0));
      out.farkas_bound.assign(nv, Rat(0));
      for (int i = 0; i < m; ++i) {
        Rat y = Rat(rows[i].sigma) * ynorm[i];
        if (rows[i].orig >= 0)
          out.farkas[rows[i].orig] = y;
        else
          out.farkas_bound[-(rows[i].orig) - 1] = y;
      }
      return out;
    }
    // Pivot zero-valued artificials out of the basis where possible.
    for (int i = 0; i < m; ++i) {
      if (art_col[i] < 0 || t.basis[i] != art_col[i]) continue;
      for (int j = 0; j < ncols; ++j) {
        if (!allow_real[j]) continue;
        if (t.a[i][j] != 0) {
          t.pivot(i, j);
          break;
        }
      }
      // A row whose non-artificial entries are all zero is 0 = 0 and
      // stays inert through phase 2.
    }
  }

  t.set_costs(cost);
  try {
    while (t.step(allow_real)) {
    }
  } catch (const Tableau::UnboundedAt& u) {
    LpUnbounded out;
    out.point.assign(nv, Rat(0));
    out.ray.assign(nv, Rat(0));
    for (int i = 0; i < m; ++i)
      if (t.basis[i] < nv) out.point[t.basis[i]] = t.a[i][ncols];
    if (u.col < nv) out.ray[u.col] = 1;
    for (int i = 0; i < m; ++i)
      if (t.basis[i] < nv) out.ray[t.basis[i]] = -t.a[i][u.col];
    return out;
  }

  LpOptimal out;
  out.x.assign(nv, Rat(0));
  for (int i = 0; i < m; ++i)
    if (t.basis[i] < nv) out.x[t.basis[i]] = t.a[i][ncols];
  out.value = maximize ? t.z[ncols] : -t.z[ncols];

  std::vector<Rat> ynorm(m, Rat(0));
  for (int i = 0; i < m; ++i) {
    if (rows[i].rel == Rel::Le)
      ynorm[i] = t.z[slack_col[i]];
    else if (rows[i].rel == Rel::Ge)
      ynorm[i] = -t.z[slack_col[i]];
    else
      ynorm[i] = t.z[art_col[i]];
  }
  out.y.assign(p.rows.size(), Rat(0));
  out.ybound.assign(nv, Rat(0));
  for (int i = 0; i < m; ++i) {
    Rat y = Rat(rows[i].sigma) * ynorm[i];
    if (!maximize) y = -y;
    if (rows[i].orig >= 0)
      out.y[rows[i].orig] = y;
    else
      out.ybound[-(rows[i].orig) - 1] = y;
  }
  return out;
}

bool polytope_nonempty(const Polytope& p) {
  LpProblem feas;
  feas.sense = Sense::Max;
  feas.objective.assign(p.dim, Rat(0));
  feas.rows = p.rows;
  feas.upper = p.upper;
  return std::holds_alternative<LpOptimal>(solve_lp(feas));
}

Rat solve_saddle(const std::vector<std::vector<Rat>>& m, const Polytope& p,
                 const Polytope& q) {
  const int np = p.dim, nq = q.dim;
  if (static_cast<int>(m.size()) != np)
    throw Error("saddle: matrix/polytope dimension mismatch");
  for (const auto& r : m)
    if (static_cast<int>(r.size()) != nq)
      throw Error("saddle: matrix/polytope dimension mismatch");
  if (!polytope_nonempty(p) || !polytope_nonempty(q))
    throw EmptyPolytope("saddle: empty polytope");

  // Inner problem for fixed x: max (x^T M) y over Q.  Normalize Q to
  // Le rows (Ge negated, upper bounds appended) plus Eq rows, then
  // dualize: min bL.u + bE.w, ATL.u + ATE.w >= M^T x, u >= 0, w free.
  std::vector<std::vector<Rat>> le_rows, eq_rows;
  std::vector<Rat> le_rhs, eq_rhs;
  for (const auto& r : q.rows) {
    if (static_cast<int>(r.coeffs.size()) != nq)
      throw Error("saddle: ragged polytope row");
    if (r.rel == Rel::Eq) {
      eq_rows.push_back(r.coeffs);
      eq_rhs.push_back(r.rhs);
    } else if (r.rel == Rel::Le) {
      le_rows.push_back(r.coeffs);
      le_rhs.push_back(r.rhs);
    } else {
      std::vector<Rat> neg(r.coeffs.size());
      for (size_t j = 0; j < r.coeffs.size(); ++j) neg[j] = -r.coeffs[j];
      le_rows.push_back(std::move(neg));
      le_rhs.push_back(-r.rhs);
    }
  }
  if (!q.upper.empty())
    for (int k = 0; k < nq; ++k)
      if (q.upper[k]) {
        std::vector<Rat> row(nq, Rat(0));
        row[k] = 1;
        le_rows.push_back(std::move(row));
        le_rhs.push_back(*q.upper[k]);
      }
  const int nu = static_cast<int>(le_rows.size());
  const int nw = static_cast<int>(eq_rows.size());

  // Combined variables: x (np), u (nu), w+ (nw), w- (nw).
  LpProblem lp;
  lp.sense = Sense::Min;
  const int nvars = np + nu + 2 * nw;
  lp.objective.assign(nvars, Rat(0));
  for (int i = 0; i < nu; ++i) lp.objective[np + i] = le_rhs[i];
  for (int j = 0; j < nw; ++j) {
    lp.objective[np + nu + j] = eq_rhs[j];
    lp.objective[np + nu + nw + j] = -eq_rhs[j];
  }
  // Dual feasibility rows, one per y-coordinate.
  for (int k = 0; k < nq; ++k) {
    LpConstraint row;
    row.coeffs.assign(nvars, Rat(0));
    for (int l = 0; l < np; ++l) row.coeffs[l] = -m[l][k];
    for (int i = 0; i < nu; ++i) row.coeffs[np + i] = le_rows[i][k];
    for (int j = 0; j < nw; ++j) {
      row.coeffs[np + nu + j] = eq_rows[j][k];
      row.coeffs[np + nu + nw + j] = -eq_rows[j][k];
    }
    row.rel = Rel::Ge;
    row.rhs = 0;
    lp.rows.push_back(std::move(row));
  }
  // P membership rows.
  for (const auto& r : p.rows) {
    if (static_cast<int>(r.coeffs.size()) != np)
      throw Error("saddle: ragged polytope row");
    LpConstraint row;
    row.coeffs.assign(nvars, Rat(0));
    for (int l = 0; l < np; ++l) row.coeffs[l] = r.coeffs[l];
    row.rel = r.rel;
    row.rhs = r.rhs;
    lp.rows.push_back(std::move(row));
  }
  if (!p.upper.empty()) {
    lp.upper.assign(nvars, std::nullopt);
    for (int l = 0; l < np; ++l) lp.upper[l] = p.upper[l];
  }

  LpOutcome out = solve_lp(lp);
  if (auto* opt = std::get_if<LpOptimal>(&out)) return opt->value;
  throw Error("saddle: polytopes violate the boundedness precondition on\n" +
              lp.dump());
}

}  // namespace qmet
