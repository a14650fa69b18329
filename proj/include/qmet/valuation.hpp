#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "qmet/lipschitz.hpp"
#include "qmet/space.hpp"

namespace qmet {

// A finite weighted sum of point masses; weights strictly positive.
struct SimpleValuation {
  std::map<int, Rat> w;

  Rat mass() const {
    Rat m = 0;
    for (const auto& [p, a] : w) m += a;
    return m;
  }
  bool is_normalized() const { return mass() == 1; }
  bool is_subnormalized() const { return mass() <= 1; }
  static SimpleValuation dirac(int x) { return SimpleValuation{{{x, Rat(1)}}}; }
  friend bool operator==(const SimpleValuation& a, const SimpleValuation& b) {
    return a.w == b.w;
  }
};

// Sum of weight * h(point); positive weight times inf is inf.
ExtRat integrate(const QSpace& s, const SimpleValuation& nu, const ExtFunc& h);

// The Kantorovich-Rubinshtein-Hutchinson quasi-metric between simple
// valuations, as the exact LP
//   max sum_x (mu_x - nu_x) h(x)
//   s.t. h(u) - h(v) <= d(u,v)  (finite-distance pairs), h >= 0,
//        h <= bound when given;
// clamped below at 0.  Unbounded LP encodes the value +inf (only
// possible without a bound).
ExtRat dkrh_lp(const QSpace& s, const SimpleValuation& mu,
               const SimpleValuation& nu,
               const std::optional<Rat>& bound = std::nullopt);

// A transport plan between two valuations: entries only on
// finite-distance pairs; with the slack vectors u, v present in the
// bounded variant.
struct TransportPlan {
  std::map<std::pair<int, int>, Rat> t;
  std::map<int, Rat> u, v;  // bounded variant only
  std::optional<Rat> bound;

  ExtRat weight(const QSpace& s, const std::optional<Rat>& a) const;
};

// Transportation route: min over transition matrices (row sums equal to
// mu, column sums equal to nu, zero on infinite-distance pairs) of the
// plan weight.  Infeasibility of that restriction encodes +inf with no
// plan.  Both valuations must be normalized.
std::pair<ExtRat, std::optional<TransportPlan>> dkrh_transport(
    const QSpace& s, const SimpleValuation& mu, const SimpleValuation& nu);

// Bounded transportation route:
//   min sum t_xy d(x,y) + a sum u_x + a sum v_y
//   s.t. sum_y t_xy + u_x >= mu_x,  sum_x t_xy - v_y <= nu_y,
// always feasible, hence always finite.
std::pair<Rat, TransportPlan> dkrha_transport(const QSpace& s,
                                              const SimpleValuation& mu,
                                              const SimpleValuation& nu,
                                              const Rat& a);

struct TransportMove {
  int from, to;
  Rat mass;
  ExtRat cost;
};

// Splits a plan into single-mass moves mu = mu_0 -> ... -> mu_n = nu;
// the sum of the move costs is the plan weight.  Throws Error if the
// plan's row sums do not match mu.
std::vector<TransportMove> decompose_plan(const QSpace& s,
                                          const SimpleValuation& mu,
                                          const TransportPlan& plan);

// Formal-ball order on valuations: dkrh(mu,nu) <= r - t (bounded
// variant when a is given).
bool ball_leq_valuations(const QSpace& s, const SimpleValuation& mu,
                         const Rat& r, const SimpleValuation& nu, const Rat& t,
                         const std::optional<Rat>& a = std::nullopt);

struct ChainProbe {
  ExtFunc h;
  Rat alpha;  // Lipschitz constant of h, > 0
};

struct ChainTable {
  Rat r;  // the limit radius (minimum over the chain)
  std::vector<ExtRat> values;
};

// Naive supremum of an increasing chain of formal balls of valuations,
// evaluated against the probes: value_i = sup_j (int h d nu_j + alpha r
// - alpha r_j).  For a finite chain this is the top element's integral,
// which is asserted.  Throws Error if the list is not a chain or a
// probe is not alpha-Lipschitz.
ChainTable naive_sup_chain(
    const QSpace& s, const std::vector<std::pair<SimpleValuation, Rat>>& chain,
    const std::vector<ChainProbe>& probes,
    const std::optional<Rat>& a = std::nullopt);

}  // namespace qmet
