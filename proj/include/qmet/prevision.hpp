#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qmet/powerdomain.hpp"
#include "qmet/valuation.hpp"

namespace qmet {

enum class PrevKind { Sublinear, Superlinear };
enum class NormClass { Normalized, Subnormalized };

// A finitely-generated prevision: sublinear evaluates as the max of the
// generator integrals, superlinear as the min.  All generators must
// share a normalization class (each mass 1, or each mass <= 1).
struct GenPrevision {
  PrevKind kind;
  std::vector<SimpleValuation> gens;

  NormClass norm_class() const;  // throws Error on mixed/overweight gens
  static GenPrevision diracs(PrevKind kind, const PointSet& pts);
};

ExtRat eval_prevision(const QSpace& s, const GenPrevision& f, const ExtFunc& h);

// dKRH (unbounded) / dKRH^a between sublinear previsions, as the max
// over generators G_j of the LP value
//   max t  s.t.  t <= G_j(h) - G'_k(h) for all k,  h 1-Lipschitz,
//   0 <= h (<= a when bounded);
// clamped below at 0.  Unbounded LP (only possible without a bound)
// encodes +inf.
ExtRat dkrh_sublinear(const QSpace& s, const GenPrevision& a,
                      const GenPrevision& b,
                      const std::optional<Rat>& bound = std::nullopt);

// dKRH^a between superlinear previsions, by region decomposition: the
// max over pairs (j,k) of the LP maximizing G_j(h) - G'_k(h) over
// {h 1-Lipschitz, 0 <= h <= a, G_j(h) <= G_i(h) for all i}; clamped
// below at 0.
Rat dkrh_superlinear(const QSpace& s, const GenPrevision& a,
                     const GenPrevision& b, const Rat& bound);

// Unbounded distance between superlinear previsions, offered only in
// the single-generator (linear) case, where it is the distance of the
// generating valuations.
ExtRat dkrh_superlinear(const QSpace& s, const GenPrevision& a,
                        const GenPrevision& b);

// A fork: superlinear lower part and sublinear upper part satisfying
// Walley's condition F-(h+h') <= F-(h) + F+(h') <= F+(h+h').
struct Fork {
  GenPrevision lower;
  GenPrevision upper;
};

Rat fork_distance(const QSpace& s, const Fork& f, const Fork& g,
                  const Rat& bound);

// Lens-to-fork bridge: lower generated by the Dirac masses of Q, upper
// by those of C.  The lens is validated and the result is probed for
// Walley's condition; a violation throws (it would indicate an invalid
// lens or an implementation bug).
Fork fork_from_lens(const QSpace& s, const QuasiLens& l);

struct WalleyReport {
  long probes = 0;
  struct Violation {
    int probe_index;
    std::string which;  // "lower" or "upper" inequality
  };
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

WalleyReport check_walley(const QSpace& s, const Fork& f,
                          const std::vector<std::pair<ExtFunc, ExtFunc>>& probes);

// Deterministic probe family for Walley checks: exhaustive monotone
// step functions on small spaces, an indicator-based family otherwise.
std::vector<ExtFunc> walley_probe_functions(const QSpace& s);

// Prevision extension to Lipschitz (not necessarily continuous) maps:
// F(h) evaluated through the largest alpha-Lipschitz map below h.  The
// value does not depend on the choice of valid alpha.
ExtRat extend_prevision(const QSpace& s, const GenPrevision& f,
                        const ExtFunc& h, const Rat& alpha);

enum class MinimaxSide { AN, DN };

// Both sides of the sup-inf = inf-sup exchange over the convex hull of
// the generators, computed by two disjoint formulations:
//   lhs: a single LP  max t  s.t. t <= +/-(G(h) - G_k(h)) for all k,
//        h alpha-Lipschitz with values in [0,a];
//   rhs: solve_saddle over the hull simplex and the Lipschitz polytope.
// For side AN the hull ranges over the second argument of G(h) - G'(h);
// for side DN over the first.  Callers assert lhs == rhs.
std::pair<Rat, Rat> minimax_check(const QSpace& s, const SimpleValuation& g,
                                  const std::vector<SimpleValuation>& gens,
                                  MinimaxSide side, const Rat& a,
                                  const Rat& alpha);

}  // namespace qmet
