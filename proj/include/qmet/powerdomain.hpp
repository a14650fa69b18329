#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qmet/lipschitz.hpp"
#include "qmet/sets.hpp"

namespace qmet {

// Hoare quasi-metric on closed sets: sup_{x in C} d(x, C'), empty sup
// = 0.  The bounded variant clamps at a.
ExtRat dH(const QSpace& s, const LowerSet& c, const LowerSet& c2,
          const std::optional<Rat>& bound = std::nullopt);

// Smyth quasi-metric on non-empty saturated sets:
// sup_{x' in Q'} min_{x in Q} d(x, x'); bounded variant clamps at a.
ExtRat dQ(const QSpace& s, const UpperSet& q, const UpperSet& q2,
          const std::optional<Rat>& bound = std::nullopt);

// min_{x in Q} d(x, x'); Q non-empty.
ExtRat dist_from_compact(const QSpace& s, const UpperSet& q, int x2);

// Formal-ball orders: (C,r) <= (C',r') iff r >= r' and every x in C has
// d(x, C') <= r - r'; (Q,r) <= (Q',r') iff r >= r' and every x' in Q'
// is within r - r' of some x in Q.
bool ball_leq_H(const QSpace& s, const LowerSet& c, const Rat& r,
                const LowerSet& c2, const Rat& r2);
bool ball_leq_Q(const QSpace& s, const UpperSet& q, const Rat& r,
                const UpperSet& q2, const Rat& r2);

// A quasi-lens: Q saturated, C closed, Q meets C, Q = up(Q and C),
// C inside down(Q and C) (the neighborhood condition evaluated at the
// minimal open neighborhood U = Q of a saturated set).
struct QuasiLens {
  UpperSet q;
  LowerSet c;
};

enum class LensViolationKind {
  EmptyIntersection,
  QNotSaturated,
  CNotClosed,
  QNotGenerated,
  CNotApproximated,
};

struct LensViolation {
  LensViolationKind kind;
  std::string describe() const;
};

std::vector<LensViolation> validate_quasi_lens(const QSpace& s,
                                               const PointSet& q,
                                               const PointSet& c);

// (up(pts), down(pts)); always a valid quasi-lens.  Throws Error on an
// empty generator.
QuasiLens make_quasi_lens(const QSpace& s, const PointSet& pts);

// Plotkin quasi-metric: max of the Smyth and Hoare components
// (componentwise bounded variants when a bound is given).
ExtRat dP(const QSpace& s, const QuasiLens& l, const QuasiLens& l2,
          const std::optional<Rat>& bound = std::nullopt);

}  // namespace qmet
