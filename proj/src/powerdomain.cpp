#include "qmet/powerdomain.hpp"

namespace qmet {

static ExtRat clamp(const ExtRat& v, const std::optional<Rat>& bound) {
  if (!bound) return v;
  if (*bound <= 0) throw Error("bound must be positive");
  return min(v, ExtRat(*bound));
}

ExtRat dH(const QSpace& s, const LowerSet& c, const LowerSet& c2,
          const std::optional<Rat>& bound) {
  ExtRat sup(0);
  for (int x : c.pts.members()) sup = max(sup, dist_to_closed(s, x, c2));
  return clamp(sup, bound);
}

ExtRat dist_from_compact(const QSpace& s, const UpperSet& q, int x2) {
  if (q.pts.empty()) throw Error("empty Smyth element");
  ExtRat best = ExtRat::infinity();
  for (int x : q.pts.members()) best = min(best, s.d(x, x2));
  return best;
}

ExtRat dQ(const QSpace& s, const UpperSet& q, const UpperSet& q2,
          const std::optional<Rat>& bound) {
  if (q.pts.empty() || q2.pts.empty()) throw Error("empty Smyth element");
  ExtRat sup(0);
  for (int x2 : q2.pts.members()) sup = max(sup, dist_from_compact(s, q, x2));
  return clamp(sup, bound);
}

bool ball_leq_H(const QSpace& s, const LowerSet& c, const Rat& r,
                const LowerSet& c2, const Rat& r2) {
  if (r2 > r) return false;
  ExtRat slack(r - r2);
  for (int x : c.pts.members())
    if (dist_to_closed(s, x, c2) > slack) return false;
  return true;
}

bool ball_leq_Q(const QSpace& s, const UpperSet& q, const Rat& r,
                const UpperSet& q2, const Rat& r2) {
  if (q.pts.empty() || q2.pts.empty()) throw Error("empty Smyth element");
  if (r2 > r) return false;
  ExtRat slack(r - r2);
  for (int x2 : q2.pts.members()) {
    bool covered = false;
    for (int x : q.pts.members())
      if (s.d(x, x2) <= slack) {
        covered = true;
        break;
      }
    if (!covered) return false;
  }
  return true;
}

std::string LensViolation::describe() const {
  switch (kind) {
    case LensViolationKind::EmptyIntersection:
      return "Q and C do not intersect";
    case LensViolationKind::QNotSaturated:
      return "Q is not upward-closed";
    case LensViolationKind::CNotClosed:
      return "C is not downward-closed";
    case LensViolationKind::QNotGenerated:
      return "Q is not contained in the upward closure of Q and C";
    case LensViolationKind::CNotApproximated:
      return "C is not contained in the downward closure of Q and C";
  }
  return "?";
}

std::vector<LensViolation> validate_quasi_lens(const QSpace& s,
                                               const PointSet& q,
                                               const PointSet& c) {
  std::vector<LensViolation> out;
  if (!is_upward_closed(s, q)) out.push_back({LensViolationKind::QNotSaturated});
  if (!is_downward_closed(s, c)) out.push_back({LensViolationKind::CNotClosed});
  PointSet core = q.intersect(c);
  if (core.empty()) {
    out.push_back({LensViolationKind::EmptyIntersection});
    return out;
  }
  if (!q.subset_of(upper_closure_set(s, core)))
    out.push_back({LensViolationKind::QNotGenerated});
  if (!c.subset_of(lower_closure_set(s, core)))
    out.push_back({LensViolationKind::CNotApproximated});
  return out;
}

QuasiLens make_quasi_lens(const QSpace& s, const PointSet& pts) {
  if (pts.empty()) throw Error("empty quasi-lens generator");
  return QuasiLens{upper_closure(s, pts), lower_closure(s, pts)};
}

ExtRat dP(const QSpace& s, const QuasiLens& l, const QuasiLens& l2,
          const std::optional<Rat>& bound) {
  return max(dQ(s, l.q, l2.q, bound), dH(s, l.c, l2.c, bound));
}

}  // namespace qmet
