#include "qmet/formal_ball.hpp"

#include <optional>
#include <sstream>

namespace qmet {

bool ball_leq(const QSpace& s, const FormalBall& a, const FormalBall& b) {
  if (b.radius > a.radius) return false;
  return s.d(a.center, b.center) <= ExtRat(a.radius - b.radius);
}

ExtRat dplus(const QSpace& s, const FormalBall& a, const FormalBall& b) {
  const ExtRat& d = s.d(a.center, b.center);
  if (d.is_inf()) return ExtRat::infinity();
  Rat v = d.value() - a.radius + b.radius;
  return v > 0 ? ExtRat(v) : ExtRat(0);
}

ExtRat dplusplus(const QSpace& s, const DoubleBall& a, const DoubleBall& b) {
  ExtRat d = dplus(s, a.inner, b.inner);
  if (d.is_inf()) return ExtRat::infinity();
  Rat v = d.value() - a.outer + b.outer;
  return v > 0 ? ExtRat(v) : ExtRat(0);
}

bool way_below(const QSpace& s, const FormalBall& a, const FormalBall& b) {
  if (b.radius >= a.radius) return false;
  return s.d(a.center, b.center) < ExtRat(a.radius - b.radius);
}

static std::string show_ball(const QSpace& s, const FormalBall& b) {
  return "(" + s.labels[b.center] + "," + b.radius.str() + ")";
}

MonadLawReport check_monad_laws(const QSpace& s,
                                const std::vector<DoubleBall>& doubles,
                                const std::vector<TripleBall>& triples) {
  MonadLawReport rep;
  auto fail = [&](int law, const std::string& w) {
    rep.failures.push_back({law, w});
  };
  for (const DoubleBall& db : doubles) {
    const FormalBall& b = db.inner;
    ++rep.checked[1];
    if (!(mu(eta_ball(b)) == b)) fail(1, show_ball(s, b));
    ++rep.checked[2];
    if (!(mu(lift_eta(b)) == b)) fail(2, show_ball(s, b));
    ++rep.checked[4];
    // eta_ball(mu(db)) >= db, i.e. d++(db, eta_ball(mu(db))) = 0.
    if (dplusplus(s, db, eta_ball(mu(db))) != ExtRat(0))
      fail(4, show_ball(s, db.inner) + "," + db.outer.str());
  }
  for (const TripleBall& t : triples) {
    ++rep.checked[3];
    if (!(mu(mu_double(t)) == mu(lift_mu(t))))
      fail(3, show_ball(s, t.inner.inner) + "," + t.inner.outer.str() + "," +
                  t.outer.str());
  }
  return rep;
}

LubResult lub_formal_balls(const QSpace& s,
                           const std::vector<FormalBall>& balls) {
  if (balls.empty()) throw Error("lub of empty family");
  // (y,t) is an upper bound iff t <= s_max(y) := min_i (r_i - d(x_i, y)),
  // which requires every d(x_i, y) finite.  A least upper bound, if one
  // exists, must be some (y, s_max(y)).
  std::vector<FormalBall> candidates;
  for (int y = 0; y < s.size(); ++y) {
    std::optional<Rat> smax;
    bool feasible = true;
    for (const FormalBall& b : balls) {
      const ExtRat& d = s.d(b.center, y);
      if (d.is_inf()) {
        feasible = false;
        break;
      }
      Rat allowed = b.radius - d.value();
      if (!smax || allowed < *smax) smax = allowed;
    }
    if (feasible && smax && *smax >= 0)
      candidates.push_back(FormalBall{y, *smax});
  }
  if (candidates.empty()) return LubResult{LubResult::NoUpperBound, {}};
  for (const FormalBall& c : candidates) {
    bool least = true;
    for (const FormalBall& o : candidates)
      if (!ball_leq(s, c, o)) {
        least = false;
        break;
      }
    if (least) return LubResult{LubResult::Found, c};
  }
  return LubResult{LubResult::NoLeast, {}};
}

}  // namespace qmet
