#pragma once

#include <string>
#include <vector>

#include "qmet/space.hpp"

namespace qmet {

// A formal ball: center point index and a finite nonnegative radius.
struct FormalBall {
  int center = 0;
  Rat radius;
  friend bool operator==(const FormalBall& a, const FormalBall& b) {
    return a.center == b.center && a.radius == b.radius;
  }
};

// A formal ball of formal balls, ((x,r), s).
struct DoubleBall {
  FormalBall inner;
  Rat outer;
};

// (((x,r), s), t), for the associativity law.
struct TripleBall {
  DoubleBall inner;
  Rat outer;
};

// (x,r) <= (y,s) iff d(x,y) <= r - s.
bool ball_leq(const QSpace& s, const FormalBall& a, const FormalBall& b);

// d+((x,r),(y,s)) = max(d(x,y) - r + s, 0).
ExtRat dplus(const QSpace& s, const FormalBall& a, const FormalBall& b);

// The same quasi-metric one level up, on formal balls of formal balls.
ExtRat dplusplus(const QSpace& s, const DoubleBall& a, const DoubleBall& b);

inline FormalBall eta(int x) { return FormalBall{x, Rat(0)}; }
inline FormalBall mu(const DoubleBall& b) {
  return FormalBall{b.inner.center, b.inner.radius + b.outer};
}
inline DoubleBall eta_ball(const FormalBall& b) { return DoubleBall{b, Rat(0)}; }
// The action of the ball functor on eta: (x,r) -> ((x,0), r).
inline DoubleBall lift_eta(const FormalBall& b) {
  return DoubleBall{eta(b.center), b.radius};
}
inline DoubleBall mu_double(const TripleBall& t) {
  return DoubleBall{t.inner.inner, t.inner.outer + t.outer};
}
// The action of the ball functor on mu: (((x,r),s), t) -> ((x,r+s), t).
inline DoubleBall lift_mu(const TripleBall& t) {
  return DoubleBall{mu(t.inner), t.outer};
}

// (x,r) way-below (y,s) iff d(x,y) < r - s; valid when x is a center
// point, which holds for every point of a finite space here.
bool way_below(const QSpace& s, const FormalBall& a, const FormalBall& b);

struct MonadLawReport {
  struct Failure {
    int law;  // 1..4
    std::string witness;
  };
  long checked[5] = {0, 0, 0, 0, 0};  // index by law
  std::vector<Failure> failures;
  bool ok() const { return failures.empty(); }
};

// Checks the unit/multiplication laws on the given samples:
//   (i)   mu(eta_ball(b)) = b
//   (ii)  mu(lift_eta(b)) = b
//   (iii) mu(mu_double(t)) = mu(lift_mu(t))
//   (iv)  eta_ball(mu(db)) above db in the twice-lifted ball order
MonadLawReport check_monad_laws(const QSpace& s,
                                const std::vector<DoubleBall>& doubles,
                                const std::vector<TripleBall>& triples);

struct LubResult {
  enum Status { Found, NoUpperBound, NoLeast } status;
  FormalBall ball;  // meaningful when status == Found
};

// Least upper bound of a non-empty finite family, by exhaustive search
// over the candidate balls (y, s_max(y)), where s_max(y) is the largest
// radius making (y, s_max(y)) an upper bound.
LubResult lub_formal_balls(const QSpace& s,
                           const std::vector<FormalBall>& balls);

}  // namespace qmet
