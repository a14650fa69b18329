#pragma once

#include <vector>

#include "qmet/sets.hpp"
#include "qmet/space.hpp"

namespace qmet {

// A function from the points of a space to the extended nonnegative
// rationals, stored by point index.
struct ExtFunc {
  std::vector<ExtRat> v;

  ExtFunc() = default;
  explicit ExtFunc(int n) : v(n) {}
  ExtFunc(std::vector<ExtRat> vals) : v(std::move(vals)) {}
  static ExtFunc constant(int n, const ExtRat& c) {
    return ExtFunc(std::vector<ExtRat>(n, c));
  }

  int size() const { return static_cast<int>(v.size()); }
  const ExtRat& at(int x) const { return v[x]; }
  friend bool operator==(const ExtFunc& a, const ExtFunc& b) {
    return a.v == b.v;
  }
};

ExtFunc add(const ExtFunc& f, const ExtFunc& g);
ExtFunc scale(const Rat& a, const ExtFunc& f);
ExtFunc pointwise_min(const ExtFunc& f, const ExtFunc& g);
ExtFunc pointwise_max(const ExtFunc& f, const ExtFunc& g);
bool pointwise_leq(const ExtFunc& f, const ExtFunc& g);

// dreal(f(x), f(y)) <= alpha d(x,y) for all x, y, with alpha * inf = inf
// even for alpha = 0.
bool is_alpha_lipschitz(const QSpace& s, const ExtFunc& f, const Rat& alpha);

// The largest alpha-Lipschitz map below f:
//   f^alpha(x) = min_z (f(z) + alpha d(x,z)),
// where alpha * inf = inf also for alpha = 0, so the alpha = 0 envelope
// is the min of f over the finite-distance out-reach of x.
ExtFunc envelope(const QSpace& s, const ExtFunc& f, const Rat& alpha);

// sea(x,b)(y): the least t with b <= t + d(x,y).  Equals
// max(b - d(x,y), 0) for finite b; for b = inf it is inf where
// d(x,y) < inf and 0 where d(x,y) = inf.
ExtFunc sea(const QSpace& s, int x, const ExtRat& b);

struct LipschitzConstraint {
  int point;
  ExtRat target;
};

// The smallest 1-Lipschitz f with f(x_i) >= b_i: pointwise max of the
// sea(x_i, b_i).  Empty constraint set gives the constant 0.
ExtFunc min_lip_above(const QSpace& s,
                      const std::vector<LipschitzConstraint>& constraints);

// min over y in C of d(x,y); inf when C is empty.  Zero iff x in C.
ExtRat dist_to_closed(const QSpace& s, int x, const LowerSet& c);

// Finite-precision step approximant of the envelope:
//   min( min_{k=1..K 2^K} ((k-1)/2^K + alpha d(x, {f < k/2^K})), K ).
// Below envelope(s,f,alpha) pointwise, nondecreasing in K, and equal to
// the envelope when f's values are multiples of 1/2^K bounded by K.
ExtFunc step_envelope(const QSpace& s, const ExtFunc& f, const Rat& alpha,
                      int K);

}  // namespace qmet
