#pragma once

#include "qmet/space.hpp"

namespace qmet::testing {

inline ExtRat inf() { return ExtRat::infinity(); }
inline ExtRat q(long num, long den = 1) { return ExtRat(Rat(num) / den); }

// Two points with d(p,q) = 1 and d(q,p) = inf.
inline QSpace s2() {
  return validate_space({"p", "q"}, {{q(0), q(1)}, {inf(), q(0)}});
}

// Symmetric three-point space: d(a,b) = d(b,c) = 1, d(a,c) = 2.
inline QSpace s3() {
  return validate_space({"a", "b", "c"}, {{q(0), q(1), q(2)},
                                          {q(1), q(0), q(1)},
                                          {q(2), q(1), q(0)}});
}

// The chain bot <= top as a quasi-metric space.
inline QSpace p2() {
  return from_poset({"bot", "top"}, {{1, 1}, {0, 1}});
}

}  // namespace qmet::testing
