#pragma once

#include <string>
#include <vector>

#include "qmet/error.hpp"
#include "qmet/rational.hpp"

namespace qmet {

// A finite quasi-metric space: zero diagonal, triangle inequality, and
// T0 separation (d(x,y) = d(y,x) = 0 only if x = y).  Point identity is
// by index; labels are presentation only.
struct QSpace {
  std::vector<std::string> labels;
  std::vector<std::vector<ExtRat>> dist;

  int size() const { return static_cast<int>(labels.size()); }
  const ExtRat& d(int x, int y) const { return dist[x][y]; }

  // Specialization ordering: x <= y iff d(x,y) = 0.
  bool leq(int x, int y) const { return dist[x][y] == ExtRat(0); }

  int index_of(const std::string& label) const;
};

enum class SpaceViolationKind { ZeroDiagonal, Triangle, T0 };

struct SpaceViolation {
  SpaceViolationKind kind;
  int x = -1, y = -1, z = -1;
  std::string describe(const std::vector<std::string>& labels) const;
};

struct SpaceError : Error {
  std::vector<SpaceViolation> violations;
  SpaceError(std::string what, std::vector<SpaceViolation> v)
      : Error(std::move(what)), violations(std::move(v)) {}
};

// Reports every axiom violation of the matrix (empty result = valid).
std::vector<SpaceViolation> check_space_axioms(
    const std::vector<std::vector<ExtRat>>& dist);

// Validated constructor; throws SpaceError carrying the full violation
// list, or Error on shape problems (non-square, duplicate labels).
QSpace validate_space(std::vector<std::string> labels,
                      std::vector<std::vector<ExtRat>> dist);

// d(x,y) = 0 if x <= y, inf otherwise.  leq is the full relation matrix;
// throws Error("not a partial order: ...") if it is not one.
QSpace from_poset(std::vector<std::string> labels,
                  const std::vector<std::vector<char>>& leq);

struct WeightedEdge {
  int from, to;
  Rat weight;  // >= 0
};

// All-pairs shortest-path closure of a nonnegatively weighted digraph;
// unreachable = inf.  The result satisfies the triangle inequality by
// construction; T0 is validated and may fail (SpaceError).
QSpace from_digraph(std::vector<std::string> labels,
                    const std::vector<WeightedEdge>& edges);

QSpace opposite(const QSpace& s);

// The square space on pairs with d2((x,y),(x',y')) = d(x,x') + d(y',y).
QSpace product_sq(const QSpace& s);

// Block-diagonal sum; cross distances inf.  Throws Error on label clash.
QSpace coproduct(const QSpace& s, const QSpace& t);

}  // namespace qmet
