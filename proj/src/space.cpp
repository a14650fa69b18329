#include "qmet/space.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace qmet {

int QSpace::index_of(const std::string& label) const {
  for (int i = 0; i < size(); ++i)
    if (labels[i] == label) return i;
  return -1;
}

std::string SpaceViolation::describe(
    const std::vector<std::string>& labels) const {
  auto name = [&](int i) {
    return (i >= 0 && i < static_cast<int>(labels.size())) ? labels[i]
                                                           : std::to_string(i);
  };
  std::ostringstream os;
  switch (kind) {
    case SpaceViolationKind::ZeroDiagonal:
      os << "d(" << name(x) << "," << name(x) << ") != 0";
      break;
    case SpaceViolationKind::Triangle:
      os << "d(" << name(x) << "," << name(z) << ") > d(" << name(x) << ","
         << name(y) << ") + d(" << name(y) << "," << name(z) << ")";
      break;
    case SpaceViolationKind::T0:
      os << "d(" << name(x) << "," << name(y) << ") = d(" << name(y) << ","
         << name(x) << ") = 0 with " << name(x) << " != " << name(y);
      break;
  }
  return os.str();
}

std::vector<SpaceViolation> check_space_axioms(
    const std::vector<std::vector<ExtRat>>& dist) {
  const int n = static_cast<int>(dist.size());
  std::vector<SpaceViolation> out;
  for (int x = 0; x < n; ++x)
    if (dist[x][x] != ExtRat(0))
      out.push_back({SpaceViolationKind::ZeroDiagonal, x, -1, -1});
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z)
        if (dist[x][z] > dist[x][y] + dist[y][z])
          out.push_back({SpaceViolationKind::Triangle, x, y, z});
  for (int x = 0; x < n; ++x)
    for (int y = x + 1; y < n; ++y)
      if (dist[x][y] == ExtRat(0) && dist[y][x] == ExtRat(0))
        out.push_back({SpaceViolationKind::T0, x, y, -1});
  return out;
}

QSpace validate_space(std::vector<std::string> labels,
                      std::vector<std::vector<ExtRat>> dist) {
  const auto n = labels.size();
  if (dist.size() != n) throw Error("distance matrix is not square");
  for (const auto& row : dist)
    if (row.size() != n) throw Error("distance matrix is not square");
  std::set<std::string> seen(labels.begin(), labels.end());
  if (seen.size() != n) throw Error("labels are not distinct");

  auto violations = check_space_axioms(dist);
  if (!violations.empty()) {
    std::ostringstream os;
    os << "quasi-metric axioms violated:";
    for (const auto& v : violations) os << " [" << v.describe(labels) << "]";
    throw SpaceError(os.str(), std::move(violations));
  }
  return QSpace{std::move(labels), std::move(dist)};
}

QSpace from_poset(std::vector<std::string> labels,
                  const std::vector<std::vector<char>>& leq) {
  const int n = static_cast<int>(labels.size());
  if (static_cast<int>(leq.size()) != n)
    throw Error("relation matrix is not square");
  for (const auto& row : leq)
    if (static_cast<int>(row.size()) != n)
      throw Error("relation matrix is not square");

  for (int x = 0; x < n; ++x)
    if (!leq[x][x])
      throw Error("not a partial order: not reflexive at " + labels[x]);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (x != y && leq[x][y] && leq[y][x])
        throw Error("not a partial order: not antisymmetric on " + labels[x] +
                    "," + labels[y]);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z)
        if (leq[x][y] && leq[y][z] && !leq[x][z])
          throw Error("not a partial order: not transitive on " + labels[x] +
                      "," + labels[y] + "," + labels[z]);

  std::vector<std::vector<ExtRat>> dist(n, std::vector<ExtRat>(n));
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      dist[x][y] = leq[x][y] ? ExtRat(0) : ExtRat::infinity();
  return QSpace{std::move(labels), std::move(dist)};
}

QSpace from_digraph(std::vector<std::string> labels,
                    const std::vector<WeightedEdge>& edges) {
  const int n = static_cast<int>(labels.size());
  std::vector<std::vector<ExtRat>> dist(
      n, std::vector<ExtRat>(n, ExtRat::infinity()));
  for (int x = 0; x < n; ++x) dist[x][x] = ExtRat(0);
  for (const auto& e : edges) {
    if (e.from < 0 || e.from >= n || e.to < 0 || e.to >= n)
      throw Error("edge endpoint out of range");
    if (e.weight < 0) throw Error("negative edge weight");
    dist[e.from][e.to] = min(dist[e.from][e.to], ExtRat(e.weight));
  }
  for (int k = 0; k < n; ++k)
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y)
        dist[x][y] = min(dist[x][y], dist[x][k] + dist[k][y]);
  return validate_space(std::move(labels), std::move(dist));
}

QSpace opposite(const QSpace& s) {
  const int n = s.size();
  std::vector<std::vector<ExtRat>> dist(n, std::vector<ExtRat>(n));
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) dist[x][y] = s.dist[y][x];
  return QSpace{s.labels, std::move(dist)};
}

QSpace product_sq(const QSpace& s) {
  const int n = s.size();
  std::vector<std::string> labels;
  labels.reserve(n * n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      labels.push_back("(" + s.labels[x] + "," + s.labels[y] + ")");
  std::vector<std::vector<ExtRat>> dist(n * n, std::vector<ExtRat>(n * n));
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int x2 = 0; x2 < n; ++x2)
        for (int y2 = 0; y2 < n; ++y2)
          dist[x * n + y][x2 * n + y2] = s.d(x, x2) + s.d(y2, y);
  return QSpace{std::move(labels), std::move(dist)};
}

QSpace coproduct(const QSpace& s, const QSpace& t) {
  std::set<std::string> left(s.labels.begin(), s.labels.end());
  for (const auto& l : t.labels)
    if (left.count(l)) throw Error("label clash in coproduct: " + l);
  const int n = s.size(), m = t.size();
  std::vector<std::string> labels = s.labels;
  labels.insert(labels.end(), t.labels.begin(), t.labels.end());
  std::vector<std::vector<ExtRat>> dist(
      n + m, std::vector<ExtRat>(n + m, ExtRat::infinity()));
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) dist[x][y] = s.d(x, y);
  for (int x = 0; x < m; ++x)
    for (int y = 0; y < m; ++y) dist[n + x][n + y] = t.d(x, y);
  return QSpace{std::move(labels), std::move(dist)};
}

}  // namespace qmet
