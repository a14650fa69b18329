#include "qmet/instances.hpp"

#include <algorithm>

namespace qmet {

namespace {

const Rat kGrid[] = {Rat(0),     Rat(1) / 4, Rat(1) / 2, Rat(1),
                     Rat(3) / 2, Rat(2),     Rat(3)};
const int kGridSize = 7;

// Quotient by the mutual-zero-distance equivalence; the quotient
// distance is well-defined by the triangle inequality.
QSpace merge_t0(const std::vector<std::vector<ExtRat>>& dist) {
  const int n = static_cast<int>(dist.size());
  std::vector<int> rep(n, -1);
  std::vector<int> reps;
  for (int x = 0; x < n; ++x) {
    for (int r : reps)
      if (dist[x][r] == ExtRat(0) && dist[r][x] == ExtRat(0)) {
        rep[x] = r;
        break;
      }
    if (rep[x] < 0) {
      rep[x] = x;
      reps.push_back(x);
    }
  }
  const int m = static_cast<int>(reps.size());
  std::vector<std::string> labels(m);
  for (int i = 0; i < m; ++i) labels[i] = "p" + std::to_string(i);
  std::vector<std::vector<ExtRat>> d(m, std::vector<ExtRat>(m));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) d[i][j] = dist[reps[i]][reps[j]];
  return validate_space(std::move(labels), std::move(d));
}

void closure(std::vector<std::vector<ExtRat>>& d) {
  const int n = static_cast<int>(d.size());
  for (int k = 0; k < n; ++k)
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y) d[x][y] = min(d[x][y], d[x][k] + d[k][y]);
}

}  // namespace

QSpace gen_space(Rng& rng, int max_n) {
  for (;;) {
    int n = 2 + static_cast<int>(rng.below(std::max(1, max_n - 1)));
    std::vector<std::vector<ExtRat>> d(n, std::vector<ExtRat>(n, ExtRat(0)));
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y) {
        if (x == y) continue;
        d[x][y] = rng.chance(1, 3) ? ExtRat::infinity()
                                   : ExtRat(kGrid[rng.below(kGridSize)]);
      }
    closure(d);
    QSpace s = merge_t0(d);
    if (s.size() >= 2) return s;
  }
}

QSpace gen_metric_space(Rng& rng, int max_n) {
  for (;;) {
    int n = 2 + static_cast<int>(rng.below(std::max(1, max_n - 1)));
    std::vector<std::vector<ExtRat>> d(n, std::vector<ExtRat>(n, ExtRat(0)));
    for (int x = 0; x < n; ++x)
      for (int y = x + 1; y < n; ++y) {
        ExtRat v(kGrid[1 + rng.below(kGridSize - 1)]);  // positive
        d[x][y] = v;
        d[y][x] = v;
      }
    closure(d);
    QSpace s = merge_t0(d);
    if (s.size() >= 2) return s;
  }
}

SimpleValuation gen_valuation(Rng& rng, const QSpace& s, MassClass cls) {
  int k = 1 + static_cast<int>(rng.below(std::min(s.size(), 3)));
  std::vector<int> pts;
  while (static_cast<int>(pts.size()) < k) {
    int p = static_cast<int>(rng.below(s.size()));
    if (std::find(pts.begin(), pts.end(), p) == pts.end()) pts.push_back(p);
  }
  std::vector<Rat> raw(k);
  Rat total = 0;
  for (int i = 0; i < k; ++i) {
    raw[i] = Rat(1 + rng.below(4));
    total += raw[i];
  }
  Rat denom;
  switch (cls) {
    case MassClass::Normalized:
      denom = total;
      break;
    case MassClass::Subnormalized:
      denom = total + Rat(rng.below(3));
      break;
    case MassClass::General:
      denom = Rat(1 + rng.below(4));
      break;
  }
  SimpleValuation v;
  for (int i = 0; i < k; ++i) v.w[pts[i]] = raw[i] / denom;
  return v;
}

ExtFunc gen_func(Rng& rng, const QSpace& s, bool allow_inf) {
  ExtFunc f(s.size());
  for (int x = 0; x < s.size(); ++x)
    f.v[x] = (allow_inf && rng.chance(1, 6))
                 ? ExtRat::infinity()
                 : ExtRat(kGrid[rng.below(kGridSize)]);
  return f;
}

ExtFunc gen_monotone_func(Rng& rng, const QSpace& s, const Rat& scale) {
  ExtFunc f(s.size());
  for (int x = 0; x < s.size(); ++x)
    f.v[x] = ExtRat(kGrid[rng.below(kGridSize)] * scale);
  // Monotone repair along the specialization ordering.
  ExtFunc g(s.size());
  for (int x = 0; x < s.size(); ++x) {
    ExtRat best(0);
    for (int y = 0; y < s.size(); ++y)
      if (s.leq(y, x)) best = max(best, f.v[y]);
    g.v[x] = best;
  }
  return g;
}

PointSet gen_pointset(Rng& rng, const QSpace& s, bool nonempty) {
  PointSet ps(s.size());
  for (int x = 0; x < s.size(); ++x)
    if (rng.chance(1, 2)) ps.add(x);
  if (nonempty && ps.empty()) ps.add(static_cast<int>(rng.below(s.size())));
  return ps;
}

FormalBall gen_ball(Rng& rng, const QSpace& s) {
  return FormalBall{static_cast<int>(rng.below(s.size())), gen_radius(rng)};
}

Rat gen_radius(Rng& rng) { return kGrid[rng.below(kGridSize)]; }

}  // namespace qmet
