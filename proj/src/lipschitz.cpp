#include "qmet/lipschitz.hpp"

#include <set>

namespace qmet {

ExtFunc add(const ExtFunc& f, const ExtFunc& g) {
  if (f.size() != g.size()) throw Error("function size mismatch");
  ExtFunc h(f.size());
  for (int i = 0; i < f.size(); ++i) h.v[i] = f.v[i] + g.v[i];
  return h;
}

ExtFunc scale(const Rat& a, const ExtFunc& f) {
  ExtFunc h(f.size());
  for (int i = 0; i < f.size(); ++i) h.v[i] = scale(a, f.v[i]);
  return h;
}

ExtFunc pointwise_min(const ExtFunc& f, const ExtFunc& g) {
  if (f.size() != g.size()) throw Error("function size mismatch");
  ExtFunc h(f.size());
  for (int i = 0; i < f.size(); ++i) h.v[i] = min(f.v[i], g.v[i]);
  return h;
}

ExtFunc pointwise_max(const ExtFunc& f, const ExtFunc& g) {
  if (f.size() != g.size()) throw Error("function size mismatch");
  ExtFunc h(f.size());
  for (int i = 0; i < f.size(); ++i) h.v[i] = max(f.v[i], g.v[i]);
  return h;
}

bool pointwise_leq(const ExtFunc& f, const ExtFunc& g) {
  if (f.size() != g.size()) throw Error("function size mismatch");
  for (int i = 0; i < f.size(); ++i)
    if (!(f.v[i] <= g.v[i])) return false;
  return true;
}

bool is_alpha_lipschitz(const QSpace& s, const ExtFunc& f, const Rat& alpha) {
  if (f.size() != s.size()) throw Error("function/space size mismatch");
  for (int x = 0; x < s.size(); ++x)
    for (int y = 0; y < s.size(); ++y)
      if (dreal(f.v[x], f.v[y]) > lip_scale(alpha, s.d(x, y))) return false;
  return true;
}

ExtFunc envelope(const QSpace& s, const ExtFunc& f, const Rat& alpha) {
  if (f.size() != s.size()) throw Error("function/space size mismatch");
  ExtFunc g(s.size());
  for (int x = 0; x < s.size(); ++x) {
    ExtRat best = ExtRat::infinity();
    for (int z = 0; z < s.size(); ++z)
      best = min(best, f.v[z] + lip_scale(alpha, s.d(x, z)));
    g.v[x] = best;
  }
  return g;
}

ExtFunc sea(const QSpace& s, int x, const ExtRat& b) {
  ExtFunc f(s.size());
  for (int y = 0; y < s.size(); ++y) {
    const ExtRat& d = s.d(x, y);
    if (b.is_inf())
      f.v[y] = d.is_inf() ? ExtRat(0) : ExtRat::infinity();
    else if (d.is_inf() || d.value() >= b.value())
      f.v[y] = ExtRat(0);
    else
      f.v[y] = ExtRat(b.value() - d.value());
  }
  return f;
}

ExtFunc min_lip_above(const QSpace& s,
                      const std::vector<LipschitzConstraint>& constraints) {
  std::set<int> seen;
  for (const auto& c : constraints)
    if (!seen.insert(c.point).second)
      throw Error("duplicate constraint point");
  ExtFunc f = ExtFunc::constant(s.size(), ExtRat(0));
  for (const auto& c : constraints)
    f = pointwise_max(f, sea(s, c.point, c.target));
  return f;
}

static ExtRat min_dist_to(const QSpace& s, int x, const PointSet& set) {
  ExtRat best = ExtRat::infinity();
  for (int y : set.members()) best = min(best, s.d(x, y));
  return best;
}

ExtRat dist_to_closed(const QSpace& s, int x, const LowerSet& c) {
  return min_dist_to(s, x, c.pts);
}

ExtFunc step_envelope(const QSpace& s, const ExtFunc& f, const Rat& alpha,
                      int K) {
  if (alpha <= 0) throw Error("step_envelope needs alpha > 0");
  if (K < 0 || K > 20) throw Error("step_envelope needs 0 <= K <= 20");
  const Rat stepK = Rat(1) / (1L << K);
  const long kmax = static_cast<long>(K) << K;
  ExtFunc g(s.size());
  for (int x = 0; x < s.size(); ++x) {
    ExtRat best{Rat(K)};
    for (long k = 1; k <= kmax; ++k) {
      PointSet sub(s.size());  // {y : f(y) < k/2^K}
      ExtRat level{Rat(k) * stepK};
      for (int y = 0; y < s.size(); ++y)
        if (f.v[y] < level) sub.add(y);
      ExtRat term = ExtRat(Rat(k - 1) * stepK) +
                    lip_scale(alpha, min_dist_to(s, x, sub));
      best = min(best, term);
    }
    g.v[x] = best;
  }
  return g;
}

}  // namespace qmet
