#include "qmet/sets.hpp"

namespace qmet {

PointSet lower_closure_set(const QSpace& s, const PointSet& pts) {
  PointSet out(s.size());
  for (int y = 0; y < s.size(); ++y)
    for (int x : pts.members())
      if (s.leq(y, x)) {
        out.add(y);
        break;
      }
  return out;
}

PointSet upper_closure_set(const QSpace& s, const PointSet& pts) {
  PointSet out(s.size());
  for (int y = 0; y < s.size(); ++y)
    for (int x : pts.members())
      if (s.leq(x, y)) {
        out.add(y);
        break;
      }
  return out;
}

bool is_downward_closed(const QSpace& s, const PointSet& pts) {
  return lower_closure_set(s, pts) == pts;
}

bool is_upward_closed(const QSpace& s, const PointSet& pts) {
  return upper_closure_set(s, pts) == pts;
}

LowerSet lower_closure(const QSpace& s, const PointSet& pts) {
  return LowerSet{lower_closure_set(s, pts)};
}

UpperSet upper_closure(const QSpace& s, const PointSet& pts) {
  return UpperSet{upper_closure_set(s, pts)};
}

LowerSet as_lower_set(const QSpace& s, const PointSet& pts) {
  if (!is_downward_closed(s, pts))
    throw Error("set is not downward-closed");
  return LowerSet{pts};
}

UpperSet as_upper_set(const QSpace& s, const PointSet& pts) {
  if (!is_upward_closed(s, pts))
    throw Error("set is not upward-closed");
  return UpperSet{pts};
}

static std::vector<PointSet> all_closed_sets(const QSpace& s, bool lower) {
  const int n = s.size();
  if (n > 20) throw Error("space too large for exhaustive set enumeration");
  std::vector<PointSet> out;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    PointSet ps(n);
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) ps.add(i);
    if (lower ? is_downward_closed(s, ps) : is_upward_closed(s, ps))
      out.push_back(ps);
  }
  return out;
}

std::vector<PointSet> all_lower_sets(const QSpace& s) {
  return all_closed_sets(s, true);
}

std::vector<PointSet> all_upper_sets(const QSpace& s) {
  return all_closed_sets(s, false);
}

}  // namespace qmet
