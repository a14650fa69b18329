#pragma once

#include <vector>

#include "qmet/space.hpp"

namespace qmet {

// Subset of the points of a fixed space, by index.
class PointSet {
public:
  PointSet() = default;
  explicit PointSet(int n) : in_(n, 0) {}
  static PointSet of(int n, std::initializer_list<int> pts) {
    PointSet s(n);
    for (int p : pts) s.add(p);
    return s;
  }

  int universe() const { return static_cast<int>(in_.size()); }
  bool contains(int p) const { return in_[p] != 0; }
  void add(int p) { in_[p] = 1; }
  void remove(int p) { in_[p] = 0; }
  bool empty() const {
    for (char c : in_)
      if (c) return false;
    return true;
  }
  int count() const {
    int k = 0;
    for (char c : in_) k += (c != 0);
    return k;
  }
  std::vector<int> members() const {
    std::vector<int> out;
    for (int i = 0; i < universe(); ++i)
      if (in_[i]) out.push_back(i);
    return out;
  }
  bool subset_of(const PointSet& o) const {
    for (int i = 0; i < universe(); ++i)
      if (in_[i] && !o.in_[i]) return false;
    return true;
  }
  PointSet intersect(const PointSet& o) const {
    PointSet s(universe());
    for (int i = 0; i < universe(); ++i) s.in_[i] = in_[i] && o.in_[i];
    return s;
  }
  PointSet unite(const PointSet& o) const {
    PointSet s(universe());
    for (int i = 0; i < universe(); ++i) s.in_[i] = in_[i] || o.in_[i];
    return s;
  }
  friend bool operator==(const PointSet& a, const PointSet& b) {
    return a.in_ == b.in_;
  }

private:
  std::vector<char> in_;
};

// Downward / upward closures under the specialization ordering.
PointSet lower_closure_set(const QSpace& s, const PointSet& pts);
PointSet upper_closure_set(const QSpace& s, const PointSet& pts);

bool is_downward_closed(const QSpace& s, const PointSet& pts);
bool is_upward_closed(const QSpace& s, const PointSet& pts);

// Closed (downward-closed) subset; may be empty.
struct LowerSet {
  PointSet pts;
};

// Saturated (upward-closed) subset; Smyth elements must be non-empty,
// which the operations using them enforce.
struct UpperSet {
  PointSet pts;
};

LowerSet lower_closure(const QSpace& s, const PointSet& pts);
UpperSet upper_closure(const QSpace& s, const PointSet& pts);

// Wrap an already-closed set; throws Error otherwise.
LowerSet as_lower_set(const QSpace& s, const PointSet& pts);
UpperSet as_upper_set(const QSpace& s, const PointSet& pts);

// All downward-closed (resp. upward-closed) subsets, for exhaustive
// small-space checks.  Universe size must be <= 20.
std::vector<PointSet> all_lower_sets(const QSpace& s);
std::vector<PointSet> all_upper_sets(const QSpace& s);

}  // namespace qmet
