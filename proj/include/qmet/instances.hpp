#pragma once

#include <cstdint>
#include <random>

#include "qmet/formal_ball.hpp"
#include "qmet/lipschitz.hpp"
#include "qmet/sets.hpp"
#include "qmet/valuation.hpp"

namespace qmet {

// Deterministic source of randomness for reproducible instances: only
// raw mt19937_64 outputs are used (never std distributions, whose
// results are implementation-defined).
class Rng {
public:
  explicit Rng(uint64_t seed) : eng_(seed) {}
  uint64_t next() { return eng_(); }
  long below(long n) {
    return n <= 1 ? 0 : static_cast<long>(next() % static_cast<uint64_t>(n));
  }
  bool chance(long num, long den) { return below(den) < num; }

private:
  std::mt19937_64 eng_;
};

// Random valid quasi-metric space with 2..max_n points: distances drawn
// from a small rational grid (with inf), shortest-path closed, then T0
// is repaired by merging mutual-zero-distance points.
QSpace gen_space(Rng& rng, int max_n);

// Symmetric variant (a genuine metric space, all distances finite).
QSpace gen_metric_space(Rng& rng, int max_n);

enum class MassClass { Normalized, Subnormalized, General };
SimpleValuation gen_valuation(Rng& rng, const QSpace& s, MassClass cls);

ExtFunc gen_func(Rng& rng, const QSpace& s, bool allow_inf);

// Monotone (hence continuous) random function with values from a small
// finite grid scaled by `scale`.
ExtFunc gen_monotone_func(Rng& rng, const QSpace& s, const Rat& scale);

PointSet gen_pointset(Rng& rng, const QSpace& s, bool nonempty);

FormalBall gen_ball(Rng& rng, const QSpace& s);

Rat gen_radius(Rng& rng);

}  // namespace qmet
