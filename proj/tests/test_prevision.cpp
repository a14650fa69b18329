#include <doctest.h>

#include "common.hpp"
#include "polytope_oracle.hpp"
#include "qmet/instances.hpp"
#include "qmet/prevision.hpp"

using namespace qmet;
using namespace qmet::testing;

namespace {

SimpleValuation val(std::initializer_list<std::pair<int, Rat>> ws) {
  SimpleValuation v;
  for (const auto& [p, a] : ws) v.w[p] = a;
  return v;
}

std::vector<Rat> weights_of(const QSpace& s, const SimpleValuation& g) {
  std::vector<Rat> w(s.size(), Rat(0));
  for (const auto& [p, a] : g.w) w[p] = a;
  return w;
}

Polytope lip_box(const QSpace& s, const Rat& a) {
  Polytope pol;
  pol.dim = s.size();
  for (int u = 0; u < s.size(); ++u)
    for (int v = 0; v < s.size(); ++v) {
      if (u == v || s.d(u, v).is_inf()) continue;
      LpConstraint row;
      row.coeffs.assign(s.size(), Rat(0));
      row.coeffs[u] = 1;
      row.coeffs[v] = -1;
      row.rel = Rel::Le;
      row.rhs = s.d(u, v).value();
      pol.rows.push_back(std::move(row));
    }
  pol.upper.assign(s.size(), a);
  return pol;
}

ExtRat eval_at(const QSpace& s, const GenPrevision& f,
               const std::vector<Rat>& h) {
  ExtFunc hf(s.size());
  for (int x = 0; x < s.size(); ++x) hf.v[x] = ExtRat(h[x]);
  return eval_prevision(s, f, hf);
}

}  // namespace

TEST_CASE("prevision evaluation is the generator max or min") {
  QSpace s = s3();
  ExtFunc h({q(3), q(0), q(1)});
  GenPrevision sub{PrevKind::Sublinear,
                   {SimpleValuation::dirac(0), SimpleValuation::dirac(1)}};
  GenPrevision sup{PrevKind::Superlinear, sub.gens};
  CHECK(eval_prevision(s, sub, h) == q(3));
  CHECK(eval_prevision(s, sup, h) == q(0));
  GenPrevision one{PrevKind::Sublinear, {val({{2, Rat(1)}})}};
  CHECK(eval_prevision(s, one, h) == q(1));
  CHECK_THROWS_AS(eval_prevision(s, GenPrevision{PrevKind::Sublinear, {}}, h),
                  Error);
}

TEST_CASE("sublinear distance with Dirac generators is the Hoare distance") {
  QSpace s = s3();
  PointSet ca = PointSet::of(3, {0}), cbc = PointSet::of(3, {1, 2});
  GenPrevision fa = GenPrevision::diracs(PrevKind::Sublinear, ca);
  GenPrevision fbc = GenPrevision::diracs(PrevKind::Sublinear, cbc);
  CHECK(dkrh_sublinear(s, fa, fbc) == dH(s, LowerSet{ca}, LowerSet{cbc}));
  CHECK(dkrh_sublinear(s, fa, fbc, Rat(1) / 2) ==
        dH(s, LowerSet{ca}, LowerSet{cbc}, Rat(1) / 2));
  CHECK(dkrh_sublinear(s, fa, fa) == q(0));

  QSpace t = s2();
  GenPrevision fp = GenPrevision::diracs(PrevKind::Sublinear,
                                         PointSet::of(2, {0}));
  GenPrevision fq = GenPrevision::diracs(PrevKind::Sublinear,
                                         PointSet::of(2, {1}));
  CHECK(dkrh_sublinear(t, fq, fp) == inf());  // dH({q},{p}) = inf
  CHECK(dkrh_sublinear(t, fq, fp, Rat(3)) == q(3));
}

TEST_CASE("superlinear distance with Dirac generators is the Smyth distance") {
  QSpace s = s3();
  PointSet qa = PointSet::of(3, {0}), qbc = PointSet::of(3, {1, 2});
  GenPrevision ga = GenPrevision::diracs(PrevKind::Superlinear, qa);
  GenPrevision gbc = GenPrevision::diracs(PrevKind::Superlinear, qbc);
  for (const Rat& a : {Rat(1) / 2, Rat(1), Rat(3)}) {
    CHECK(ExtRat(dkrh_superlinear(s, ga, gbc, a)) ==
          dQ(s, UpperSet{qa}, UpperSet{qbc}, a));
    CHECK(ExtRat(dkrh_superlinear(s, gbc, ga, a)) ==
          dQ(s, UpperSet{qbc}, UpperSet{qa}, a));
  }
  CHECK(dkrh_superlinear(s, ga, ga, Rat(1)) == 0);
  GenPrevision subl = GenPrevision::diracs(PrevKind::Sublinear, qa);
  CHECK_THROWS_AS(dkrh_superlinear(s, subl, ga, Rat(1)), Error);
}

TEST_CASE("single-generator distances collapse to the valuation distance") {
  QSpace s = s3();
  SimpleValuation a = val({{0, Rat(1) / 2}, {1, Rat(1) / 2}});
  SimpleValuation b = val({{2, Rat(1)}});
  GenPrevision fa{PrevKind::Sublinear, {a}}, fb{PrevKind::Sublinear, {b}};
  GenPrevision ga{PrevKind::Superlinear, {a}}, gb{PrevKind::Superlinear, {b}};
  for (const Rat& bound : {Rat(1) / 2, Rat(2)}) {
    ExtRat expect = dkrh_lp(s, a, b, bound);
    CHECK(dkrh_sublinear(s, fa, fb, bound) == expect);
    CHECK(ExtRat(dkrh_superlinear(s, ga, gb, bound)) == expect);
  }
  CHECK(dkrh_sublinear(s, fa, fb) == dkrh_lp(s, a, b));
  CHECK(dkrh_superlinear(s, ga, gb) == dkrh_lp(s, a, b));
  GenPrevision two{PrevKind::Superlinear, {a, b}};
  CHECK_THROWS_AS(dkrh_superlinear(s, two, gb), Error);
}

TEST_CASE("forks from quasi-lenses") {
  QSpace s = s3();
  SUBCASE("singleton lens") {
    Fork f = fork_from_lens(s, make_quasi_lens(s, PointSet::of(3, {0})));
    CHECK(f.lower.gens.size() == 1);
    CHECK(f.upper.gens.size() == 1);
  }
  SUBCASE("two-point lens on the symmetric space") {
    QuasiLens l = make_quasi_lens(s, PointSet::of(3, {0, 1}));
    Fork f = fork_from_lens(s, l);
    ExtFunc h({q(3), q(1), q(0)});
    CHECK(eval_prevision(s, f.lower, h) == q(1));
    CHECK(eval_prevision(s, f.upper, h) == q(3));
    // The alternative lower form over Q and C agrees.
    GenPrevision core = GenPrevision::diracs(
        PrevKind::Superlinear, l.q.pts.intersect(l.c.pts));
    Rng rng(3);
    for (int i = 0; i < 50; ++i) {
      ExtFunc probe = gen_monotone_func(rng, s, Rat(1));
      CHECK(eval_prevision(s, f.lower, probe) ==
            eval_prevision(s, core, probe));
    }
  }
  SUBCASE("fork distance equals the Plotkin distance") {
    QuasiLens l1 = make_quasi_lens(s, PointSet::of(3, {0}));
    QuasiLens l2 = make_quasi_lens(s, PointSet::of(3, {1, 2}));
    Fork f1 = fork_from_lens(s, l1), f2 = fork_from_lens(s, l2);
    CHECK(ExtRat(fork_distance(s, f1, f2, Rat(3) / 2)) ==
          dP(s, l1, l2, Rat(3) / 2));
    CHECK(fork_distance(s, f1, f1, Rat(1)) == 0);
  }
  SUBCASE("forks differing only in the upper part") {
    Fork f1 = fork_from_lens(s, make_quasi_lens(s, PointSet::of(3, {0})));
    Fork f2 = f1;
    f2.upper = GenPrevision::diracs(PrevKind::Sublinear, PointSet::of(3, {1}));
    Rat d = fork_distance(s, f1, f2, Rat(2));
    CHECK(ExtRat(d) == dkrh_sublinear(s, f1.upper, f2.upper, Rat(2)));
    CHECK(d == 1);  // dH^2({a},{b}) = 1, lower parts coincide
  }
}

TEST_CASE("Walley checks catch corrupted forks") {
  QSpace s = s3();  // discrete order: a and b are incomparable
  Fork bad{GenPrevision{PrevKind::Superlinear, {SimpleValuation::dirac(0)}},
           GenPrevision{PrevKind::Sublinear, {SimpleValuation::dirac(1)}}};
  ExtFunc chi_up_a({q(1), q(0), q(0)});
  WalleyReport rep =
      check_walley(s, bad, {{chi_up_a, ExtFunc::constant(3, q(0))}});
  REQUIRE(!rep.ok());
  CHECK(rep.violations[0].which == "upper");

  // h' = 0 probes reduce Walley to F- <= F+.
  Fork good = fork_from_lens(s, make_quasi_lens(s, PointSet::of(3, {0, 2})));
  Rng rng(9);
  std::vector<std::pair<ExtFunc, ExtFunc>> probes;
  for (int i = 0; i < 100; ++i)
    probes.emplace_back(gen_monotone_func(rng, s, Rat(1)),
                        ExtFunc::constant(3, q(0)));
  CHECK(check_walley(s, good, probes).ok());
}

TEST_CASE("prevision extension through the envelope") {
  QSpace t = s2();
  GenPrevision f{PrevKind::Sublinear,
                 {val({{0, Rat(1) / 2}}), val({{1, Rat(1)}})}};
  ExtFunc h = envelope(t, ExtFunc({q(2), q(1)}), Rat(1));
  ExtRat v = extend_prevision(t, f, h, Rat(1));
  CHECK(v == eval_prevision(t, f, h));
  CHECK(extend_prevision(t, f, h, Rat(2)) == v);

  ExtFunc c = ExtFunc::constant(2, q(4));
  // Constant maps integrate to the constant times the generator mass.
  CHECK(extend_prevision(t, f, c, Rat(1)) == q(4));

  ExtFunc steep({q(3), q(0)});  // needs alpha >= 3 across d(p,q) = 1
  CHECK_THROWS_AS(extend_prevision(t, f, steep, Rat(1)), Error);
  CHECK(extend_prevision(t, f, steep, Rat(3)) ==
        eval_prevision(t, f, steep));
}

namespace {

// Third route for the sup-inf side: enumerate the vertices of the
// lifted polytope {(t, h) : t <= +-(G - G_k)(h) for all k, h
// alpha-Lipschitz with values in [0, a]} and take the best t.
Rat minimax_lhs_by_vertices(const QSpace& s, const SimpleValuation& g,
                            const std::vector<SimpleValuation>& gens,
                            MinimaxSide side, const Rat& a,
                            const Rat& alpha) {
  const int n = s.size();
  Polytope pol;
  pol.dim = 1 + n;
  std::vector<Rat> wg = weights_of(s, g);
  for (const auto& gk : gens) {
    std::vector<Rat> wk = weights_of(s, gk);
    LpConstraint row;
    row.coeffs.assign(1 + n, Rat(0));
    row.coeffs[0] = 1;
    for (int x = 0; x < n; ++x)
      row.coeffs[1 + x] =
          side == MinimaxSide::AN ? wk[x] - wg[x] : wg[x] - wk[x];
    row.rel = Rel::Le;
    row.rhs = 0;
    pol.rows.push_back(std::move(row));
  }
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v) {
      if (u == v || s.d(u, v).is_inf()) continue;
      LpConstraint row;
      row.coeffs.assign(1 + n, Rat(0));
      row.coeffs[1 + u] = 1;
      row.coeffs[1 + v] = -1;
      row.rel = Rel::Le;
      row.rhs = alpha * s.d(u, v).value();
      pol.rows.push_back(std::move(row));
    }
  pol.upper.assign(1 + n, a);
  pol.upper[0] = std::nullopt;
  Rat best = 0;
  for (const auto& v : enumerate_vertices(pol)) best = std::max(best, v[0]);
  return best;
}

}  // namespace

TEST_CASE("minimax exchange on the three-point example") {
  QSpace s = s3();
  SimpleValuation g = SimpleValuation::dirac(0);
  std::vector<SimpleValuation> gens = {SimpleValuation::dirac(1),
                                       SimpleValuation::dirac(2)};
  auto [lan, ran] = minimax_check(s, g, gens, MinimaxSide::AN, Rat(1), Rat(1));
  CHECK(lan == ran);
  CHECK(lan == 1);  // h = chi_{a} realizes the gap on both routes
  CHECK(minimax_lhs_by_vertices(s, g, gens, MinimaxSide::AN, Rat(1), Rat(1)) ==
        1);
  auto [ldn, rdn] = minimax_check(s, g, gens, MinimaxSide::DN, Rat(1), Rat(1));
  CHECK(ldn == rdn);
  CHECK(ldn == 1);
  CHECK(minimax_lhs_by_vertices(s, g, gens, MinimaxSide::DN, Rat(1), Rat(1)) ==
        1);

  auto [l1, r1] = minimax_check(s, g, {g}, MinimaxSide::AN, Rat(1), Rat(1));
  CHECK(l1 == 0);
  CHECK(r1 == 0);
  CHECK_THROWS_AS(minimax_check(s, g, {}, MinimaxSide::AN, Rat(1), Rat(1)),
                  Error);
}

TEST_CASE("minimax agrees with vertex enumeration on random instances") {
  Rng rng(71);
  for (int iter = 0; iter < 10; ++iter) {
    QSpace s = gen_space(rng, 3);
    SimpleValuation g = gen_valuation(rng, s, MassClass::Normalized);
    std::vector<SimpleValuation> gens;
    int m = 1 + static_cast<int>(rng.below(3));
    for (int i = 0; i < m; ++i)
      gens.push_back(gen_valuation(rng, s, MassClass::Normalized));
    Rat a = iter % 2 ? Rat(1) : Rat(1) / 2;
    Rat alpha = Rat(1 + static_cast<long>(rng.below(2)));
    for (MinimaxSide side : {MinimaxSide::AN, MinimaxSide::DN}) {
      auto [lhs, rhs] = minimax_check(s, g, gens, side, a, alpha);
      CHECK(lhs == rhs);
      CHECK(lhs == minimax_lhs_by_vertices(s, g, gens, side, a, alpha));
    }
  }
}

namespace {

// Brute force for sup_h dreal(F_A(h), F_B(h)) over the boxed Lipschitz
// polytope.  The gap is convex on each region where one generator of
// the non-convex side attains its min/max, so scanning the vertices of
// every region polytope and evaluating the true two-sided gap there is
// exhaustive.  Fully independent of the solver decomposition.
Rat brute_prevision_gap(const QSpace& s, const GenPrevision& a,
                        const GenPrevision& b, const Rat& bound) {
  const bool superlinear = a.kind == PrevKind::Superlinear;
  const auto& region_gens = superlinear ? a.gens : b.gens;
  Rat best = 0;
  for (size_t j = 0; j < region_gens.size(); ++j) {
    Polytope pol = lip_box(s, bound);
    std::vector<Rat> wj = weights_of(s, region_gens[j]);
    for (size_t i = 0; i < region_gens.size(); ++i) {
      if (i == j) continue;
      std::vector<Rat> wi = weights_of(s, region_gens[i]);
      LpConstraint row;
      row.coeffs.assign(s.size(), Rat(0));
      // Superlinear side: generator j attains the min of A; sublinear
      // side: generator j attains the max of B.
      for (int x = 0; x < s.size(); ++x)
        row.coeffs[x] = superlinear ? wj[x] - wi[x] : wi[x] - wj[x];
      row.rel = Rel::Le;
      row.rhs = 0;
      pol.rows.push_back(std::move(row));
    }
    for (const auto& h : enumerate_vertices(pol)) {
      ExtRat va = eval_at(s, a, h), vb = eval_at(s, b, h);
      ExtRat gap = dreal(va, vb);
      if (!gap.is_inf()) best = std::max(best, gap.value());
    }
  }
  return best;
}

}  // namespace

TEST_CASE("prevision distances agree with region-wise vertex brute force") {
  Rng rng(61);
  for (int iter = 0; iter < 12; ++iter) {
    QSpace s = gen_space(rng, 3);
    int m = 1 + static_cast<int>(rng.below(3));
    int k = 1 + static_cast<int>(rng.below(3));
    std::vector<SimpleValuation> ga, gb;
    for (int i = 0; i < m; ++i)
      ga.push_back(gen_valuation(rng, s, MassClass::Normalized));
    for (int i = 0; i < k; ++i)
      gb.push_back(gen_valuation(rng, s, MassClass::Normalized));
    Rat a = iter % 2 ? Rat(1) : Rat(1) / 2;

    GenPrevision subA{PrevKind::Sublinear, ga}, subB{PrevKind::Sublinear, gb};
    CHECK(dkrh_sublinear(s, subA, subB, a) ==
          ExtRat(brute_prevision_gap(s, subA, subB, a)));

    GenPrevision supA{PrevKind::Superlinear, ga};
    GenPrevision supB{PrevKind::Superlinear, gb};
    CHECK(dkrh_superlinear(s, supA, supB, a) ==
          brute_prevision_gap(s, supA, supB, a));
  }
}

TEST_CASE("normalization classes are enforced") {
  QSpace s = s3();
  GenPrevision mixed{PrevKind::Sublinear,
                     {SimpleValuation::dirac(0), val({{1, Rat(1) / 2}})}};
  CHECK(mixed.norm_class() == NormClass::Subnormalized);
  GenPrevision heavy{PrevKind::Sublinear, {val({{0, Rat(2)}})}};
  CHECK_THROWS_AS(heavy.norm_class(), Error);
  GenPrevision norm = GenPrevision::diracs(PrevKind::Sublinear,
                                           PointSet::of(3, {0}));
  CHECK_THROWS_AS(dkrh_sublinear(s, norm, mixed, Rat(1)), Error);
}
