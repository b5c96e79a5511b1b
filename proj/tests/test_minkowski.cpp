#include <gtest/gtest.h>

#include <random>

#include "toriclass/catalog.hpp"
#include "toriclass/code.hpp"
#include "toriclass/laurent.hpp"
#include "toriclass/minkowski.hpp"

using namespace toriclass;

namespace {

LatticePolytope seg(LatticePoint a, LatticePoint b) { return lattice_points({a, b}); }
const LatticePolytope kUnitSquare = lattice_points({{0, 0}, {1, 0}, {0, 1}, {1, 1}});
const LatticePolytope kUnitTriangle = lattice_points({{0, 0}, {1, 0}, {0, 1}});

// Sum of summands reproduces the target up to translation.
bool sums_to(const std::vector<LatticePolytope>& parts, const LatticePolytope& P) {
  LatticePolytope acc = lattice_points({{0, 0}});
  for (const auto& s : parts) acc = minkowski_sum(acc, s);
  return acc.translated(P.min_corner() - acc.min_corner()) == P;
}

}  // namespace

TEST(MinkowskiSum, Examples) {
  EXPECT_EQ(minkowski_sum(seg({0, 0}, {1, 0}), seg({0, 0}, {0, 1})), kUnitSquare);
  const auto S = minkowski_sum(exceptional_triangle(), seg({0, 0}, {1, 0}));
  EXPECT_EQ(S.size(), 7u);
  EXPECT_EQ(canonical(S), canonical(get_polygon({7, 13})));
  const auto P = get_polygon({7, 9});
  EXPECT_EQ(minkowski_sum(P, lattice_points({{2, -3}})), P.translated({2, -3}));
}

TEST(MinkowskiLength, Examples) {
  EXPECT_EQ(minkowski_length(seg({-1, 0}, {3, 0})), 4);
  EXPECT_EQ(minkowski_length(kUnitTriangle), 1);
  EXPECT_EQ(minkowski_length(kUnitSquare), 2);
  EXPECT_THROW(minkowski_length(lattice_points({{0, 0}})), NotPositiveDimensional);
}

TEST(MinkowskiLength, DecompositionReassembles) {
  for (const auto& e : Catalog::instance().entries()) {
    const auto D = maximal_decomposition(e.polytope);
    for (const auto& s : D.summands) EXPECT_GE(s.dim(), 1);
    EXPECT_TRUE(sums_to(D.summands, e.polytope)) << to_string(e.id);
  }
}

TEST(MinkowskiLength, SuperadditiveOnRandomSums) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> c(-2, 2), n(2, 3);
  int done = 0;
  while (done < 200) {
    auto rnd = [&] {
      std::vector<LatticePoint> pts;
      for (int i = n(rng); i > 0; --i) pts.push_back({c(rng), c(rng)});
      return lattice_points(pts);
    };
    const auto P = rnd(), Q = rnd();
    if (P.dim() < 1 || Q.dim() < 1) continue;
    const auto S = minkowski_sum(P, Q);
    if (S.size() > 12) continue;
    EXPECT_GE(minkowski_length(S), minkowski_length(P) + minkowski_length(Q));
    ++done;
  }
}

TEST(FullMinkowskiLength, CatalogAnnotations) {
  EXPECT_EQ(full_minkowski_length(get_polygon({7, 7})), 3);
  EXPECT_EQ(full_minkowski_length(get_polygon({7, 14})), 4);
  EXPECT_EQ(full_minkowski_length(get_polygon({7, 13})), 2);
  for (const auto& e : Catalog::instance().entries())
    if (e.minkowski_L) EXPECT_EQ(full_minkowski_length(e.polytope), *e.minkowski_L) << to_string(e.id);
}

TEST(FullMinkowskiLength, AtLeastLengthEqualOnSegments) {
  for (int k = 2; k <= 7; ++k)
    for (const auto& P : enumerate_classes(k)) {
      if (P.dim() < 1) continue;
      EXPECT_GE(full_minkowski_length(P), minkowski_length(P));
      if (P.dim() == 1) EXPECT_EQ(full_minkowski_length(P), minkowski_length(P));
    }
}

TEST(ExceptionalTriangle, Recognition) {
  EXPECT_TRUE(is_exceptional_triangle(lattice_points({{-1, 0}, {0, 1}, {1, -1}})));
  EXPECT_FALSE(is_exceptional_triangle(kUnitTriangle));
  EXPECT_FALSE(is_exceptional_triangle(lattice_points({{0, 0}, {3, 0}, {0, 3}})));
}

TEST(ExceptionalObstruction, Examples) {
  EXPECT_TRUE(has_exceptional_obstruction(get_polygon({7, 13})));
  EXPECT_FALSE(has_exceptional_obstruction(get_polygon({7, 9})));
  EXPECT_FALSE(has_exceptional_obstruction(get_polygon({7, 14})));
  for (const auto& e : Catalog::instance().entries())
    if (e.obstruction) EXPECT_EQ(has_exceptional_obstruction(e.polytope), *e.obstruction) << to_string(e.id);
}

TEST(ExceptionalObstruction, SubpolygonAnnotations) {
  for (const auto& e : Catalog::instance().entries()) {
    if (!e.exceptional_subpolygon) continue;
    bool found = false;
    for (const auto& S : sub_polytopes(e.polytope)) found = found || is_exceptional_triangle(S);
    EXPECT_EQ(found, *e.exceptional_subpolygon) << to_string(e.id);
  }
}

TEST(LsFormulas, Examples) {
  EXPECT_EQ(ls_rectangle_distance(2, 1, 7), 20);
  EXPECT_EQ(ls_rectangle_distance(0, 0, 7), 36);
  EXPECT_EQ(ls_rectangle_distance(1, 1, 8), 36);
  EXPECT_EQ(ls_triangle_distance(3, 3, 8), 28);
  EXPECT_EQ(ls_triangle_distance(1, 4, 9), 32);
  EXPECT_EQ(ls_triangle_distance(5, 1, 7), 6);
  EXPECT_THROW(ls_rectangle_distance(6, 1, 7), DoesNotFit);
  EXPECT_THROW(ls_triangle_distance(1, 6, 7), DoesNotFit);
}

TEST(LsFormulas, MatchBruteForce) {
  for (std::int64_t q : {7, 8, 9}) {
    const auto F = build_field(q);
    for (std::int64_t a = 0; a <= 3; ++a)
      for (std::int64_t b = 0; b <= a; ++b) {
        const auto box = lattice_points({{0, 0}, {a, 0}, {0, b}, {a, b}});
        if (box.size() <= 8)
          EXPECT_EQ(min_distance(build_code(box, F)), ls_rectangle_distance(a, b, q)) << a << "x" << b;
        if (b == 0) continue;
        const auto tri = lattice_points({{0, 0}, {a, 0}, {0, b}});
        if (tri.size() <= 8)
          EXPECT_EQ(min_distance(build_code(tri, F)), ls_triangle_distance(a, b, q)) << a << "/" << b;
      }
  }
  EXPECT_EQ(min_distance(build_code(lattice_points({{0, 0}, {1, 0}, {0, 4}}), build_field(9))), 32);
}

TEST(SsThreshold, Examples) {
  EXPECT_EQ(ss_threshold(Rational(4), 2, BoundVariant::Exceptional), Rational(25));
  EXPECT_EQ(ss_threshold(Rational(1, 2), 1, BoundVariant::Exceptional), Rational(23));
  EXPECT_EQ(ss_constant(Rational(4), 2, BoundVariant::Exceptional), Rational(9, 4));
  for (int L = 1; L <= 6; ++L)
    for (int A2 = 1; A2 <= 20; ++A2)
      EXPECT_GE(ss_threshold(Rational(A2, 2), L, BoundVariant::NoExceptional), Rational(37));
}

TEST(SsThreshold, IrrationalRootRoundsUp) {
  // c = 7/2 - 3 + 11/4 = 13/4: (c + sqrt(c^2 + 5/2))^2 is about 47.1.
  const Rational t = ss_threshold(Rational(7), 3, BoundVariant::NoExceptional);
  EXPECT_EQ(t, Rational(48));
}

TEST(SsLowerBound, Examples) {
  const auto r14 = ss_lower_bound(get_polygon({7, 14}), 37);
  EXPECT_EQ(r14.bound_value, 1152);
  EXPECT_EQ(r14.variant, BoundVariant::NoExceptional);
  EXPECT_EQ(r14.L, 4);
  const auto r13 = ss_lower_bound(get_polygon({7, 13}), 23);
  EXPECT_EQ(r13.bound_value, 432);
  EXPECT_EQ(r13.variant, BoundVariant::Exceptional);
  try {
    ss_lower_bound(get_polygon({7, 9}), 11);
    FAIL() << "expected ThresholdNotMet";
  } catch (const ThresholdNotMet& e) {
    EXPECT_EQ(e.threshold_num(), 37);
    EXPECT_EQ(e.threshold_den(), 1);
  }
}

TEST(SsLowerBound, ReportInvariants) {
  for (const auto& e : Catalog::instance().entries()) {
    if (e.polytope.dim() < 2) continue;
    for (std::int64_t q : {37, 41, 49, 64}) {
      if (fit_q_min(e.polytope) > q) continue;
      try {
        const auto r = ss_lower_bound(e.polytope, q);
        EXPECT_LE(r.bound_value, (q - 1) * (q - 1));
        EXPECT_GE(r.q_threshold, Rational(23));
      } catch (const ThresholdNotMet&) {
      }
    }
  }
}

TEST(TorusZeroBound, Examples) {
  EXPECT_EQ(torus_zero_bound(1, 3, 11), 15);
  EXPECT_EQ(torus_zero_bound(0, 3, 7), 5);
  EXPECT_EQ(torus_zero_bound(2, 3, 25), 43);
  EXPECT_EQ(floor_scaled_sqrt(2, 23), 9);
}

// Random f whose Newton polygon is a dim-2 Minkowski-indecomposable polygon
// is absolutely irreducible, so its zero count obeys the bound.
TEST(TorusZeroBound, HoldsOnIndecomposableNewtonPolygons) {
  std::mt19937_64 rng(99);
  int checked = 0;
  for (std::int64_t q : {7, 8}) {
    const auto F = build_field(q);
    std::uniform_int_distribution<int> c(0, 3), terms(3, 6);
    std::uniform_int_distribution<FieldElement> coef(1, F->q() - 1);
    for (int t = 0; t < 2000 && checked < 500 * (q - 6); ++t) {
      LaurentPolynomial::Terms m;
      for (int i = terms(rng); i > 0; --i) m[{c(rng), c(rng)}] = coef(rng);
      const LaurentPolynomial f(F, m);
      const auto P = newton_polygon(f);
      if (P.dim() < 2 || minkowski_length(P) != 1) continue;
      ++checked;
      EXPECT_LE(count_torus_zeros(f), torus_zero_bound(P.interior_count(), primitive_edge_count(P), q));
    }
  }
  EXPECT_GE(checked, 500);
}

TEST(PrimitiveEdges, Examples) {
  EXPECT_EQ(primitive_edge_count(exceptional_triangle()), 3);
  EXPECT_EQ(primitive_edge_count(lattice_points({{0, 0}, {2, 0}, {0, 2}})), 0);
  EXPECT_EQ(primitive_edge_count(kUnitSquare), 4);
  EXPECT_THROW(primitive_edge_count(seg({0, 0}, {2, 0})), NotPolygon);
}

TEST(BruteForce, NeverBelowEnclosingShapes) {
  // d(C_P) >= d of any box containing P.
  for (int i : {4, 5, 8, 12}) {
    const auto& P = get_polygon({7, i});
    const auto span = P.max_corner() - P.min_corner();
    for (std::int64_t q : {7, 8}) {
      if (std::max(span.x, span.y) > q - 2) continue;
      EXPECT_GE(min_distance(build_code(P, build_field(q))), ls_rectangle_distance(span.x, span.y, q));
    }
  }
}
