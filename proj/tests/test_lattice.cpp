#include <gtest/gtest.h>

#include <random>
#include <set>
#include <sstream>

#include "toriclass/catalog.hpp"
#include "toriclass/lattice.hpp"
#include "toriclass/reproduce.hpp"

using namespace toriclass;

namespace {

LatticePolytope P6(int i) { return get_polygon({6, i}); }

// Independent oracle: brute-force scan of the bounding box with exact
// half-plane tests against the hull.
std::size_t scan_count(const std::vector<LatticePoint>& hull) {
  std::int64_t x0 = hull[0].x, x1 = x0, y0 = hull[0].y, y1 = y0;
  for (auto p : hull) {
    x0 = std::min(x0, p.x), x1 = std::max(x1, p.x);
    y0 = std::min(y0, p.y), y1 = std::max(y1, p.y);
  }
  const auto h = detail::convex_hull(hull);
  std::size_t n = 0;
  for (auto x = x0; x <= x1; ++x)
    for (auto y = y0; y <= y1; ++y) {
      bool in = true;
      if (h.size() >= 3) {
        for (std::size_t i = 0; i < h.size(); ++i)
          if (cross(h[i], h[(i + 1) % h.size()], {x, y}) < 0) in = false;
      } else if (h.size() == 2) {
        in = cross(h[0], h[1], {x, y}) == 0 && std::min(h[0].x, h[1].x) <= x && x <= std::max(h[0].x, h[1].x) &&
             std::min(h[0].y, h[1].y) <= y && y <= std::max(h[0].y, h[1].y);
      } else {
        in = x == h[0].x && y == h[0].y;
      }
      n += in;
    }
  return n;
}

}  // namespace

TEST(LatticePoints, Segment) {
  const auto P = lattice_points({{0, 0}, {5, 0}});
  EXPECT_EQ(P.size(), 6u);
  EXPECT_EQ(P.dim(), 1);
}

TEST(LatticePoints, HullOfP62) {
  const auto P = lattice_points({{0, 0}, {4, 0}, {0, 1}});
  EXPECT_EQ(P.size(), 6u);
  EXPECT_EQ(P, P6(2));
}

TEST(LatticePoints, DoubleTriangleBoundaryInterior) {
  const auto P = lattice_points({{0, 0}, {2, 0}, {0, 2}});
  EXPECT_EQ(P.size(), 6u);
  EXPECT_EQ(P.boundary_count(), 6);
  EXPECT_EQ(P.interior_count(), 0);
}

TEST(LatticePoints, MatchesScanOracleOnRandomHulls) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> c(-4, 4), n(1, 5);
  for (int t = 0; t < 300; ++t) {
    std::vector<LatticePoint> pts;
    for (int i = n(rng); i > 0; --i) pts.push_back({c(rng), c(rng)});
    EXPECT_EQ(lattice_points(pts).size(), scan_count(pts));
  }
}

TEST(Area, Examples) {
  EXPECT_EQ(area(lattice_points({{0, 0}, {1, 0}, {0, 1}})), Rational(1, 2));
  EXPECT_EQ(area(P6(2)), Rational(2));
  EXPECT_EQ(area(lattice_points({{0, 0}, {1, 0}, {0, 1}, {1, 1}})), Rational(1));
  EXPECT_THROW(area(lattice_points({{0, 0}, {3, 0}})), ZeroAreaDegenerate);
}

TEST(PickArea, Examples) {
  EXPECT_EQ(pick_area(6, 0), Rational(2));
  EXPECT_EQ(pick_area(3, 0), Rational(1, 2));
  EXPECT_EQ(pick_area(7, 0), Rational(5, 2));
}

TEST(ApplyMap, Examples) {
  const auto P = P6(5);
  EXPECT_EQ(apply_map(UnimodularAffineMap::identity(), P), P);
  EXPECT_EQ(apply_map(UnimodularAffineMap({1, 1, 0, 1}, {0, 0}), P6(1)), P6(1));
  EXPECT_EQ(apply_map(UnimodularAffineMap::translation({1, 1}), lattice_points({{0, 0}})).points(),
            (std::vector<LatticePoint>{{1, 1}}));
  EXPECT_THROW(UnimodularAffineMap({2, 0, 0, 1}, {0, 0}), NotUnimodular);
}

TEST(ApplyMap, PreservesCountsAndArea) {
  std::mt19937_64 rng(11);
  for (const auto& e : Catalog::instance().entries()) {
    const auto T = detail::random_unimodular(rng);
    const auto Q = apply_map(T, e.polytope);
    EXPECT_EQ(Q.size(), e.polytope.size());
    if (e.polytope.dim() == 2) {
      EXPECT_EQ(area(Q), area(e.polytope));
      EXPECT_EQ(Q.interior_count(), e.polytope.interior_count());
    }
  }
}

TEST(CanonicalForm, AugmentationExamples) {
  EXPECT_EQ(canonical(P6(2).with_point({-1, 0})), canonical(P6(2).with_point({5, 0})));
  EXPECT_EQ(canonical(P6(2).with_point({0, -1})), canonical(P6(2).with_point({8, -1})));
}

TEST(CanonicalForm, IdempotentAndMapSendsToForm) {
  for (const auto& e : Catalog::instance().entries()) {
    const auto [C, T] = canonical_form(e.polytope);
    EXPECT_EQ(canonical(C), C);
    EXPECT_EQ(apply_map(T, e.polytope), C);
    EXPECT_EQ(C.min_corner(), (LatticePoint{0, 0}));
  }
}

TEST(CanonicalForm, OrbitInvarianceRandomMaps) {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> c(-3, 3), n(1, 9);
  for (int t = 0; t < 1000; ++t) {
    std::vector<LatticePoint> pts;
    for (int i = n(rng); i > 0; --i) pts.push_back({c(rng), c(rng)});
    auto P = lattice_points(pts);
    if (P.size() > 9) continue;
    EXPECT_EQ(canonical(apply_map(detail::random_unimodular(rng), P)), canonical(P));
  }
}

TEST(CanonicalForm, MirrorImagesAreEquivalent) {
  const auto P = get_polygon({7, 15});
  EXPECT_EQ(canonical(apply_map(UnimodularAffineMap({-1, 0, 0, 1}, {0, 0}), P)), canonical(P));
}

TEST(AreLatticeEquivalent, Examples) {
  const auto seg = lattice_points({{0, 0}, {0, 5}});
  auto T = are_lattice_equivalent(P6(1), seg);
  ASSERT_TRUE(T.has_value());
  EXPECT_EQ(apply_map(*T, P6(1)), seg);
  auto T2 = are_lattice_equivalent(P6(2).with_point({4, -1}), get_polygon({7, 14}));
  ASSERT_TRUE(T2.has_value());
  EXPECT_EQ(apply_map(*T2, P6(2).with_point({4, -1})), get_polygon({7, 14}));
  EXPECT_FALSE(are_lattice_equivalent(get_polygon({7, 1}), get_polygon({7, 2})).has_value());
}

TEST(CandidatePoints, ExactAdditionsForP62) {
  // Brute force over a wide window finds exactly these 15.
  const std::set<LatticePoint> want{{-1, 1}, {1, 1},  {-1, 0}, {5, 0},  {-1, -1}, {0, -1}, {1, -1}, {2, -1},
                                    {3, -1}, {4, -1}, {5, -1}, {6, -1}, {7, -1},  {8, -1}, {9, -1}};
  const auto adds = valid_additions(P6(2));
  EXPECT_EQ(std::set<LatticePoint>(adds.begin(), adds.end()), want);
  const auto cands = candidate_points(P6(2));
  for (auto v : adds) EXPECT_NE(std::find(cands.begin(), cands.end(), v), cands.end());
}

TEST(CandidatePoints, SegmentRows) {
  const auto cands = valid_additions(P6(1));
  auto has = [&](LatticePoint p) { return std::find(cands.begin(), cands.end(), p) != cands.end(); };
  EXPECT_TRUE(has({6, 0}));
  EXPECT_TRUE(has({-1, 0}));
  for (int x = -5; x <= 5; ++x) {
    EXPECT_TRUE(has({x, 1}));
    EXPECT_TRUE(has({x, -1}));
  }
}

TEST(CandidatePoints, SinglePointNeighbours) {
  const auto cands = candidate_points(lattice_points({{0, 0}}));
  for (int dx = -1; dx <= 1; ++dx)
    for (int dy = -1; dy <= 1; ++dy)
      if (dx || dy) {
        EXPECT_NE(std::find(cands.begin(), cands.end(), LatticePoint{dx, dy}), cands.end());
      }
}

TEST(CandidatePoints, SupersetOfBruteForceWindow) {
  // Every addition found in a wide window is also a candidate.
  for (int i = 1; i <= 14; ++i) {
    const auto P = P6(i);
    const auto cands = candidate_points(P);
    std::set<LatticePoint> cs(cands.begin(), cands.end());
    for (int x = -15; x <= 15; ++x)
      for (int y = -15; y <= 15; ++y)
        if (!P.contains({x, y}) && P.with_point({x, y}).size() == P.size() + 1) {
          // Off-line additions to a segment form one shear orbit per side; the
          // generator keeps a window of each row.
          const bool covered = cs.count({x, y}) || (P.dim() == 1 && cs.count({0, y}));
          EXPECT_TRUE(covered) << i << ": (" << x << "," << y << ")";
        }
  }
}

TEST(EnumerateClasses, Counts) {
  EXPECT_EQ(enumerate_classes(2).size(), 1u);
  EXPECT_EQ(enumerate_classes(3).size(), 2u);
  EXPECT_EQ(enumerate_classes(6).size(), 14u);
  EXPECT_EQ(enumerate_classes(7).size(), 22u);
  EXPECT_EQ(enumerate_classes(8).size(), 42u);
}

TEST(EnumerateClasses, ClosureUnderVertexRemoval) {
  for (int k = 3; k <= 8; ++k) {
    std::set<LatticePolytope> prev;
    for (const auto& P : enumerate_classes(k - 1)) prev.insert(P);
    for (const auto& P : enumerate_classes(k)) {
      bool found = false;
      for (const auto& v : P.hull_vertices()) {
        std::vector<LatticePoint> rest;
        for (const auto& p : P.points())
          if (!(p == v)) rest.push_back(p);
        const auto Q = polytope_from_points(rest);
        if (Q.size() == rest.size() && prev.count(canonical(Q))) found = true;
      }
      EXPECT_TRUE(found) << format_points(P);
    }
  }
}

TEST(EnumerateClasses, PickConsistency) {
  for (int k = 3; k <= 8; ++k)
    for (const auto& P : enumerate_classes(k))
      if (P.dim() == 2) {
        EXPECT_EQ(area(P), pick_area(P.boundary_count(), P.interior_count()));
      }
}

TEST(TextFormat, RoundTrip) {
  const PolytopeRecord r{7, 15, get_polygon({7, 15})};
  const std::string line = format_record(r);
  const auto back = parse_record(line);
  EXPECT_EQ(back.k, 7);
  EXPECT_EQ(back.id, 15);
  EXPECT_EQ(back.polytope, r.polytope);
  std::istringstream in("# comment\n\n" + line + "\nk=6 id=1 pts=(0,0)(5,0)\n");
  EXPECT_EQ(parse_records(in).size(), 2u);
  EXPECT_THROW(parse_record("k=7 id=1"), ParseError);
  EXPECT_THROW(parse_record("pts=(0,0)(1"), ParseError);
}

TEST(TextFormat, ExampleLine) {
  const auto r = parse_record("k=7 id=15 pts=(-1,0)(-1,1)(0,0)(1,0)(2,-1)(2,0)(3,0)");
  EXPECT_EQ(r.polytope.size(), 7u);
  EXPECT_EQ(format_points(r.polytope), "(-1,0)(-1,1)(0,0)(1,0)(2,-1)(2,0)(3,0)");
}
