#include <gtest/gtest.h>

#include <random>

#include "toriclass/catalog.hpp"
#include "toriclass/code.hpp"
#include "toriclass/laurent.hpp"
#include "toriclass/minkowski.hpp"

using namespace toriclass;

namespace {

using LP = LaurentPolynomial;

LP mono(const Field& F, FieldElement c, std::int64_t i, std::int64_t j) { return LP::monomial(F, c, {i, j}); }
LP cst(const Field& F, FieldElement c) { return LP::constant(F, c); }

}  // namespace

TEST(Evaluate, Examples) {
  const auto F = build_field(7);
  const FieldElement g = F->generator();
  EXPECT_EQ(evaluate(mono(F, 1, 1, 0) - cst(F, 1), {1, g}), 0u);
  EXPECT_EQ(evaluate(mono(F, 1, -1, 1), {g, g}), 1u);
  const LP f = (mono(F, 1, 1, 0) - cst(F, 1)) * (mono(F, 1, 1, 0) - cst(F, g));
  const FieldElement g2 = F->mul(g, g);
  EXPECT_EQ(evaluate(f, {g2, 1}), F->mul(F->sub(g2, 1), F->sub(g2, g)));
  EXPECT_NE(evaluate(f, {g2, 1}), 0u);
  EXPECT_THROW(evaluate(f, {0, 1}), NotOnTorus);
}

TEST(CountTorusZeros, FourLinearFactors) {
  const auto F = build_field(11);
  LP f = cst(F, 3);
  for (int i = 0; i < 4; ++i) f = f * (mono(F, 1, 1, 0) - cst(F, F->exp(i)));
  EXPECT_EQ(count_torus_zeros(f), 40);
}

TEST(CountTorusZeros, ThreeFactorFamilyDependsOnCondition) {
  // d(x - a)(y - b x^-1)(y^-1 - c)
  const auto F = build_field(11);
  auto fam = [&](FieldElement a, FieldElement b, FieldElement c) {
    return cst(F, 2) * (mono(F, 1, 1, 0) - cst(F, a)) * (mono(F, 1, 0, 1) - mono(F, b, -1, 0)) *
           (mono(F, 1, 0, -1) - cst(F, c));
  };
  const FieldElement b = 3, c = 5;
  EXPECT_EQ(count_torus_zeros(fam(F->mul(b, c), b, c)), 28);
  EXPECT_EQ(count_torus_zeros(fam(F->add(F->mul(b, c), 1), b, c)), 27);
  EXPECT_THROW(count_torus_zeros(LP(F)), ZeroPolynomial);
}

TEST(NewtonPolygon, Examples) {
  const auto F = build_field(7);
  const LP f = mono(F, 2, -1, 0) + mono(F, 3, 0, 1) + mono(F, 4, 1, -1);
  EXPECT_TRUE(is_exceptional_triangle(newton_polygon(f)));
  EXPECT_EQ(newton_polygon(cst(F, 5)).size(), 1u);
  const LP sq = (mono(F, 1, 1, 0) - cst(F, 1)) * (mono(F, 1, 0, 1) - cst(F, 1));
  EXPECT_EQ(newton_polygon(sq), lattice_points({{0, 0}, {1, 0}, {0, 1}, {1, 1}}));
  EXPECT_THROW(newton_polygon(LP(F)), ZeroPolynomial);
}

TEST(MonomialBasis, Examples) {
  const auto b1 = monomial_basis(get_polygon({7, 1}));
  ASSERT_EQ(b1.size(), 7u);
  for (int i = 0; i < 7; ++i) EXPECT_EQ(b1[i], (LatticePoint{i, 0}));
  EXPECT_EQ(monomial_basis(lattice_points({{0, 0}, {1, 1}, {0, 1}, {1, 0}})).size(), 4u);
  EXPECT_EQ(monomial_basis(get_polygon({6, 2})).size(), 6u);
}

TEST(Arithmetic, RingLaws) {
  const auto F = build_field(9);
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> e(-2, 2), n(1, 4);
  std::uniform_int_distribution<FieldElement> c(1, 8);
  auto rnd = [&] {
    LP f(F);
    for (int i = n(rng); i > 0; --i) f = f + mono(F, c(rng), e(rng), e(rng));
    return f;
  };
  for (int t = 0; t < 200; ++t) {
    const LP a = rnd(), b = rnd(), d = rnd();
    EXPECT_EQ(a * (b + d), a * b + a * d);
    EXPECT_EQ(a * b, b * a);
    EXPECT_TRUE((a - a).is_zero());
    const TorusPoint pt{F->exp(t), F->exp(3 * t + 1)};
    EXPECT_EQ(evaluate(a * b, pt), F->mul(evaluate(a, pt), evaluate(b, pt)));
  }
}

// Zero counts agree with codeword weights for random messages.
TEST(CrossModule, ZeroCountMatchesEncodedWeight) {
  std::mt19937_64 rng(17);
  for (std::int64_t q : {7, 8, 9}) {
    const auto F = build_field(q);
    const auto C = build_code(get_polygon({7, 12}), F);
    std::uniform_int_distribution<FieldElement> c(0, F->q() - 1);
    for (int t = 0; t < 1000; ++t) {
      std::vector<FieldElement> msg(C.k());
      for (auto& m : msg) m = c(rng);
      const LP f = polynomial_from_coefficients(F, C.polygon.points(), msg);
      const std::int64_t z = f.is_zero() ? static_cast<std::int64_t>(C.n()) : count_torus_zeros(f);
      EXPECT_EQ(z, static_cast<std::int64_t>(C.n()) - weight(encode(C, msg)));
    }
  }
}
