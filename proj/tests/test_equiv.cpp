#include <gtest/gtest.h>

#include <random>

#include "toriclass/catalog.hpp"
#include "toriclass/equiv.hpp"
#include "toriclass/reproduce.hpp"

using namespace toriclass;

namespace {

using Kind = EquivalenceVerdict::Kind;

ToricCode code(int i, std::int64_t q) { return build_code(get_polygon({7, i}), build_field(q)); }

}  // namespace

TEST(ColumnMultiset, SegmentHasSevenPointsOfMultiplicitySeven) {
  const auto M = column_multiset(code(1, 8));
  EXPECT_EQ(M.size(), 7u);
  std::size_t total = 0;
  for (const auto& [p, c] : M) {
    EXPECT_EQ(c, 7u);
    total += c;
  }
  EXPECT_EQ(total, 49u);
}

TEST(ColumnMultiset, TwoDimensionalPolygonHasDistinctPoints) {
  const auto M = column_multiset(code(5, 7));
  EXPECT_EQ(M.size(), 36u);
  for (const auto& [p, c] : M) EXPECT_EQ(c, 1u);
}

TEST(Signature, WeightDistributionSeparates) {
  const auto d = compare_signatures(invariant_signature(code(5, 7)), invariant_signature(code(6, 7)));
  ASSERT_TRUE(d.has_value());
  EXPECT_EQ(d->name, "weight_distribution@36");
  EXPECT_EQ(d->value1, "7206");
  EXPECT_EQ(d->value2, "7800");
}

TEST(Signature, EqualForSameCode) {
  EXPECT_FALSE(compare_signatures(invariant_signature(code(17, 8)), invariant_signature(code(17, 8))).has_value());
}

TEST(FindEquivalence, ExceptionalPairsOverSevenAndEight) {
  for (auto [a, b, q] : {std::tuple{22, 15, 7}, {17, 18, 8}}) {
    const auto C1 = code(a, q), C2 = code(b, q);
    const auto v = find_monomial_equivalence(C1, C2);
    ASSERT_EQ(v.kind, Kind::Equivalent) << a << " " << b;
    ASSERT_TRUE(v.witness.has_value());
    EXPECT_TRUE(verify_witness(C1, C2, *v.witness));
  }
}

TEST(FindEquivalence, CodeWithItself) {
  const auto C = code(17, 8);
  const auto v = find_monomial_equivalence(C, C);
  ASSERT_EQ(v.kind, Kind::Equivalent);
  EXPECT_TRUE(verify_witness(C, C, *v.witness));
}

TEST(FindEquivalence, DifferentDistributionsAreInequivalent) {
  const auto v = find_monomial_equivalence(code(5, 7), code(6, 7));
  EXPECT_EQ(v.kind, Kind::Inequivalent);
  EXPECT_EQ(v.certificate, "weight_distribution@36");
}

TEST(FindEquivalence, SevenVersusTwelveRecorded) {
  const auto v = find_monomial_equivalence(code(7, 7), code(12, 7));
  EXPECT_NE(v.kind, Kind::Equivalent);
  RecordProperty("verdict", to_string(v.kind) + " " + v.certificate);
}

TEST(FindEquivalence, Incomparable) {
  EXPECT_THROW(find_monomial_equivalence(code(5, 7), code(5, 8)), Incomparable);
  EXPECT_THROW(find_monomial_equivalence(code(5, 7), build_code(get_polygon({6, 3}), build_field(7))),
               Incomparable);
}

TEST(FindEquivalence, Symmetric) {
  for (auto [a, b] : {std::pair{9, 19}, {15, 22}, {5, 6}, {16, 18}}) {
    const auto ab = find_monomial_equivalence(code(a, 7), code(b, 7));
    const auto ba = find_monomial_equivalence(code(b, 7), code(a, 7));
    EXPECT_EQ(ab.kind, ba.kind) << a << " " << b;
    if (ba.witness) {
      EXPECT_TRUE(verify_witness(code(b, 7), code(a, 7), *ba.witness));
    }
  }
}

TEST(Witness, RandomWitnessDoesNotMapFiveToSix) {
  std::mt19937_64 rng(4);
  const auto C1 = code(5, 7), C2 = code(6, 7);
  for (int t = 0; t < 20; ++t) EXPECT_FALSE(verify_witness(C1, C2, random_witness(C1.n(), *C1.field, rng)));
}

TEST(Witness, ScrambledCodesAreRecovered) {
  std::mt19937_64 rng(8);
  for (int i : {5, 12, 13, 20}) {
    const auto C = code(i, 7);
    for (int t = 0; t < 5; ++t) {
      const auto w = random_witness(C.n(), *C.field, rng);
      const LinearCode S = apply_witness(C, w);
      EXPECT_TRUE(verify_witness(C, S, w));
      const auto v = find_monomial_equivalence(C, S);
      ASSERT_EQ(v.kind, Kind::Equivalent) << i;
      EXPECT_TRUE(verify_witness(C, S, *v.witness));
    }
  }
}

TEST(Witness, LatticeEquivalentPolygonsGiveEquivalentCodes) {
  std::mt19937_64 rng(21);
  const auto F = build_field(7);
  int done = 0;
  for (int t = 0; done < 20 && t < 400; ++t) {
    const auto& P = get_polygon({7, 5 + t % 10});
    const auto Q = apply_map(detail::random_unimodular(rng), P);
    if (fit_q_min(Q) > 7) continue;
    ++done;
    const auto C1 = build_code(P, F), C2 = build_code(Q, F);
    const auto v = find_monomial_equivalence(C1, C2);
    ASSERT_EQ(v.kind, Kind::Equivalent);
    EXPECT_TRUE(verify_witness(C1, C2, *v.witness));
  }
  EXPECT_EQ(done, 20);
}

// The search alone, with the signature gate bypassed, finds no map between
// codes whose weight distributions differ.
TEST(Search, NoFalseWitnessWithoutSignatureGate) {
  for (auto [a, b] : {std::pair{5, 6}, {7, 12}, {3, 4}}) {
    const auto P1 = build_profile(code(a, 7)), P2 = build_profile(code(b, 7));
    EquivalenceOptions opt;
    opt.column_transitive = true;
    detail::MonomialSearch s(P1, P2, opt);
    const auto A = s.run();
    EXPECT_FALSE(A.has_value()) << a << " " << b;
    EXPECT_FALSE(s.exhausted_budget());
  }
}
