#include <gtest/gtest.h>

#include <set>

#include "oracle.hpp"
#include "quadgon/cohomology.hpp"
#include "quadgon/matrix.hpp"
#include "quadgon/quadric.hpp"

using namespace quadgon;

namespace {

const PrimeField F;
constexpr oracle::i64 P = 65537;

BiForm<PrimeField> random_form(Bidegree d, Rng& rng) {
  auto f = BiForm<PrimeField>::zero(F, d);
  for (auto& c : f.coeffs) c = F.random(rng);
  return f;
}

std::vector<oracle::i64> as_i64(const BiForm<PrimeField>& f) { return {f.coeffs.begin(), f.coeffs.end()}; }

std::vector<PrimeField::Element> apply(const Matrix<PrimeField>& m, const BiForm<PrimeField>& f) {
  return multiply(F, m, f.coeffs);
}

}  // namespace

TEST(MonomialBasis, SizesMatchLinearSystemDimension) {
  EXPECT_EQ(monomial_basis({1, 1}).size(), 4U);
  EXPECT_EQ(monomial_basis({2, 1}).size(), 6U);
  EXPECT_EQ(monomial_basis({1, 2}).size(), 6U);
  EXPECT_EQ(monomial_basis({0, 0}).size(), 1U);
  for (int a = 0; a <= 6; ++a)
    for (int b = 0; b <= 6; ++b) EXPECT_EQ(static_cast<int>(monomial_basis({a, b}).size()), (a + 1) * (b + 1));
}

TEST(MonomialBasis, OrderIsFirstExponentMajorAndDistinct) {
  const auto basis = monomial_basis({2, 3});
  std::set<std::pair<int, int>> seen(basis.begin(), basis.end());
  EXPECT_EQ(seen.size(), basis.size());
  for (std::size_t k = 0; k < basis.size(); ++k) {
    EXPECT_EQ(basis[k], std::make_pair(static_cast<int>(k) / 4, static_cast<int>(k) % 4));
    EXPECT_EQ(monomial_index({2, 3}, basis[k].first, basis[k].second), k);
  }
}

TEST(MonomialBasis, NegativeBidegreeIsAnEmptySystem) {
  try {
    monomial_basis({-1, 2});
    FAIL();
  } catch (const Error& e) {
    EXPECT_STREQ(e.what(), "empty system");
  }
}

TEST(Points, ProjectiveEqualityIgnoresScaling) {
  const QuadricPoint<PrimeField> A{{3, 5}, {7, 1}};
  const QuadricPoint<PrimeField> B{{F.mul(3, 9), F.mul(5, 9)}, {F.mul(7, 4), 4}};
  EXPECT_TRUE(same_point(F, A, B));
  EXPECT_FALSE(same_point(F, A, QuadricPoint<PrimeField>{{3, 5}, {7, 2}}));
  EXPECT_FALSE(valid_point(F, QuadricPoint<PrimeField>{{0, 0}, {1, 1}}));
}

TEST(ConditionRows, EmptySchemeGivesNoRows) {
  const auto m = condition_rows(F, PointScheme<PrimeField>{}, {3, 2});
  EXPECT_EQ(m.rows(), 0U);
  EXPECT_EQ(m.cols(), 12U);
}

TEST(ConditionRows, FatPointRowsAreValueAndChartDerivatives) {
  // Oracle: dual-number expansion of f at the affine point (x, y) = (5, 12).
  Rng rng(1);
  PointScheme<PrimeField> s;
  s.add(ItemKind::fat, make_point(F, 5U, 12U));
  const auto m = condition_rows(F, s, {2, 2});
  EXPECT_EQ(m.rows(), 3U);
  EXPECT_EQ(m.cols(), 9U);
  EXPECT_EQ(rank(F, m), 3U);
  for (int trial = 0; trial < 20; ++trial) {
    const auto f = random_form({2, 2}, rng);
    const auto jet = oracle::jet_affine(as_i64(f), 2, 2, 5, 12, P);
    const auto v = apply(m, f);
    EXPECT_EQ(v[0], jet.value);
    EXPECT_EQ(v[1], jet.dx);
    EXPECT_EQ(v[2], jet.dy);
  }
}

TEST(ConditionRows, ChartAtInfinityDifferentiatesInTheOtherCoordinate) {
  // At [1:0] x [y:1] the chart coordinate is t/s; f(1, x, y, 1) near x = 0.
  Rng rng(2);
  const QuadricPoint<PrimeField> at_inf{{1, 0}, {9, 1}};
  for (int trial = 0; trial < 10; ++trial) {
    const auto f = random_form({3, 2}, rng);
    const auto want_dx = oracle::eval_dual(as_i64(f), 3, 2, {1, 0}, {0, 1}, {9, 0}, {1, 0}, P);
    const auto want_dy = oracle::eval_dual(as_i64(f), 3, 2, {1, 0}, {0, 0}, {9, 1}, {1, 0}, P);
    EXPECT_EQ(dot(F, evaluation_row(F, {3, 2}, at_inf), f.coeffs), want_dx.a);
    EXPECT_EQ(dot(F, evaluation_row(F, {3, 2}, at_inf, 1, 0), f.coeffs), want_dx.b);
    EXPECT_EQ(dot(F, evaluation_row(F, {3, 2}, at_inf, 0, 1), f.coeffs), want_dy.b);
  }
}

TEST(ConditionRows, RulingTangentInFirstFactorOnLinearForms) {
  PointScheme<PrimeField> s;
  s.add(ItemKind::ruling_tangent, make_point(F, 4U, 6U), Ruling::first);
  const auto m = condition_rows(F, s, {1, 0});
  EXPECT_EQ(m.rows(), 2U);
  EXPECT_EQ(m.cols(), 2U);
  EXPECT_EQ(rank(F, m), 2U);
  EXPECT_TRUE(kernel_basis(F, m).empty());
}

TEST(ConditionRows, CollidingSupportsAreRejected) {
  PointScheme<PrimeField> s;
  s.add(ItemKind::reduced, QuadricPoint<PrimeField>{{2, 1}, {3, 1}});
  s.add(ItemKind::fat, QuadricPoint<PrimeField>{{4, 2}, {6, 2}});
  try {
    condition_rows(F, s, {2, 2});
    FAIL();
  } catch (const Error& e) {
    EXPECT_STREQ(e.what(), "colliding supports");
  }
  EXPECT_THROW(condition_rows(F, PointScheme<PrimeField>{}, {-1, 0}), Error);
}

TEST(ConditionRows, DegreeMatchesItemCounts) {
  PointScheme<PrimeField> s;
  s.add(ItemKind::reduced, make_point(F, 1U, 2U));
  s.add(ItemKind::fat, make_point(F, 3U, 4U));
  s.add(ItemKind::fat, make_point(F, 5U, 6U));
  s.add(ItemKind::ruling_tangent, make_point(F, 7U, 8U), Ruling::second);
  EXPECT_EQ(s.degree(), 1 + 3 * 2 + 2);
  EXPECT_EQ(condition_rows(F, s, {4, 4}).rows(), 9U);
}

TEST(ConditionRowsProperty, RankBoundedByDegreeAndDimension) {
  Rng rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    PointScheme<PrimeField> s;
    const int items = static_cast<int>(uniform_below(rng, 6));
    for (int k = 0; k < items; ++k)
      s.add(static_cast<ItemKind>(uniform_below(rng, 3)), make_point(F, F.random(rng), F.random(rng)),
            uniform_below(rng, 2) ? Ruling::first : Ruling::second);
    const Bidegree d{static_cast<int>(uniform_below(rng, 4)), static_cast<int>(uniform_below(rng, 4))};
    EXPECT_LE(static_cast<int>(rank(F, condition_rows(F, s, d))), std::min(s.degree(), d.dim()));
  }
}

TEST(ConditionRowsProperty, RescalingCoordinatesKeepsTheKernel) {
  Rng rng(4);
  for (int trial = 0; trial < 30; ++trial) {
    PointScheme<PrimeField> s, scaled;
    for (int k = 0; k < 3; ++k) {
      const auto kind = static_cast<ItemKind>(uniform_below(rng, 3));
      const auto r = uniform_below(rng, 2) ? Ruling::first : Ruling::second;
      QuadricPoint<PrimeField> Pt{{F.random(rng), F.random_nonzero(rng)}, {F.random(rng), F.random_nonzero(rng)}};
      if (k == 0) Pt.first = {1, 0};  // one point on the chart at infinity
      s.add(kind, Pt, r);
      const auto l = F.random_nonzero(rng), m = F.random_nonzero(rng);
      scaled.add(kind, {{F.mul(l, Pt.first[0]), F.mul(l, Pt.first[1])}, {F.mul(m, Pt.second[0]), F.mul(m, Pt.second[1])}},
                 r);
    }
    const Bidegree d{3, 3};
    const auto k1 = kernel_basis(F, condition_rows(F, s, d));
    const auto m2 = condition_rows(F, scaled, d);
    EXPECT_EQ(rank(F, m2), rank(F, condition_rows(F, s, d)));
    for (const auto& v : k1) EXPECT_TRUE(is_zero_vector(F, multiply(F, m2, v)));
  }
}

TEST(ConditionRowsProperty, FatPointIsReducedPlusBothTangencies) {
  Rng rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    const auto Pt = make_point(F, F.random(rng), F.random(rng));
    PointScheme<PrimeField> fat, red, tan1, tan2;
    fat.add(ItemKind::fat, Pt);
    red.add(ItemKind::reduced, Pt);
    tan1.add(ItemKind::ruling_tangent, Pt, Ruling::first);
    tan2.add(ItemKind::ruling_tangent, Pt, Ruling::second);
    const Bidegree d{2, 3};
    // Forms through the fat point, through the point only, and random ones.
    BiForm<PrimeField> f;
    if (trial % 3 == 0) f = random_member(F, fat, d, rng);
    else if (trial % 3 == 1) f = random_member(F, red, d, rng);
    else f = random_form(d, rng);
    auto kills = [&](const PointScheme<PrimeField>& s) {
      return is_zero_vector(F, apply(condition_rows(F, s, d), f));
    };
    EXPECT_EQ(kills(fat), kills(red) && kills(tan1) && kills(tan2));
  }
}

TEST(BiForms, HomogeneousEvaluationScalesByBidegree) {
  Rng rng(6);
  const auto f = random_form({3, 2}, rng);
  const QuadricPoint<PrimeField> A{{5, 7}, {11, 13}};
  const auto l = 3U, m = 10U;
  const QuadricPoint<PrimeField> B{{F.mul(l, 5), F.mul(l, 7)}, {F.mul(m, 11), F.mul(m, 13)}};
  EXPECT_EQ(evaluate(F, f, B), F.mul(evaluate(F, f, A), F.mul(F.pow(l, 3), F.pow(m, 2))));
}

TEST(BiForms, ProductVanishesWhereFactorsDo) {
  Rng rng(7);
  const auto g = random_form({1, 2}, rng);
  const auto Pt = make_point(F, 17U, 19U);
  const auto h = multiply(F, g, line_10(F, Pt));
  EXPECT_EQ(h.bidegree.a, 2);
  EXPECT_EQ(h.bidegree.b, 2);
  EXPECT_TRUE(vanishes_at(F, h, Pt));
  EXPECT_TRUE(vanishes_at(F, line_01(F, Pt), Pt));
  const auto Q = make_point(F, 23U, 29U);
  EXPECT_EQ(evaluate(F, h, Q), F.mul(evaluate(F, g, Q), evaluate(F, line_10(F, Pt), Q)));
}

TEST(BiForms, SwappingFactorsTransposesCoefficients) {
  Rng rng(8);
  const auto f = random_form({2, 3}, rng);
  const auto g = swap_factors(F, f);
  const auto Pt = make_point(F, 31U, 37U);
  EXPECT_EQ(evaluate(F, g, swap_factors(Pt)), evaluate(F, f, Pt));
}

TEST(Restriction, ProductOfSecondFactorLinesHasDistinctRoots) {
  // f = prod_j (u - c_j v), restricted to a (1,0)-line.
  auto f = BiForm<PrimeField>::zero(F, {0, 0});
  f.coeffs = {1};
  for (unsigned c : {2U, 9U, 40U, 1000U}) f = multiply(F, f, line_01(F, make_point(F, 0U, c)));
  auto g = BiForm<PrimeField>::zero(F, {1, 0});
  g.coeffs = {3, 1};  // s + 3t, to give the form a first-factor degree
  f = multiply(F, f, g);
  const auto r = restrict_to_ruling(F, f, {make_point(F, 5U, 0U), LineType::type10});
  EXPECT_EQ(r.degree, 4);
  EXPECT_EQ(root_profile(F, r).distinct, 4);
}

TEST(Restriction, LineComponentRestrictsToZero) {
  Rng rng(9);
  const auto Pt = make_point(F, 8U, 3U);
  const auto f = multiply(F, random_form({2, 2}, rng), line_10(F, Pt));
  EXPECT_TRUE(restrict_to_ruling(F, f, {Pt, LineType::type10}).is_zero(F));
  EXPECT_FALSE(restrict_to_ruling(F, f, {Pt, LineType::type01}).is_zero(F));
}

TEST(Restriction, AgreesWithPointwiseEvaluation) {
  Rng rng(10);
  for (int trial = 0; trial < 10; ++trial) {
    const auto f = random_form({4, 4}, rng);
    const auto through = make_point(F, F.random(rng), F.random(rng));
    const auto r10 = restrict_to_ruling(F, f, {through, LineType::type10});
    const auto r01 = restrict_to_ruling(F, f, {through, LineType::type01});
    for (int k = 0; k < 5; ++k) {
      const auto y = F.random(rng), x = F.random(rng);
      EXPECT_EQ(r10.evaluate(F, y, 1), evaluate(F, f, QuadricPoint<PrimeField>{through.first, {y, 1}}));
      EXPECT_EQ(r01.evaluate(F, x, 1), evaluate(F, f, QuadricPoint<PrimeField>{{x, 1}, through.second}));
    }
  }
}
