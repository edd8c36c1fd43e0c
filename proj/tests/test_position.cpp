#include <gtest/gtest.h>

#include <set>

#include "oracle.hpp"
#include "quadgon/instances.hpp"
#include "quadgon/position.hpp"

using namespace quadgon;

namespace {

const PrimeField F;

using Pair = std::pair<oracle::i64, oracle::i64>;

constexpr std::array<std::pair<int, int>, 5> kTypes{{{1, 0}, {0, 1}, {1, 1}, {2, 1}, {1, 2}}};

/// Points (x, y) with y = -A(x)/B(x) on f = A(x) + B(x) y, computed with plain
/// modular arithmetic.  Coefficients are A = a0 + a1 x + a2 x^2, B = b0 + b1 x + b2 x^2.
std::vector<Pair> points_on_21(const std::array<oracle::i64, 6>& c, int count, oracle::i64 p, Rng& rng) {
  std::vector<Pair> out;
  std::set<oracle::i64> used;
  while (static_cast<int>(out.size()) < count) {
    const oracle::i64 x = static_cast<oracle::i64>(uniform_below(rng, static_cast<std::uint64_t>(p)));
    if (used.count(x)) continue;
    const oracle::i64 A = oracle::mod(c[0] + c[1] * x + c[2] * x % p * x, p);
    const oracle::i64 B = oracle::mod(c[3] + c[4] * x + c[5] * x % p * x, p);
    if (B == 0) continue;
    used.insert(x);
    out.push_back({x, oracle::mod(-A * oracle::power(B, p - 2, p), p)});
  }
  return out;
}

template <class Field>
std::vector<QuadricPoint<Field>> to_points(const Field& K, const std::vector<Pair>& pts) {
  std::vector<QuadricPoint<Field>> out;
  for (auto [x, y] : pts) out.push_back(make_point(K, K.from_int(x), K.from_int(y)));
  return out;
}

bool proportional(const std::vector<std::uint32_t>& x, const std::vector<oracle::i64>& y, oracle::i64 p) {
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j)
      if (oracle::mod(static_cast<oracle::i64>(x[i]) * y[j] - static_cast<oracle::i64>(x[j]) * y[i], p) != 0)
        return false;
  return true;
}

}  // namespace

TEST(MaxOnCurveType, AnyThreePointsLieOnABidegreeOneOneCurve) {
  const auto pts = to_points(F, {{1, 2}, {3, 4}, {5, 6}});
  EXPECT_EQ(max_on_curve_type(F, pts, 1, 1).count, 3);
}

TEST(MaxOnCurveType, FiveRandomPointsLieOnATwoOneCurve) {
  Rng rng(41);
  const auto pts = points_avoiding<PrimeField>(F, 5, {}, rng);
  EXPECT_EQ(max_on_curve_type(F, pts, 2, 1).count, 5);
  EXPECT_EQ(max_on_curve_type(F, pts, 1, 2).count, 5);
}

TEST(MaxOnCurveType, FindsAConstructedTwoOneCurve) {
  const oracle::i64 p = 65537;
  Rng rng(42);
  const std::array<oracle::i64, 6> c{17, 5, 301, 9, 44, 2};
  auto on = points_on_21(c, 6, p, rng);
  std::vector<Pair> all = on;
  all.push_back({123, 456});
  all.push_back({789, 1011});
  // The two extra points are off the curve.
  std::vector<oracle::i64> coeffs(6);  // i-major: index i*2 + j
  coeffs[0] = c[0], coeffs[2] = c[1], coeffs[4] = c[2];
  coeffs[1] = c[3], coeffs[3] = c[4], coeffs[5] = c[5];
  ASSERT_NE(oracle::jet_affine(coeffs, 2, 1, 123, 456, p).value, 0);
  ASSERT_NE(oracle::jet_affine(coeffs, 2, 1, 789, 1011, p).value, 0);

  const auto r = max_on_curve_type(F, to_points(F, all), 2, 1);
  EXPECT_EQ(r.count, 6);
  EXPECT_EQ(r.on_curve, (std::vector<std::size_t>{0, 1, 2, 3, 4, 5}));
  EXPECT_TRUE(proportional(r.witness.coeffs, coeffs, p));
}

TEST(MaxOnCurveType, RulingCountsGroupEqualCoordinates) {
  const auto pts = to_points(F, {{1, 1}, {1, 2}, {1, 3}, {2, 3}, {4, 3}, {5, 3}});
  const auto first = max_on_curve_type(F, pts, 1, 0);
  const auto second = max_on_curve_type(F, pts, 0, 1);
  EXPECT_EQ(first.count, 3);
  EXPECT_EQ(second.count, 4);
  for (auto i : second.on_curve) EXPECT_TRUE(vanishes_at(F, second.witness, pts[i]));
}

TEST(MaxOnCurveType, RejectsUnsupportedTypes) {
  EXPECT_THROW(max_on_curve_type(F, std::vector<QuadricPoint<PrimeField>>{}, 2, 2), Error);
  EXPECT_THROW(max_on_curve_type(F, std::vector<QuadricPoint<PrimeField>>{}, 0, 0), Error);
}

TEST(MaxOnCurveType, RefusesPastTheSearchCap) {
  Rng rng(43);
  const auto pts = points_avoiding<PrimeField>(F, 65, {}, rng);
  try {
    max_on_curve_type(F, pts, 1, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_STREQ(e.what(), "search cap exceeded");
  }
  EXPECT_NO_THROW(max_on_curve_type(F, pts, 1, 1, 80));
}

TEST(MaxOnCurveType, EmptySetHasZeroMaximum) {
  for (auto [c, d] : kTypes) EXPECT_EQ(max_on_curve_type(F, std::vector<QuadricPoint<PrimeField>>{}, c, d).count, 0);
}

TEST(MaxOnCurveTypeProperty, MatchesBruteForceOverSubsets) {
  // A small field makes accidental coincidences common; planted structure
  // makes large maxima common.
  const oracle::i64 p = 101;
  const PrimeField K(101);
  Rng rng(44);
  for (int trial = 0; trial < 120; ++trial) {
    std::set<Pair> seen;
    std::vector<Pair> pts;
    auto push = [&](Pair q) {
      if (seen.insert(q).second) pts.push_back(q);
    };
    switch (trial % 4) {
      case 0: {
        const auto x = static_cast<oracle::i64>(uniform_below(rng, 101));
        for (int k = 0; k < 4; ++k) push({x, static_cast<oracle::i64>(uniform_below(rng, 101))});
        break;
      }
      case 1: {
        std::array<oracle::i64, 6> c{};
        for (auto& e : c) e = static_cast<oracle::i64>(uniform_below(rng, 101));
        c[5] = 0;
        c[2] = 0;  // (1,1) curve: A, B linear in x
        if (c[3] == 0 && c[4] == 0) c[3] = 1;
        for (auto q : points_on_21(c, 5, p, rng)) push(q);
        break;
      }
      case 2: {
        std::array<oracle::i64, 6> c{};
        for (auto& e : c) e = static_cast<oracle::i64>(uniform_below(rng, 101));
        if (c[3] == 0 && c[4] == 0 && c[5] == 0) c[5] = 1;
        for (auto q : points_on_21(c, 7, p, rng)) push(q);
        break;
      }
      default:
        break;
    }
    const int target = 6 + static_cast<int>(uniform_below(rng, 6));
    while (static_cast<int>(pts.size()) < target)
      push({static_cast<oracle::i64>(uniform_below(rng, 101)), static_cast<oracle::i64>(uniform_below(rng, 101))});

    const auto qp = to_points(K, pts);
    for (auto [c, d] : kTypes) {
      const auto r = max_on_curve_type(K, qp, c, d);
      EXPECT_EQ(r.count, oracle::brute_max_on_type(pts, c, d, p)) << "trial " << trial << " type " << c << d;
    }
  }
}

TEST(MaxOnCurveTypeProperty, WitnessVanishesExactlyOnItsClaimedSubset) {
  const PrimeField K(101);
  Rng rng(45);
  for (int trial = 0; trial < 60; ++trial) {
    const auto pts = points_avoiding<PrimeField>(K, 4 + static_cast<int>(uniform_below(rng, 12)), {}, rng);
    for (auto [c, d] : kTypes) {
      const auto r = max_on_curve_type(K, pts, c, d);
      ASSERT_FALSE(r.witness.is_zero(K));
      EXPECT_EQ(static_cast<int>(r.on_curve.size()), r.count);
      std::vector<QuadricPoint<PrimeField>> sub;
      for (auto i : r.on_curve) sub.push_back(pts[i]);
      const auto rows = condition_rows(K, reduced_scheme(sub), {c, d});
      EXPECT_TRUE(is_zero_vector(K, multiply(K, rows, r.witness.coeffs)));
      std::size_t incident = 0;
      for (const auto& P : pts) incident += vanishes_at(K, r.witness, P);
      EXPECT_EQ(incident, r.on_curve.size());
    }
  }
}

TEST(MaxOnCurveTypeProperty, AddingPointsNeverLowersAMaximum) {
  const PrimeField K(101);
  Rng rng(46);
  for (int trial = 0; trial < 30; ++trial) {
    auto pts = points_avoiding<PrimeField>(K, 5, {}, rng);
    std::array<int, 5> last{};
    for (int step = 0; step < 8; ++step) {
      for (std::size_t t = 0; t < kTypes.size(); ++t) {
        const int now = max_on_curve_type(K, pts, kTypes[t].first, kTypes[t].second).count;
        EXPECT_GE(now, last[t]);
        last[t] = now;
      }
      // Any new point with fresh coordinates; distinct from the current set.
      for (;;) {
        const auto q = make_point(K, K.random(rng), K.random(rng));
        bool fresh = true;
        for (const auto& P : pts) fresh = fresh && !same_point(K, P, q);
        if (fresh) {
          pts.push_back(q);
          break;
        }
      }
    }
  }
}

TEST(MaxOnCurveTypeProperty, RandomPointsFillAGeneratingSubset) {
  Rng rng(47);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 1 + static_cast<int>(uniform_below(rng, 14));
    const auto pts = points_avoiding<PrimeField>(F, n, {}, rng);
    for (auto [c, d] : kTypes) {
      const int k = (c + 1) * (d + 1);
      const int m = max_on_curve_type(F, pts, c, d).count;
      EXPECT_GE(m, std::min(n, k - 1));
      EXPECT_LE(m, n);
      EXPECT_GE(m, 1);
    }
  }
}

TEST(PositionReport, BundlesAllFiveTypes) {
  Rng rng(48);
  const auto pts = points_avoiding<PrimeField>(F, 9, {}, rng);
  const auto r = position_report(F, pts);
  EXPECT_EQ(r.max_on_line(), 1);
  EXPECT_EQ(r.on_11.count, 3);
  EXPECT_EQ(r.on_21.count, 5);
  EXPECT_EQ(r.on_12.count, 5);
}

TEST(E4Hypotheses, EmptySetPasses) {
  EXPECT_TRUE(check_e4_hypotheses(F, std::vector<QuadricPoint<PrimeField>>{}, 9, 9).pass);
}

TEST(E4Hypotheses, TwoPointsOnARulingLineFail) {
  const auto pts = to_points(F, {{7, 1}, {7, 2}});
  const auto r = check_e4_hypotheses(F, pts, 9, 9);
  EXPECT_FALSE(r.pass);
  EXPECT_EQ(r.violated, std::vector<std::string>{"line"});
}

TEST(E4Hypotheses, RandomAdmissibleSampleAtTheSizeBound) {
  Rng rng(49);
  const auto inst = random_e4_instance(F, 9, 9, 30, rng);
  ASSERT_EQ(inst.E.size(), 30U);
  const auto r = check_e4_hypotheses(F, inst.E, 9, 9);
  EXPECT_TRUE(r.pass);
  // Independently re-derived clause values.
  const auto pr = position_report(F, inst.E);
  EXPECT_LE(pr.max_on_line(), 1);
  EXPECT_LE(pr.on_11.count, 19);
  EXPECT_LE(pr.on_21.count, 28);
  EXPECT_LE(pr.on_12.count, 23);
}

TEST(E4Hypotheses, OversizeSetFails) {
  Rng rng(50);
  const auto pts = points_avoiding<PrimeField>(F, 31, {}, rng);
  const auto r = check_e4_hypotheses(F, pts, 9, 9);
  EXPECT_FALSE(r.pass);
  EXPECT_EQ(r.violated.front(), "size");
}

TEST(E4Hypotheses, RangeIsChecked) {
  const std::vector<QuadricPoint<PrimeField>> none;
  EXPECT_THROW(check_e4_hypotheses(F, none, 8, 9), Error);
  EXPECT_THROW(check_e4_hypotheses(F, none, 10, 9), Error);
}

TEST(G4Hypotheses, EmptySetsPass) {
  const std::vector<QuadricPoint<PrimeField>> none;
  EXPECT_TRUE(check_g4_hypotheses(F, none, none, 3, 2).pass);
}

TEST(G4Hypotheses, OversizeBFails) {
  Rng rng(51);
  const auto B = points_avoiding<PrimeField>(F, 31, {}, rng);
  const auto r = check_g4_hypotheses(F, {}, B, 3, 2);
  EXPECT_FALSE(r.pass);
  EXPECT_EQ(r.violated.front(), "size of B");
}

TEST(G4Hypotheses, RandomAdmissibleSample) {
  Rng rng(52);
  const auto inst = random_g4_instance(F, 3, 2, 9, 30, rng);
  EXPECT_EQ(inst.S.size(), 9U);
  EXPECT_EQ(inst.B.size(), 30U);
  EXPECT_TRUE(check_g4_hypotheses(F, inst.S, inst.B, 3, 2).pass);
}

TEST(G4Hypotheses, ARulingLineThroughSAndBFails) {
  const auto S = to_points(F, {{1, 1}});
  const auto B = to_points(F, {{2, 1}});
  const auto r = check_g4_hypotheses(F, S, B, 3, 2);
  EXPECT_EQ(r.violated, std::vector<std::string>{"line"});
}

TEST(G4Hypotheses, RangeIsChecked) {
  const std::vector<QuadricPoint<PrimeField>> none;
  EXPECT_THROW(check_g4_hypotheses(F, none, none, 2, 2), Error);
  EXPECT_THROW(check_g4_hypotheses(F, none, none, 3, 1), Error);
}
