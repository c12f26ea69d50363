#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace kcone;

namespace {

struct TypeFacts {
  const char* label;
  int rank;
  int positive_roots;
  int dimension;
};

class RootDatumFacts : public ::testing::TestWithParam<TypeFacts> {};

TEST_P(RootDatumFacts, CountsMatchClassification) {
  auto const& f = GetParam();
  RootDatum rd = build_root_datum(f.label);
  EXPECT_EQ(rd.rank, f.rank);
  EXPECT_EQ(static_cast<int>(rd.positive_roots.size()), f.positive_roots);
  EXPECT_EQ(rd.dimension(), f.dimension);
}

TEST_P(RootDatumFacts, FormIsSymmetricAndSimpleRootsPairCorrectly) {
  RootDatum rd = build_root_datum(GetParam().label);
  for (int i = 0; i < rd.rank; ++i)
    for (int j = 0; j < rd.rank; ++j) {
      EXPECT_EQ(rd.form_int[i][j], rd.form_int[j][i]);
      // a_ij = 2 <alpha_j, alpha_i> / <alpha_i, alpha_i>
      Rational num = 2 * inner_product(rd, rd.simple_root(j), rd.simple_root(i));
      EXPECT_EQ(num / weight_norm_sq(rd, rd.simple_root(i)), Rational(rd.cartan[i][j]));
    }
  // short roots have squared length 2
  Rational shortest = weight_norm_sq(rd, rd.simple_root(0));
  for (int i = 0; i < rd.rank; ++i) shortest = std::min(shortest, weight_norm_sq(rd, rd.simple_root(i)));
  EXPECT_EQ(shortest, Rational(2));
}

TEST_P(RootDatumFacts, PositiveRootsMatchWeylOrbitsOfSimpleRoots) {
  RootDatum rd = build_root_datum(GetParam().label);
  if (rd.positive_roots.size() > 60) GTEST_SKIP() << "orbit scan too slow for large types";
  std::set<Weight> all;
  for (int i = 0; i < rd.rank; ++i)
    for (auto const& r : oracle::weyl_orbit(rd, rd.simple_root(i))) all.insert(r);
  EXPECT_EQ(all.size(), 2 * rd.positive_roots.size());
  for (auto const& a : rd.positive_roots) {
    EXPECT_TRUE(all.contains(a));
    EXPECT_TRUE(all.contains(-a));
  }
}

INSTANTIATE_TEST_SUITE_P(Types, RootDatumFacts,
                         ::testing::Values(TypeFacts{"A1", 1, 1, 3}, TypeFacts{"A2", 2, 3, 8},
                                           TypeFacts{"A3", 3, 6, 15}, TypeFacts{"B2", 2, 4, 10},
                                           TypeFacts{"B3", 3, 9, 21}, TypeFacts{"C3", 3, 9, 21},
                                           TypeFacts{"D4", 4, 12, 28}, TypeFacts{"G2", 2, 6, 14},
                                           TypeFacts{"F4", 4, 24, 52}, TypeFacts{"E6", 6, 36, 78},
                                           TypeFacts{"E7", 7, 63, 133}, TypeFacts{"E8", 8, 120, 248},
                                           TypeFacts{"A1xA1", 2, 2, 6}, TypeFacts{"A2xG2", 4, 9, 22}),
                         [](auto const& info) { return std::string(info.param.label); });

TEST(RootData, ConventionsForDoublyLacedTypes) {
  RootDatum b2 = build_root_datum("B2");
  EXPECT_EQ(b2.cartan[1][0], -2);  // alpha_2 short
  EXPECT_EQ(weight_norm_sq(b2, b2.simple_root(1)), Rational(2));
  EXPECT_EQ(weight_norm_sq(b2, b2.simple_root(0)), Rational(4));
  RootDatum c3 = build_root_datum("C3");
  EXPECT_EQ(c3.cartan[1][2], -2);  // alpha_3 long
  EXPECT_EQ(weight_norm_sq(c3, c3.simple_root(2)), Rational(4));
  RootDatum g2 = build_root_datum("G2");
  EXPECT_EQ(g2.cartan[0][1], -3);
  EXPECT_EQ(weight_norm_sq(g2, g2.simple_root(1)), Rational(6));
}

TEST(RootData, NormsInFundamentalCoordinates) {
  RootDatum a1 = build_root_datum("A1");
  for (int n = 0; n < 6; ++n) EXPECT_EQ(weight_norm_sq(a1, Weight{n}), Rational(n * n, 2));
  RootDatum a2 = build_root_datum("A2");
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) EXPECT_EQ(weight_norm_sq(a2, Weight{a, b}), Rational(2 * (a * a + a * b + b * b), 3));
}

TEST(RootData, DominantConjugateIsTheDominantOrbitElement) {
  for (auto label : {"A2", "B2", "G2", "A3"}) {
    RootDatum rd = build_root_datum(label);
    for (int a = -3; a <= 3; ++a)
      for (int b = -3; b <= 3; ++b) {
        Weight w(static_cast<std::size_t>(rd.rank));
        w[0] = a;
        w[1] = b;
        Weight d = dominant_conjugate(rd, w);
        EXPECT_TRUE(is_dominant(d));
        EXPECT_EQ(d, oracle::fold(rd, w)) << label << ' ' << w;
        EXPECT_EQ(weight_norm_sq(rd, d), weight_norm_sq(rd, w));
      }
  }
}

TEST(RootData, ReflectionsAreInvolutionsAndIsometries) {
  RootDatum rd = build_root_datum("G2");
  Weight w{3, -5};
  for (int i = 0; i < 2; ++i) {
    EXPECT_EQ(simple_reflection(rd, simple_reflection(rd, w, i), i), w);
    EXPECT_EQ(weight_norm_sq(rd, simple_reflection(rd, w, i)), weight_norm_sq(rd, w));
  }
}

TEST(RootData, SubsetRootSum) {
  RootDatum rd = build_root_datum("A2");
  boost::dynamic_bitset<> all(rd.positive_roots.size());
  all.set();
  EXPECT_EQ(subset_root_sum(rd.positive_roots, all, rd.rank), 2 * rd.rho());
  boost::dynamic_bitset<> none(rd.positive_roots.size());
  EXPECT_TRUE(subset_root_sum(rd.positive_roots, none, rd.rank).is_zero());
  boost::dynamic_bitset<> too_long(rd.positive_roots.size() + 2);
  too_long.set(rd.positive_roots.size() + 1);
  EXPECT_THROW(subset_root_sum(rd.positive_roots, too_long, rd.rank), std::out_of_range);
}

TEST(RootData, BallEnumerationMatchesBoxScan) {
  for (auto label : {"A2", "B2", "G2"}) {
    RootDatum rd = build_root_datum(label);
    for (int level : {0, 3, 8, 20}) {
      auto got = dominant_weights_in_ball(rd, Rational(level));
      auto want = oracle::dominant_weights(rd, Rational(level));
      std::sort(want.begin(), want.end(), NormOrder{&rd});
      EXPECT_EQ(got, want) << label << " level " << level;
    }
  }
}

TEST(RootData, LeviDominantBallIncludesNonDominantWeights) {
  RootDatum rd = build_root_datum("A1");
  auto ws = levi_dominant_weights_in_ball(rd, {}, Rational(2));
  // n^2 / 2 <= 2 for n in [-2, 2], ordered by norm then lex
  std::vector<Weight> want{{0}, {-1}, {1}, {-2}, {2}};
  EXPECT_EQ(ws, want);
}

TEST(RootData, RejectsBadLabels) {
  for (auto bad : {"Z9", "A0", "B1", "C1", "D3", "E5", "E9", "F3", "G3", "", "A", "2A", "A1x", "A17"})
    EXPECT_THROW(build_root_datum(bad), ParseError) << bad;
}

TEST(Exact, RationalParsing) {
  EXPECT_EQ(parse_rational("18"), Rational(18));
  EXPECT_EQ(parse_rational("56/3"), Rational(56, 3));
  EXPECT_THROW(parse_rational("1/0"), ParseError);
  EXPECT_THROW(parse_rational("abc"), ParseError);
  EXPECT_THROW(parse_rational(""), ParseError);
  EXPECT_EQ(to_string(Rational(8, 4)), "2");
  EXPECT_EQ(to_string(Rational(-1, 3)), "-1/3");
}

TEST(Exact, ExactDivision) {
  EXPECT_EQ(exact_div(Integer(12), Integer(-4)), Integer(-3));
  EXPECT_THROW(exact_div(Integer(7), Integer(2)), InternalError);
}

}  // namespace
