#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace kcone;

namespace {

// Bases are expensive enough to share between tests.
GeometricBasis const& cached(std::string const& label, int bound_sq) {
  static std::map<std::pair<std::string, int>, GeometricBasis> cache;
  auto key = std::make_pair(label, bound_sq);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, full_basis(build_root_datum(label), Rational(bound_sq))).first;
  return it->second;
}

std::vector<std::size_t> certified_counts(GeometricBasis const& b) {
  std::vector<std::size_t> out;
  for (auto const& s : b.strata) out.push_back(s.certified_count());
  return out;
}

TEST(NormConstant, SumOfRootLengths) {
  auto a2 = norm_constant(build_root_datum("A2"));
  EXPECT_EQ(a2.terms, (std::map<Rational, int>{{Rational(2), 3}}));
  EXPECT_NEAR(a2.approx(), 3 * std::sqrt(2.0), 1e-12);
  auto g2 = norm_constant(build_root_datum("G2"));
  EXPECT_EQ(g2.terms, (std::map<Rational, int>{{Rational(2), 3}, {Rational(6), 3}}));
  // (4 + 3 sqrt 2)^2 = 34 + 24 sqrt 2 = 67.94..
  EXPECT_EQ(a2.window_sq(Rational(16)), Integer(68));
  EXPECT_EQ(a2.window_sq(Rational(0)), Integer(18));
}

TEST(OrbitalBasis, A1Strata) {
  auto const& b = cached("A1", 16);
  EXPECT_EQ(certified_counts(b), (std::vector<std::size_t>{4, 2}));
  RootDatum rd = build_root_datum("A1");
  for (int n = 0; n < 4; ++n) {
    auto const& v = b.strata[0].vectors[n];
    EXPECT_TRUE(v.certified);
    EXPECT_EQ(v.kclass.coeffs, (std::map<Weight, Integer>{{{n}, 1}, {{n + 2}, -1}}));
    EXPECT_EQ(v.rank, Integer(n + 1));
  }
  EXPECT_EQ(b.strata[1].vectors[0].kclass.coeffs, (std::map<Weight, Integer>{{{0}, 1}}));
  EXPECT_EQ(b.strata[1].vectors[1].kclass.coeffs, (std::map<Weight, Integer>{{{1}, 1}}));
}

TEST(OrbitalBasis, RegularStrataMatchComponentGroups) {
  EXPECT_EQ(cached("A2", 18).strata[2].certified_count(), 3u);
  EXPECT_EQ(cached("A2", 32).strata[2].certified_count(), 3u);
  EXPECT_EQ(cached("B2", 16).strata[3].certified_count(), 2u);
  EXPECT_EQ(cached("G2", 12).strata[4].certified_count(), 1u);
  EXPECT_EQ(cached("G2", 12).strata[3].certified_count(), 3u);  // G2(a1): S3 has 3 irreducibles
}

TEST(OrbitalBasis, TotalCertifiedCountsEqualTheNumberOfBallWeights) {
  for (auto [label, q] : {std::pair{"A1", 16}, {"A2", 18}, {"B2", 16}}) {
    auto const& b = cached(label, q);
    std::size_t total = 0;
    for (auto n : certified_counts(b)) total += n;
    EXPECT_EQ(total, dominant_weights_in_ball(build_root_datum(label), Rational(q)).size()) << label;
  }
}

// Every gamma class in the ball is an integer combination of certified
// vectors, and the certified vectors are independent.
class SpanningAndIndependence : public ::testing::TestWithParam<std::pair<const char*, int>> {};

TEST_P(SpanningAndIndependence, Holds) {
  auto [label, q] = GetParam();
  RootDatum rd = build_root_datum(label);
  auto const& b = cached(label, q);
  auto cert = b.certified();
  std::vector<KClass> classes;
  for (auto const* v : cert) classes.push_back(v->kclass);
  auto index = CoordinateIndex::spanning(rd, classes);
  IntMatrix m(cert.size(), index.size());
  for (std::size_t r = 0; r < cert.size(); ++r)
    for (auto const& [c, x] : index.flatten(cert[r]->kclass)) m(r, c) = x;
  EXPECT_EQ(m.rank(), cert.size());

  for (auto const& gamma : dominant_weights_in_ball(rd, Rational(q))) {
    KClass g = gamma_class(rd, gamma);
    auto coords = express_in_geometric_basis(rd, g, b);
    KClass rebuilt;
    for (auto const& [key, n] : coords) rebuilt += n * b.strata[key.first].vectors[key.second].kclass;
    EXPECT_TRUE(rebuilt.same_class(g)) << label << ' ' << gamma;
  }
}

INSTANTIATE_TEST_SUITE_P(Types, SpanningAndIndependence,
                         ::testing::Values(std::pair{"A1", 16}, std::pair{"A2", 18}, std::pair{"B2", 16}));

TEST(OrbitalBasis, RankBookkeeping) {
  for (auto [label, q] : {std::pair{"A2", 18}, {"B2", 16}, {"G2", 12}}) {
    RootDatum rd = build_root_datum(label);
    auto const& b = cached(label, q);
    for (auto const& s : b.strata) {
      auto gd = grading_data(rd, b.orbits[s.orbit_id]);
      for (auto const& v : s.vectors) {
        Integer rank = 0;
        KClass rebuilt;
        for (auto const& [phi, c] : v.combination) {
          rank += c * weyl_dim(rd, std::span<const int>(gd.levi_simple), phi);
          rebuilt += c * pushforward(rd, gd, phi);
        }
        EXPECT_EQ(rank, v.rank);
        EXPECT_TRUE(rebuilt.same_class(v.kclass));
      }
    }
  }
}

TEST(OrbitalBasis, CertifiedMeansSupportInBall) {
  RootDatum rd = build_root_datum("B2");
  auto const& b = cached("B2", 16);
  for (auto const& s : b.strata)
    for (auto const& v : s.vectors) {
      bool inside = true;
      for (auto const& [w, c] : v.kclass.coeffs) inside = inside && weight_norm_sq(rd, w) <= Rational(16);
      EXPECT_EQ(inside, v.certified);
    }
}

TEST(OrbitalBasis, StableUnderLargerBounds) {
  auto const& small = cached("A2", 18);
  auto const& large = cached("A2", 32);
  for (std::size_t y = 0; y < small.strata.size(); ++y) {
    std::vector<KClass const*> a, c;
    for (auto const& v : small.strata[y].vectors)
      if (v.certified) a.push_back(&v.kclass);
    for (auto const& v : large.strata[y].vectors)
      if (v.certified) c.push_back(&v.kclass);
    ASSERT_LE(a.size(), c.size());
    for (std::size_t i = 0; i < a.size(); ++i) EXPECT_TRUE(a[i]->same_class(*c[i])) << "orbit " << y << " vector " << i;
  }
}

TEST(OrbitalBasis, SkyscrapersDieModuloTheZeroOrbit) {
  // In A1 the regular orbit covers only the zero orbit; skyscrapers lie in
  // the span of the zero-orbit stratum.
  RootDatum rd = build_root_datum("A1");
  auto const& b = cached("A1", 16);
  std::vector<KClass> zero_stratum;
  for (auto const& v : b.strata[0].vectors) zero_stratum.push_back(v.kclass);
  std::vector<KClass> all = zero_stratum;
  for (int n = 0; n <= 6; ++n) all.push_back(skyscraper_class(rd, Weight{n}));
  auto index = CoordinateIndex::spanning(rd, all);
  LatticeEchelon ech;
  for (auto const& k : zero_stratum) ech.insert(index.flatten(k));
  for (int n = 0; n <= 6; ++n) {
    auto red = ech.reduce(index.flatten(skyscraper_class(rd, Weight{n})));
    EXPECT_TRUE(red.residual.empty());
    EXPECT_EQ(red.scale, Integer(1));
  }
}

TEST(OrbitalBasis, ParallelMatchesSequential) {
  RootDatum rd = build_root_datum("B2");
  ExecutionOptions par;
  par.threads = 4;
  auto a = full_basis(rd, Rational(16));
  auto b = full_basis(rd, Rational(16), par);
  EXPECT_EQ(basis_json(a).dump(), basis_json(b).dump());
}

TEST(OrbitalBasis, BoundZeroIsMinimal) {
  auto b = full_basis(build_root_datum("A1"), Rational(0));
  EXPECT_EQ(certified_counts(b), (std::vector<std::size_t>{0, 1}));
  EXPECT_THROW(full_basis(build_root_datum("A1"), Rational(-1)), InconsistentInput);
}

TEST(OrbitalBasis, MismatchedBoundaryBoundsAreRejected) {
  RootDatum rd = build_root_datum("A1");
  auto b = full_basis(rd, Rational(8));
  std::vector<OrbitStratum> below{b.strata[0]};
  EXPECT_THROW(orbital_basis(rd, b.orbits[1], below, Rational(16)), InconsistentInput);
}

TEST(OrbitalBasis, ResourceErrorNamesTheOrbit) {
  ExecutionOptions opts;
  opts.limits.max_subsets = 8;
  try {
    full_basis(build_root_datum("A3"), Rational(4), opts);
    FAIL() << "expected ResourceError";
  } catch (ResourceError const& e) {
    EXPECT_NE(std::string(e.what()).find("orbit 0"), std::string::npos) << e.what();
  }
}

TEST(OrbitalBasis, SpanningWeightCap) {
  ExecutionOptions opts;
  opts.limits.max_spanning_weights = 10;
  EXPECT_THROW(full_basis(build_root_datum("A2"), Rational(4), opts), ResourceError);
}

}  // namespace
