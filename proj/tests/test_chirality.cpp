#include <gtest/gtest.h>

#include <map>

#include "chirality/chirality.hpp"
#include "chirality/errors.hpp"
#include "support.hpp"

using namespace chiral;
using namespace testing_support;

namespace {

Mat3 random_lp_point(const PairSet& p, Rng& rng) {
  LPBasis lp = lp_basis(p);
  for (;;) {
    Mat3 x;
    for (const Mat3& b : lp.basis) x += b * S(rng.rational(6, 3));
    if (matrix_rank(x) == 2) return x;
  }
}

Mat3 random_rank_two(Rng& rng) {
  for (;;) {
    Mat3 x = outer(P(rng.vec(5)).h, P(rng.vec(5)).h) + outer(P(rng.vec(5)).h, P(rng.vec(5)).h);
    if (matrix_rank(x) == 2) return x;
  }
}

using Row = std::array<long, 3>;

// Reference corner table for the non-chiral five-pair example, keyed by
// 1-based (i, j).
const std::map<std::pair<int, int>, Row>& nonchiral_table() {
  static const std::map<std::pair<int, int>, Row> table{
      {{1, 2}, {-16, -84, 20}}, {{1, 3}, {-32, -56, 32}}, {{1, 4}, {64, 40, -96}},  {{1, 5}, {112, -40, 32}},
      {{2, 1}, {-16, -4, 12}},  {{2, 3}, {-32, 8, 32}},   {{2, 4}, {64, -24, -32}}, {{2, 5}, {-16, 24, -32}},
      {{3, 1}, {16, -8, -12}},  {{3, 2}, {16, 24, -20}},  {{3, 4}, {-64, 36, 20}},  {{3, 5}, {-32, -12, 20}},
      {{4, 1}, {16, -8, -4}},   {{4, 2}, {16, 8, -28}},   {{4, 3}, {32, -4, -28}},  {{4, 5}, {-16, -4, 28}},
      {{5, 1}, {-16, 16, -16}}, {{5, 2}, {48, -16, 16}},  {{5, 3}, {32, -16, 16}},  {{5, 4}, {-32, 48, -16}},
  };
  return table;
}

}  // namespace

TEST(Chirality, GVanishesAtCorners) {
  PairSet p = chiral_five();
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 0; j < 5; ++j) {
      if (i == j) continue;
      Corner c = corner(p, i, j);
      EXPECT_TRUE(g(c.x, p, i).is_zero());
      EXPECT_TRUE(g(c.x, p, j).is_zero());
    }
}

TEST(Chirality, GOfFactoredMatrixIsQuadProduct) {
  Rng rng(21);
  PairSet p = random_pairs(rng, 4);
  for (int trial = 0; trial < 100; ++trial) {
    oracle::M3 gm = rng.mat(4);
    oracle::V3 t = rng.vec(4);
    if (oracle::det3(gm) == 0 || oracle::is_zero(t)) continue;
    Mat3 gx;
    for (std::size_t r = 0; r < 3; ++r)
      for (std::size_t c = 0; c < 3; ++c) gx(r, c) = S(gm[r][c]);
    FundamentalCandidate x(skew(P(t).h) * gx);
    // the library uses its own multiple λt of t, and g is linear in t
    oracle::V3 tl = V(x.left_kernel());
    oracle::Q lambda = oracle::dot(tl, t) / oracle::dot(t, t);
    for (std::size_t i = 0; i < p.size(); ++i) {
      oracle::Q expected = oracle::dot(oracle::cross(t, V(p.v(i))), oracle::cross(t, oracle::mul(gm, V(p.u(i)))));
      EXPECT_EQ(Q(g(x, p, i)), lambda * expected);
    }
  }
}

TEST(Chirality, ZeroLocusIsTheWalls) {
  PairSet p = running();
  Rng rng(22);
  for (std::size_t i = 0; i < 5; ++i) {
    WallPencil w = wall_pencil(p, i, WallSide::kU);
    for (int trial = 0; trial < 10; ++trial) {
      Mat3 x = w.at(S(rng.rational(5, 3)), S(rng.rational(5, 3)));
      if (matrix_rank(x) != 2) continue;
      EXPECT_TRUE(g(FundamentalCandidate(x), p, i).is_zero());
    }
  }
  for (int trial = 0; trial < 50; ++trial) {
    FundamentalCandidate x(random_lp_point(p, rng));
    for (std::size_t i = 0; i < 5; ++i) {
      bool on_wall = (x.matrix() * p.u(i).h).is_zero() || left_mul(p.v(i).h, x.matrix()).is_zero();
      EXPECT_EQ(g(x, p, i).is_zero(), on_wall);
    }
  }
}

TEST(Chirality, ProductSignsMatchOracleAndAreScaleInvariant) {
  Rng rng(23);
  PairSet p = chiral_five();
  for (int trial = 0; trial < 100; ++trial) {
    Mat3 m = random_lp_point(p, rng);
    oracle::Q mu = rng.rational(7, 3);
    if (mu == 0) continue;
    FundamentalCandidate x(m), scaled(m * S(mu));
    ChiralSignTable a = sign_table(x, p), b = sign_table(scaled, p);
    for (std::size_t i = 0; i < 5; ++i)
      for (std::size_t j = 0; j < 5; ++j) {
        int expected = oracle::product_sign(M(m), V(p.u(i)), V(p.v(i)), V(p.u(j)), V(p.v(j)));
        EXPECT_EQ(a.products[i][j], expected);
        EXPECT_EQ(b.products[i][j], expected);
      }
    EXPECT_EQ(a.strict, b.strict);
    EXPECT_EQ(a.feasible, b.feasible);
  }
}

TEST(Chirality, SignTableAtCornerOfChiralFive) {
  PairSet p = chiral_five();
  Corner c = corner(p, 1, 2);
  ChiralSignTable t = sign_table(c.x, p);
  EXPECT_EQ(t.inactive, (std::vector<std::size_t>{0, 3, 4}));
  for (std::size_t a : t.inactive)
    for (std::size_t b : t.inactive) EXPECT_GT(t.products[a][b], 0);
  EXPECT_FALSE(t.strict);
}

TEST(Chirality, DOfNonchiralFiveMatchesReferenceRowAndOracle) {
  PairSet p = nonchiral_five();
  // D₃₄, D₃₅, D₄₅ at (u₁, v₂)
  EXPECT_EQ(D(p, 2, 3, p.u(0), p.v(1)), Scalar(-16));
  EXPECT_EQ(D(p, 2, 4, p.u(0), p.v(1)), Scalar(-84));
  EXPECT_EQ(D(p, 3, 4, p.u(0), p.v(1)), Scalar(20));
  EXPECT_TRUE(D(p, 0, 1, HPoint2::affine(0, 2), p.v(3)).is_zero());
}

TEST(Chirality, FullCornerTableOfNonchiralFive) {
  PairSet p = nonchiral_five();
  auto reports = all_corner_tests(p);
  ASSERT_EQ(reports.size(), 20u);
  for (const CornerReport& r : reports) {
    const Row& reference = nonchiral_table().at({static_cast<int>(r.i + 1), static_cast<int>(r.j + 1)});
    for (std::size_t k = 0; k < 3; ++k) EXPECT_EQ(r.values[k], Scalar(reference[k])) << r.i + 1 << "," << r.j + 1;
    // independent evaluation
    const auto [l, m, n] = r.rest;
    std::array<std::pair<std::size_t, std::size_t>, 3> idx{{{l, m}, {l, n}, {m, n}}};
    for (std::size_t k = 0; k < 3; ++k)
      EXPECT_EQ(Q(r.values[k]), oracle::D(V(p.u(idx[k].first)), V(p.u(idx[k].second)), V(p.u(r.i)),
                                         V(p.v(idx[k].first)), V(p.v(idx[k].second)), V(p.v(r.j))));
    EXPECT_FALSE(r.pass);
  }
}

TEST(Chirality, CornerTestsOfChiralFive) {
  PairSet p = chiral_five();
  CornerReport c23 = corner_sign_test(p, 1, 2);
  EXPECT_EQ(c23.values, (std::array<Scalar, 3>{Scalar(-32), Scalar(-64), Scalar(-64)}));
  EXPECT_TRUE(c23.pass);
  CornerReport c32 = corner_sign_test(p, 2, 1);
  EXPECT_EQ(c32.values, (std::array<Scalar, 3>{Scalar(16), Scalar(-48), Scalar(16)}));
  EXPECT_FALSE(c32.pass);
}

TEST(Chirality, CornerTestRejectsVanishingD) {
  // u₁, u₂ and u₃ collinear, so det[u₁ u₂ u₃] vanishes at corner (3,5)
  PairSet p = affine_pairs({{0, 0, 1, 2}, {1, 1, 3, 1}, {2, 2, 0, 5}, {3, 0, 4, 4}, {0, 3, 2, 7}});
  EXPECT_THROW(corner_sign_test(p, 2, 4), DegenerateInput);
  EXPECT_NO_THROW(corner_sign_test(p, 3, 4));
}

TEST(Chirotope, MatchesRequestedSigns) {
  HPoint2 a(0, 0, 1), b(1, 0, 1), c(0, 1, 1);
  HPoint2 e = chirotope_match(a, b, c, {1, 1, 1});
  EXPECT_GT(det3(a, b, e).sign(), 0);
  EXPECT_GT(det3(a, c, e).sign(), 0);
  EXPECT_GT(det3(b, c, e).sign(), 0);
  // hand evaluation for (−1, 1, 1): the three determinants are 1, 1, 1
  HPoint2 probe(-1, 1, 1);
  EXPECT_EQ(det3(a, b, probe), Scalar(1));
  EXPECT_EQ(det3(a, c, probe), Scalar(1));
  EXPECT_EQ(det3(b, c, probe), Scalar(1));
}

TEST(Chirotope, AllEightSignPatterns) {
  Rng rng(24);
  for (int trial = 0; trial < 20; ++trial) {
    oracle::V3 a = rng.vec(6), b = rng.vec(6), c = rng.vec(6);
    if (oracle::det3(a, b, c) == 0) continue;
    for (int mask = 0; mask < 8; ++mask) {
      std::array<int, 3> s{mask & 1 ? -1 : 1, mask & 2 ? -1 : 1, mask & 4 ? -1 : 1};
      oracle::V3 e = V(chirotope_match(P(a), P(b), P(c), s));
      EXPECT_EQ(oracle::sgn(oracle::det3(a, b, e)), s[0]);
      EXPECT_EQ(oracle::sgn(oracle::det3(a, c, e)), s[1]);
      EXPECT_EQ(oracle::sgn(oracle::det3(b, c, e)), s[2]);
    }
  }
  EXPECT_THROW(chirotope_match(HPoint2(0, 0, 1), HPoint2(1, 1, 1), HPoint2(2, 2, 1), {1, 1, 1}), InvalidInput);
}

TEST(Chirality, DeterminantSignsPredictProducts) {
  Rng rng(25);
  PairSet p = chiral_five();
  int compared = 0;
  for (int trial = 0; trial < 200; ++trial) {
    FundamentalCandidate x(random_lp_point(p, rng));
    for (std::size_t i = 0; i < 5; ++i)
      for (std::size_t j = i + 1; j < 5; ++j) {
        try {
          SignAgreement s = sign_agreement(x, p, i, j);
          EXPECT_TRUE(s.agree());
          ++compared;
        } catch (const InconclusiveD&) {
        }
      }
  }
  EXPECT_GT(compared, 1000);
}

TEST(Chirality, SignAgreementAtCornerInactivePairs) {
  PairSet p = chiral_five();
  Corner c = corner(p, 1, 2);
  for (std::size_t a : {0, 3, 4})
    for (std::size_t b : {0, 3, 4})
      if (a < b) EXPECT_TRUE(sign_agreement(c.x, p, a, b).agree());
}

TEST(Chirality, CoplanarBaselineMakesDInconclusive) {
  // X = [t]×, both epipoles (0,0,1); u₁, u₂ and the epipole are collinear.
  FundamentalCandidate x(skew(Vec3{0, 0, 1}));
  PairSet p = affine_pairs({{1, 0, 1, 0}, {2, 0, 2, 0}, {0, 1, 0, 1}});
  EXPECT_THROW(sign_agreement(x, p, 0, 1), InconclusiveD);
}

TEST(Chirality, ProductsIgnoreScalingAndKernelSign) {
  Rng rng(26);
  for (int trial = 0; trial < 200; ++trial) {
    Mat3 m = random_rank_two(rng);
    oracle::Q mu = rng.rational(5, 2);
    if (mu == 0) continue;
    PointPair a{P(rng.vec(5)), P(rng.vec(5))}, b{P(rng.vec(5)), P(rng.vec(5))};
    int lib = (g(FundamentalCandidate(m), a) * g(FundamentalCandidate(m), b)).sign();
    int lib_scaled = (g(FundamentalCandidate(m * S(mu)), a) * g(FundamentalCandidate(m * S(mu)), b)).sign();
    oracle::M3 om = M(m);
    oracle::V3 t = oracle::left_kernel(om), flipped{-t[0], -t[1], -t[2]};
    int with_flip = oracle::sgn(oracle::g(om, flipped, V(a.u), V(a.v)) * oracle::g(om, flipped, V(b.u), V(b.v)));
    EXPECT_EQ(lib, with_flip);
    EXPECT_EQ(lib_scaled, with_flip);
  }
}
