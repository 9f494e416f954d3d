#include <gtest/gtest.h>

#include "fixtures.hpp"

using namespace ncbv;
using namespace ncbv::testing;

namespace {

constexpr Letter X = 0, XI = 1;

struct PlaneTest : ::testing::Test {
  SpacePtr s = plane();
  Element w(const RawWord& r, Scalar c = 1) { return Element::word(s, r, c); }
  Element ws(const std::vector<RawWord>& r, Scalar c = 1) { return Element::words(s, r, c); }
  Element p(const std::vector<Letter>& l, Scalar c = 1) { return Element::polynomial(s, l, c); }
  Element nu(unsigned k, Scalar c = 1) { return Element::nu(s, k, c); }
};

TEST_F(PlaneTest, CobracketOnShortWords) {
  EXPECT_EQ(nc_cobracket(w({X, XI})), nu(2));
  EXPECT_EQ(nc_cobracket(w({X, X, X, XI})), Scalar(2) * times_nu(w({X, X})) + ws({{X}, {X}}));
  EXPECT_TRUE(nc_cobracket(w({X})).is_zero());
  EXPECT_TRUE(nc_cobracket(nu(3)).is_zero());
}

TEST_F(PlaneTest, BracketOfWords) {
  EXPECT_EQ(nc_bracket(w({X}), w({XI})), nu(1));
  EXPECT_EQ(nc_bracket(w({X, XI}), w({X, X})), w({X, X}, 2));
  EXPECT_TRUE(nc_bracket(nu(1), w({X, XI})).is_zero());
}

TEST_F(PlaneTest, ChevalleyEilenbergDifferential) {
  EXPECT_EQ(ce_delta(ws({{XI}, {X, X, X}})), w({X, X}, 3));
  for (int n = 1; n <= 4; ++n) {
    std::vector<RawWord> raw(2 * n - 1, RawWord{X});
    raw.push_back({XI});
    std::vector<RawWord> expected(2 * n - 2, RawWord{X});
    Element rhs = expected.empty() ? nu(1, 2 * n - 1)
                                   : times_nu(Element::words(s, expected, 2 * n - 1));
    EXPECT_EQ(ce_delta(ws(raw)), rhs) << n;
  }
  EXPECT_TRUE(ce_delta(w({X, X, XI})).is_zero());
}

TEST_F(PlaneTest, QuantumDifferential) {
  EXPECT_EQ(delta_K(ws({{X}, {XI}})), times_gamma(nu(1)));
  EXPECT_EQ(delta_K(w({X, XI})), nu(2));
}

TEST_F(PlaneTest, CommutativeSide) {
  EXPECT_EQ(com_poisson(p({X}), p({XI})), Element::constant(s, Flavor::commutative, 1));
  EXPECT_EQ(com_poisson(p({XI}), p({X})), Element::constant(s, Flavor::commutative, 1));
  EXPECT_EQ(com_poisson(p({X, X}), p({XI})), p({X}, 2));
  EXPECT_TRUE(com_poisson(p({X, XI}), p({})).is_zero());
  EXPECT_TRUE(bv_laplacian(p({X})).is_zero());
  EXPECT_TRUE(bv_laplacian(p({})).is_zero());
  EXPECT_EQ(bv_laplacian(p({X, XI})), Element::constant(s, Flavor::commutative, 1));
  EXPECT_EQ(bv_laplacian(p({X, X, XI})), p({X}, 2));
  EXPECT_TRUE(p({XI, XI}).is_zero());
}

TEST_F(PlaneTest, MixedFlavorsRejected) {
  EXPECT_THROW(com_poisson(p({X}), w({X})), std::invalid_argument);
  EXPECT_THROW(nc_bracket(w({X}), p({X})), std::invalid_argument);
  EXPECT_THROW(bv_laplacian(w({X})), std::invalid_argument);
}

TEST(InternalDifferential, PlaneValues) {
  auto s = plane_with_differential();
  for (int i = 1; i <= 5; ++i) {
    RawWord raw(i - 1, X);
    raw.push_back(XI);
    EXPECT_EQ(internal_differential(Element::word(s, raw)), Element::word(s, RawWord(i, X), -1)) << i;
  }
  EXPECT_EQ(internal_differential(Element::words(s, {{XI}, {X, X, X}})),
            Element::words(s, {{X}, {X, X, X}}, -1));
  EXPECT_THROW(internal_differential(Element::word(plane(), {X})), std::logic_error);
}

TEST(InternalDifferential, SquaresToZero) {
  auto s = plane_with_differential();
  std::mt19937_64 rng(11);
  for (int t = 0; t < 50; ++t) {
    auto e = random_cyclic(rng, s, t % 2, {4, 3, 4, 1, 1});
    EXPECT_TRUE(internal_differential(internal_differential(e)).is_zero());
    auto f = random_polynomial(rng, s, t % 2, 4, 5);
    EXPECT_TRUE(internal_differential(internal_differential(f)).is_zero());
  }
}

TEST(OperatorContext, AcceptsValidSpaces) {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 20; ++t) EXPECT_NO_THROW(OperatorContext(random_space(rng)));
}

// Property suites over random spaces.

TEST(Properties, OddJacobiCyclic) {
  std::mt19937_64 rng(101);
  for (int t = 0; t < 60; ++t) {
    auto s = random_space(rng);
    int pa = t % 2, pb = (t / 2) % 2, pc = (t / 4) % 2;
    ElementShape shape{2, 2, 3, 1, 0};
    auto a = random_cyclic(rng, s, pa, shape), b = random_cyclic(rng, s, pb, shape),
         c = random_cyclic(rng, s, pc, shape);
    Element lhs = nc_bracket(a, nc_bracket(b, c)) + sign(pa) * nc_bracket(nc_bracket(a, b), c) -
                  sign((pa + 1) * (pb + 1)) * nc_bracket(b, nc_bracket(a, c));
    EXPECT_TRUE(lhs.is_zero()) << to_string(lhs);
    // The twisted bracket (-1)^{|a|}{a,b} satisfies the shifted Jacobi identity.
    auto tw = [](const Element& u, const Element& v) { return sign(u.parity()) * nc_bracket(u, v); };
    Element shifted = tw(a, tw(b, c)) - tw(tw(a, b), c) - sign((pa + 1) * (pb + 1)) * tw(b, tw(a, c));
    EXPECT_TRUE(shifted.is_zero()) << to_string(shifted);
    Element sym = nc_bracket(a, b) - sign(pa * pb) * nc_bracket(b, a);
    EXPECT_TRUE(sym.is_zero()) << to_string(sym);
  }
}

TEST(Properties, OddJacobiCommutative) {
  std::mt19937_64 rng(102);
  for (int t = 0; t < 60; ++t) {
    auto s = random_space(rng);
    int pa = t % 2, pb = (t / 2) % 2, pc = (t / 4) % 2;
    auto a = random_polynomial(rng, s, pa), b = random_polynomial(rng, s, pb),
         c = random_polynomial(rng, s, pc);
    Element lhs = com_poisson(a, com_poisson(b, c)) + sign(pa) * com_poisson(com_poisson(a, b), c) -
                  sign((pa + 1) * (pb + 1)) * com_poisson(b, com_poisson(a, c));
    EXPECT_TRUE(lhs.is_zero()) << to_string(lhs);
  }
}

TEST(Properties, DifferentialsSquareToZero) {
  std::mt19937_64 rng(103);
  for (int t = 0; t < 40; ++t) {
    auto s = random_space(rng);
    auto e = random_cyclic(rng, s, t % 2, {3, 3, 4, 1, 1});
    EXPECT_TRUE(nc_cobracket(nc_cobracket(e)).is_zero());
    EXPECT_TRUE(ce_delta(ce_delta(e)).is_zero());
    EXPECT_TRUE(delta_K(delta_K(e)).is_zero());
    auto f = random_polynomial(rng, s, t % 2, 3, 5);
    EXPECT_TRUE(bv_laplacian(bv_laplacian(f)).is_zero());
  }
}

TEST(Properties, BVIdentity) {
  std::mt19937_64 rng(104);
  for (int t = 0; t < 60; ++t) {
    auto s = random_space(rng);
    int pf = t % 2;
    auto f = random_polynomial(rng, s, pf), g = random_polynomial(rng, s, (t / 2) % 2);
    Element r = bv_laplacian(f * g) - bv_laplacian(f) * g - sign(pf) * (f * bv_laplacian(g)) -
                com_poisson(f, g);
    EXPECT_TRUE(r.is_zero()) << to_string(r);
  }
}

TEST(Properties, CobracketDerivesBracket) {
  std::mt19937_64 rng(105);
  for (int t = 0; t < 60; ++t) {
    auto s = random_space(rng);
    int pu = t % 2;
    ElementShape one_word{2, 1, 4, 0, 0};
    auto u = random_cyclic(rng, s, pu, one_word), v = random_cyclic(rng, s, (t / 2) % 2, one_word);
    Element r = nc_cobracket(nc_bracket(u, v)) + nc_bracket(nc_cobracket(u), v) +
                sign(pu) * nc_bracket(u, nc_cobracket(v));
    EXPECT_TRUE(r.is_zero()) << to_string(r);
  }
}

TEST(Properties, TotalDifferentialSquaresToZero) {
  auto s = plane_with_differential();
  std::mt19937_64 rng(106);
  auto total = [](const Element& e) {
    return internal_differential(e) + ce_delta(e) + nc_cobracket(e);
  };
  for (int t = 0; t < 40; ++t) {
    auto e = random_cyclic(rng, s, t % 2, {3, 3, 4, 1, 0});
    EXPECT_TRUE(total(total(e)).is_zero()) << to_string(e);
  }
}

TEST(Properties, InternalDifferentialAnticommutesWithDelta) {
  // An even word after an odd one: d* must pick up the sign of moving the
  // changed word back to the front.
  auto s = plane_with_differential();
  Element e = Element::words(s, {{XI}, {X, X, XI, XI}, {X, XI, XI, XI}}, 3);
  ASSERT_FALSE(e.is_zero());
  EXPECT_TRUE((internal_differential(ce_delta(e)) + ce_delta(internal_differential(e))).is_zero());
  EXPECT_TRUE((internal_differential(nc_cobracket(e)) + nc_cobracket(internal_differential(e))).is_zero());
  std::mt19937_64 rng(108);
  for (int t = 0; t < 100; ++t) {
    auto r = random_cyclic(rng, s, t % 2, {3, 3, 4, 1, 0});
    EXPECT_TRUE((internal_differential(ce_delta(r)) + ce_delta(internal_differential(r))).is_zero())
        << to_string(r);
  }
}

TEST(Properties, DeltaOnTriplesIsJacobi) {
  std::mt19937_64 rng(107);
  for (int t = 0; t < 40; ++t) {
    auto s = random_space(rng);
    ElementShape one_word{1, 1, 3, 0, 0};
    auto a = random_cyclic(rng, s, t % 2, one_word), b = random_cyclic(rng, s, (t / 2) % 2, one_word),
         c = random_cyclic(rng, s, (t / 4) % 2, one_word);
    EXPECT_TRUE(ce_delta(ce_delta(a * b * c)).is_zero());
  }
}

TEST(MaurerCartan, NegativeControl) {
  auto s = plane_with_differential();
  Element m = Element::word(s, {X, X}, Scalar(1, 2));
  EXPECT_TRUE(mc_defect(m, internal_differential).is_zero());
  Element bad = m + Element::word(s, {X, X, XI, XI});
  EXPECT_FALSE(mc_defect(bad, internal_differential).is_zero());
}

}  // namespace
