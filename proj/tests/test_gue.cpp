#include <gtest/gtest.h>

#include <cmath>

#include "fixtures.hpp"

using namespace ncbv;
using namespace ncbv::testing;

namespace {

NuPolynomial poly(std::initializer_list<std::pair<unsigned, long>> terms) { return nu_poly(terms); }

TEST(MultiIndexTest, ParseAndOrder) {
  EXPECT_EQ(MultiIndex::parse("3,1,2").exponents(), (std::vector<unsigned>{1, 2, 3}));
  EXPECT_EQ(MultiIndex::parse("").size(), 0u);
  EXPECT_EQ(MultiIndex({4, 0, 0}).zeros(), 2u);
  EXPECT_EQ(MultiIndex({4, 0, 3}).total(), 7u);
  for (const char* bad : {"1,", ",1", "a", "1,,2", "-1", "1 2"})
    EXPECT_THROW(MultiIndex::parse(bad), std::invalid_argument) << bad;
  EXPECT_EQ(partitions(4).size(), 5u);
  EXPECT_EQ(partitions(12).size(), 77u);
}

TEST(NuPolynomialTest, Arithmetic) {
  auto p = poly({{3, 2}, {1, 1}});
  EXPECT_EQ(p.evaluate(2), 18);
  EXPECT_EQ(p.evaluate(0), 0);
  EXPECT_EQ(poly({{0, 5}}).evaluate(7), 5);
  EXPECT_EQ(to_string(p), "2ν^3 + ν");
  EXPECT_EQ(to_string(poly({{2, -3}, {0, 1}})), "-3ν^2 + 1");
  EXPECT_EQ(to_string(NuPolynomial()), "0");
  EXPECT_EQ(p * p, poly({{6, 4}, {4, 4}, {2, 1}}));
  EXPECT_TRUE((p - p).is_zero());
  EXPECT_EQ(p.degree(), 3);
  EXPECT_EQ(NuPolynomial().degree(), -1);
}

TEST(NuPolynomialTest, JsonAndCsvRoundTrip) {
  NuPolynomial p = poly({{4, 40}, {6, 4}, {2, 61}});
  p.add(0, Scalar(-1, 3));
  auto j = to_json(p);
  EXPECT_EQ(j.dump(), R"({"coeffs":{"0":"-1/3","2":"61/1","4":"40/1","6":"4/1"}})");
  EXPECT_EQ(nu_polynomial_from_json(j), p);
  const std::string csv = to_csv(p);
  EXPECT_EQ(csv, "exponent,numerator,denominator\n0,-1,3\n2,61,1\n4,40,1\n6,4,1\n");
  EXPECT_EQ(nu_polynomial_from_csv(csv), p);
  EXPECT_THROW(nu_polynomial_from_csv("0,1,1\n"), std::invalid_argument);
  EXPECT_THROW(nu_polynomial_from_csv("exponent,numerator,denominator\n1,2\n"), std::invalid_argument);
  EXPECT_THROW(nu_polynomial_from_json(nlohmann::ordered_json::parse(R"({"coeffs":{"x":"1"}})")),
               std::invalid_argument);
}

TEST(Reduction, GoldenTable) {
  GueReducer r;
  EXPECT_EQ(r.reduce({2}), poly({{2, 1}}));
  EXPECT_EQ(r.reduce({4}), poly({{3, 2}, {1, 1}}));
  EXPECT_EQ(r.reduce({6}), poly({{4, 5}, {2, 10}}));
  EXPECT_EQ(r.reduce({8}), poly({{5, 14}, {3, 70}, {1, 21}}));
  EXPECT_EQ(r.reduce({10}), poly({{6, 42}, {4, 420}, {2, 483}}));
  EXPECT_EQ(r.reduce({1, 1}), poly({{1, 1}}));
  EXPECT_EQ(r.reduce({1, 3}), poly({{2, 3}}));
  EXPECT_EQ(r.reduce({2, 2}), poly({{4, 1}, {2, 2}}));
  EXPECT_EQ(r.reduce({1, 5}), poly({{3, 10}, {1, 5}}));
  EXPECT_EQ(r.reduce({2, 4}), poly({{5, 2}, {3, 9}, {1, 4}}));
  EXPECT_EQ(r.reduce({3, 3}), poly({{3, 12}, {1, 3}}));
  EXPECT_EQ(r.reduce({1, 7}), poly({{4, 35}, {2, 70}}));
  EXPECT_EQ(r.reduce({2, 6}), poly({{6, 5}, {4, 40}, {2, 60}}));
  EXPECT_EQ(r.reduce({3, 5}), poly({{4, 45}, {2, 60}}));
  EXPECT_EQ(r.reduce({4, 4}), poly({{6, 4}, {4, 40}, {2, 61}}));
  EXPECT_TRUE(check_golden_table(default_reducer()).passed);
}

TEST(Reduction, ZerosEmptyAndParity) {
  EXPECT_EQ(reduce_to_polynomial({}), NuPolynomial::constant(1));
  EXPECT_EQ(reduce_to_polynomial({0}), poly({{1, 1}}));
  EXPECT_EQ(reduce_to_polynomial({0, 0, 2}), poly({{4, 1}}));
  GueReducer r;
  for (const auto& idx : indices_up_to(11))
    if (idx.total() % 2) {
      EXPECT_TRUE(r.reduce(idx).is_zero()) << to_string(idx);
    }
}

TEST(Reduction, DegreeBound) {
  GueReducer r;
  for (const auto& idx : indices_up_to(12)) {
    const auto p = r.reduce(idx);
    EXPECT_LE(p.degree(), static_cast<int>(idx.total() / 2 + idx.size())) << to_string(idx);
  }
}

TEST(Reduction, StepIsCohomologous) {
  // (x^i)·rest = -d*((x^{i-1}ξ)·rest) and (d* + δ + ∇) of that element is zero
  // in cohomology, so the step element differs from the cocycle by a
  // coboundary.
  GueReducer r;
  const auto& s = r.space();
  for (const MultiIndex& idx : {MultiIndex{4}, MultiIndex{1, 3}, MultiIndex{2, 2, 3}}) {
    for (std::size_t pos = 0; pos < idx.size(); ++pos) {
      std::vector<RawWord> raw;
      RawWord head(idx.exponents()[pos] - 1, 0);
      head.push_back(1);
      raw.push_back(head);
      for (std::size_t j = 0; j < idx.size(); ++j)
        if (j != pos) raw.emplace_back(idx.exponents()[j], 0);
      const Element y = Element::words(s, raw);
      EXPECT_EQ(r.cocycle(idx), -internal_differential(y));
      const Element total = internal_differential(y) + ce_delta(y) + nc_cobracket(y);
      EXPECT_EQ(r.step(idx, pos), total + r.cocycle(idx));
    }
  }
  EXPECT_THROW(r.step({0, 2}, 0), std::invalid_argument);
}

TEST(Reduction, Confluence) {
  auto c = check_confluence(12, 99);
  EXPECT_TRUE(c.passed) << c.counterexample;
  EXPECT_EQ(c.cases, 272u);
}

TEST(Wick, SmallValues) {
  EXPECT_EQ(wick_oracle({2}), poly({{2, 1}}));
  EXPECT_EQ(wick_oracle({1, 1}), poly({{1, 1}}));
  EXPECT_EQ(wick_oracle({4}), poly({{3, 2}, {1, 1}}));
  EXPECT_TRUE(wick_oracle({3}).is_zero());
  EXPECT_EQ(wick_oracle({}), NuPolynomial::constant(1));
  EXPECT_EQ(wick_oracle({0, 1, 1}), poly({{2, 1}}));
  EXPECT_THROW(wick_oracle({18}), std::length_error);
  EXPECT_THROW(wick_oracle({16}, 14), std::length_error);
  EXPECT_EQ(wick_oracle({16}).leading_coefficient(), Scalar(catalan(8)));
}

TEST(Wick, CountsAllPairings) {
  for (unsigned n = 1; n <= 7; ++n) {
    auto p = wick_oracle(MultiIndex({2 * n}));
    Scalar total = 0;
    for (const auto& [e, c] : p.coeffs()) total += c;
    EXPECT_EQ(total, Scalar(double_factorial_odd(n)));
  }
}

TEST(Wick, ThreadCountIsInvisible) {
  for (const MultiIndex& idx : {MultiIndex{10}, MultiIndex{3, 3, 4}})
    EXPECT_EQ(wick_oracle(idx, 16, 1), wick_oracle(idx, 16, 4));
}

TEST(Wick, OracleEquivalenceExhaustive) {
  auto c = check_oracle_equivalence(default_reducer(), 12);
  EXPECT_TRUE(c.passed) << c.counterexample;
}

TEST(Wick, OracleEquivalenceSampledHighDegree) {
  std::mt19937_64 rng(31);
  GueReducer r;
  for (unsigned total : {14u, 16u}) {
    auto all = partitions(total);
    for (int t = 0; t < 3; ++t) {
      const auto& idx = all[rng() % all.size()];
      EXPECT_EQ(r.reduce(idx), wick_oracle(idx)) << to_string(idx);
    }
  }
}

TEST(HarerZagier, ClosedForm) {
  EXPECT_EQ(harer_zagier_closed(1, 1), 1);
  for (unsigned k = 0; k <= 8; ++k) EXPECT_EQ(harer_zagier_closed(k, 1), Scalar(double_factorial_odd(k)));
  for (unsigned n = 1; n <= 5; ++n) EXPECT_EQ(harer_zagier_closed(2, n), 2 * n * n * n + n);
  EXPECT_EQ(harer_zagier_closed(0, 4), 4);
  EXPECT_THROW(harer_zagier_closed(1, 0), std::invalid_argument);
}

TEST(HarerZagier, RecurrenceExamples) {
  const auto p0 = poly({{1, 1}}), p2 = poly({{2, 1}}), p4 = poly({{3, 2}, {1, 1}}), p6 = poly({{4, 5}, {2, 10}});
  EXPECT_TRUE(harer_zagier_residual(2, p4, p2, p0).is_zero());
  EXPECT_TRUE(harer_zagier_residual(3, p6, p4, p2).is_zero());
  EXPECT_FALSE(harer_zagier_residual(3, p6 + p2, p4, p2).is_zero());
  auto c = check_harer_zagier(default_reducer());
  EXPECT_TRUE(c.passed) << c.counterexample;
}

TEST(HarerZagier, Catalan) {
  const unsigned long expected[] = {1, 1, 2, 5, 14, 42, 132, 429, 1430, 4862};
  for (unsigned k = 0; k < 10; ++k) EXPECT_EQ(catalan(k), expected[k]);
}

TEST(MultiTraceSum, Relation) {
  GueReducer r;
  // k = 2 with the hand-computed values.
  EXPECT_EQ(r.reduce({1, 3}) + r.reduce({2, 2}) + r.reduce({3, 1}),
            r.reduce({6}) - Scalar(2) * r.reduce({4}).shifted(1));
  auto c = check_multitrace_sum(default_reducer());
  EXPECT_TRUE(c.passed) << c.counterexample;
  EXPECT_EQ(r.reduce(MultiIndex(std::vector<unsigned>(16, 1))), poly({{8, 2027025}}));
}

TEST(NegativeControl, SignFlippedReducerFailsGoldenTable) {
  auto good = default_reducer();
  Reducer flipped = [good](const MultiIndex& idx) {
    const NuPolynomial exact = good(idx);
    NuPolynomial p;
    for (const auto& [e, c] : exact.coeffs()) p.add(e, e == 1 ? Scalar(-c) : c);
    return p;
  };
  auto c = check_golden_table(flipped);
  EXPECT_FALSE(c.passed);
  EXPECT_NE(c.counterexample.find("p_{4}: coefficient of ν^1 is -1, expected 1"), std::string::npos)
      << c.counterexample;
  EXPECT_FALSE(check_oracle_equivalence(flipped, 6).passed);
  EXPECT_FALSE(check_harer_zagier(flipped, 4, 2, 2).passed);
}

TEST(MonteCarlo, SamplesAreHermitianAndReproducible) {
  auto g = GaussianStream::seeded(5);
  auto h = GaussianStream::seeded(5);
  for (int t = 0; t < 5; ++t) {
    auto x = sample_gue(3, g), y = sample_gue(3, h);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) {
        EXPECT_EQ(x(i, j), std::conj(x(j, i)));
        EXPECT_EQ(x(i, j), y(i, j));
      }
  }
  EXPECT_NE(GaussianStream::seeded(5).next(), GaussianStream::seeded(6).next());
}

TEST(MonteCarlo, SecondMoment) {
  auto r = monte_carlo_moment({2}, 2, 100000, 3);
  EXPECT_LE(std::abs(r.estimate - 4.0), 5 * r.standard_error);
  EXPECT_GT(r.standard_error, 0);
  auto odd = monte_carlo_moment({3}, 3, 50000, 4);
  EXPECT_LE(std::abs(odd.estimate), 5 * odd.standard_error);
  EXPECT_THROW(monte_carlo_moment({2}, 2, 1, 3), std::invalid_argument);
}

TEST(MonteCarlo, ThreadCountIsInvisible) {
  auto a = monte_carlo_moment({1, 3}, 2, 40000, 9, 1);
  auto b = monte_carlo_moment({1, 3}, 2, 40000, 9, 3);
  EXPECT_EQ(a.estimate, b.estimate);
  EXPECT_EQ(a.standard_error, b.standard_error);
}

TEST(MonteCarlo, Panel) {
  auto c = check_monte_carlo(default_reducer(), 200000, 20240);
  EXPECT_TRUE(c.passed) << c.counterexample;
}

}  // namespace
