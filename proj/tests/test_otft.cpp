#include <gtest/gtest.h>

#include "fixtures.hpp"

using namespace ncbv;
using namespace ncbv::testing;

namespace {

Vector random_vector(std::mt19937_64& rng, std::size_t n) {
  Vector v(n);
  std::uniform_int_distribution<int> d(-3, 3);
  for (auto& x : v) x = d(rng);
  return v;
}

// Entry (r,c) of an element of Mat_N in the E_rc basis.
DenseMatrix<Scalar> as_matrix(const Vector& v, std::uint32_t n) {
  DenseMatrix<Scalar> m(n, n);
  for (std::uint32_t r = 0; r < n; ++r)
    for (std::uint32_t c = 0; c < n; ++c) m(r, c) = v[r * n + c];
  return m;
}

TEST(Otft, MatrixWindowAndHandle) {
  for (std::uint32_t n : {1u, 2u, 3u}) {
    auto f = frobenius_matrix(n);
    auto rng = std::mt19937_64(n);
    auto a = random_vector(rng, n * n);
    EXPECT_EQ(otft_beta(f, a), FrobeniusAlgebra::scale(n, a));
    EXPECT_EQ(otft_gamma(f, a), a);
  }
}

TEST(Otft, MatrixTensorIsProductOfTraces) {
  auto rng = std::mt19937_64(21);
  for (std::uint32_t n : {2u, 3u}) {
    auto f = frobenius_matrix(n);
    for (int trial = 0; trial < 12; ++trial) {
      const std::size_t m = 1 + trial % 3;
      std::vector<std::vector<Vector>> bs(m);
      Scalar expected = 1;
      for (auto& b : bs) {
        b.resize(1 + rng() % 3);
        auto prod = DenseMatrix<Scalar>::identity(n);
        for (auto& c : b) {
          c = random_vector(rng, n * n);
          prod = prod * as_matrix(c, n);
        }
        expected *= prod.trace();
      }
      const unsigned g = trial % 2, fb = (trial / 2) % 3;
      for (unsigned k = 0; k < fb; ++k) expected *= n;
      EXPECT_EQ(otft_mu(f, g, fb, bs), expected);
    }
  }
}

TEST(Otft, PlacementIndependence) {
  auto rng = std::mt19937_64(22);
  for (int trial = 0; trial < 30; ++trial) {
    auto f = random_frobenius(rng);
    if (f.dim() > 6) continue;
    std::vector<std::vector<Vector>> bs(1 + trial % 2);
    for (auto& b : bs) {
      b.resize(1 + rng() % 2);
      for (auto& c : b) c = random_vector(rng, f.dim());
    }
    const unsigned g = trial % 2, fb = (trial / 2) % 2;
    const Scalar first = otft_mu(f, g, fb, bs);
    for (std::size_t p = 0; p < bs.size(); ++p)
      for (std::size_t q = 0; q < bs[p].size(); ++q) EXPECT_EQ(otft_mu(f, g, fb, bs, p, q), first);
  }
}

TEST(Otft, LineIsProductOfInputs) {
  auto f = frobenius_diagonal({Scalar(1)});
  EXPECT_EQ(otft_mu(f, 2, 3, {{Vector{2}, Vector{3}}, {Vector{5}}}), 30);
}

TEST(Otft, Errors) {
  auto f = frobenius_matrix(2);
  EXPECT_THROW(otft_mu(f, 0, 0, {}), std::invalid_argument);
  EXPECT_THROW(otft_mu(f, 0, 0, {{}}), std::invalid_argument);
  EXPECT_THROW(otft_mu(f, 0, 0, {{f.unit()}}, 0, 1), std::out_of_range);
  FrobeniusAlgebra::Table bad(1, std::vector<Vector>(1, Vector{Scalar(2)}));
  EXPECT_THROW(FrobeniusAlgebra(bad, {{Scalar(1)}}, Vector{Scalar(1)}), std::invalid_argument);
}

TEST(Otft, BasisChangeIsInvisible) {
  auto f = frobenius_cyclic_group(3, 2);
  ScalarMatrix p{{1, 1, 0}, {0, 1, 2}, {0, 0, 1}};
  auto h = f.change_basis(p);
  // The same abstract inputs expressed in both bases.
  auto rng = std::mt19937_64(23);
  auto u = random_vector(rng, 3), v = random_vector(rng, 3);
  const ScalarMatrix q = invert(p);
  auto to_new = [&](const Vector& x) {
    Vector out(3, Scalar(0));
    for (std::size_t b = 0; b < 3; ++b)
      for (std::size_t a = 0; a < 3; ++a) out[a] += x[b] * q[b][a];
    return out;
  };
  EXPECT_EQ(otft_mu(f, 1, 1, {{u, v}}), otft_mu(h, 1, 1, {{to_new(u), to_new(v)}}));
}

TEST(Lqt, Evaluate) {
  auto s = plane();
  auto x = DenseMatrix<Scalar>::diagonal({1, 2});
  EXPECT_EQ(lqt_evaluate(lqt_image(Element::word(s, {0, 0}), 0), x, 2), 5);
  EXPECT_EQ(lqt_evaluate(lqt_image(Element::words(s, {{0}, {0}}), 0), x, 2), 9);
  auto rng = std::mt19937_64(24);
  DenseMatrix<double> y(3, 3);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) y(i, j) = std::uniform_real_distribution<double>(-1, 1)(rng);
  EXPECT_DOUBLE_EQ(lqt_evaluate(lqt_image(Element::nu(s), 0), y, 3), 3.0);
  EXPECT_THROW(lqt_evaluate(lqt_image(Element::nu(s), 0), y, 2), std::invalid_argument);
  EXPECT_THROW(lqt_image(Element::word(s, {0, 1}), 0), std::invalid_argument);
  EXPECT_THROW(lqt_image(Element::words(s, {{0}}, 1, 1), 0), std::invalid_argument);
}

TEST(Lqt, MatchesMoritaTrace) {
  // Tr(X^p) is the σ∘ℳ image of (x^p) evaluated at the entries of X.
  auto s = plane();
  auto x = DenseMatrix<Scalar>(2, 2);
  x(0, 0) = 1;
  x(0, 1) = Scalar(2, 3);
  x(1, 0) = -1;
  x(1, 1) = 3;
  for (std::size_t p = 1; p <= 4; ++p) {
    auto word = Element::words(s, {RawWord(p, 0), {0}}, 2, 0, 1);
    auto image = sigma(morita_M(word, 2));
    Scalar direct = 0;
    for (const auto& [m, c] : image.terms()) {
      Scalar t = c;
      for (const auto& w : m.words) {
        auto ml = split_matrix_letter(w.letters[0], 2);
        t *= x(ml.row, ml.col);
      }
      direct += t;
    }
    EXPECT_EQ(lqt_evaluate(lqt_image(word, 0), x, 2), direct);
  }
}

TEST(Lqt, JsonRoundTrip) {
  MultiTraceFunctional f;
  f.add(2, {3, 1}, Scalar(-5, 2));
  f.add(0, {}, 7);
  auto j = to_json(f);
  EXPECT_EQ(j["terms"][1]["traces"], nlohmann::ordered_json::parse("[1,3]"));
  EXPECT_EQ(multitrace_from_json(j), f);
}

}  // namespace
