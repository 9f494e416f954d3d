#pragma once

#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ncbv/element.hpp"

namespace ncbv {

inline Scalar small_rational(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-4, 4), den(1, 3);
  int n = 0;
  while (n == 0) n = num(rng);
  Scalar q(n, den(rng));
  q.canonicalize();
  return q;
}

/// Random odd symplectic space: letters of degree d are paired with letters
/// of degree -d-1 through a random invertible block.
inline SpacePtr random_space(std::mt19937_64& rng, int max_blocks = 2, int max_block = 2) {
  std::uniform_int_distribution<int> blocks(1, max_blocks), size(1, max_block), deg(-2, 1);
  std::vector<std::string> names;
  std::vector<int> degrees;
  std::vector<std::pair<std::vector<Letter>, std::vector<Letter>>> pairs;
  const int nb = blocks(rng);
  for (int b = 0; b < nb; ++b) {
    const int k = size(rng), d = deg(rng);
    std::vector<Letter> left, right;
    for (int i = 0; i < k; ++i) {
      left.push_back(static_cast<Letter>(names.size()));
      names.push_back("a" + std::to_string(names.size()));
      degrees.push_back(d);
    }
    for (int i = 0; i < k; ++i) {
      right.push_back(static_cast<Letter>(names.size()));
      names.push_back("b" + std::to_string(names.size()));
      degrees.push_back(-d - 1);
    }
    pairs.emplace_back(left, right);
  }
  const std::size_t n = names.size();
  ScalarMatrix g(n, std::vector<Scalar>(n, Scalar(0)));
  for (const auto& [left, right] : pairs) {
    const std::size_t k = left.size();
    ScalarMatrix m;
    do {
      m.assign(k, std::vector<Scalar>(k, Scalar(0)));
      for (auto& row : m)
        for (auto& v : row) v = std::bernoulli_distribution(0.7)(rng) ? small_rational(rng) : Scalar(0);
      try {
        invert(m);
        break;
      } catch (const std::domain_error&) {
      }
    } while (true);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) {
        g[left[i]][right[j]] = m[i][j];
        g[right[j]][left[i]] = -m[i][j];
      }
  }
  return std::make_shared<GradedSymplecticSpace>(std::move(names), std::move(degrees), std::move(g));
}

struct ElementShape {
  int terms = 3;
  int max_words = 2;
  int max_length = 3;
  int max_nu = 1;
  int max_gamma = 0;
};

/// Random homogeneous element of S(NCHam) with the given parity.
inline Element random_cyclic(std::mt19937_64& rng, const SpacePtr& space, int parity,
                             ElementShape shape = {}) {
  std::uniform_int_distribution<int> words(1, shape.max_words), len(1, shape.max_length),
      nu(0, shape.max_nu), gamma(0, shape.max_gamma);
  std::uniform_int_distribution<Letter> letter(0, static_cast<Letter>(space->size() - 1));
  Element e(space, Flavor::cyclic);
  for (int attempt = 0; attempt < 40 && static_cast<int>(e.size()) < shape.terms; ++attempt) {
    std::vector<RawWord> raw(words(rng));
    int p = 0;
    for (auto& w : raw) {
      w.resize(len(rng));
      for (auto& l : w) {
        l = letter(rng);
        p ^= space->letter_parity(l);
      }
    }
    if (p != parity) continue;
    e.add_raw(gamma(rng), nu(rng), raw, small_rational(rng));
  }
  return e;
}

/// Random homogeneous polynomial in Ŝ(V*) with the given parity.
inline Element random_polynomial(std::mt19937_64& rng, const SpacePtr& space, int parity,
                                 int terms = 3, int max_degree = 4) {
  std::uniform_int_distribution<int> len(0, max_degree);
  std::uniform_int_distribution<Letter> letter(0, static_cast<Letter>(space->size() - 1));
  Element e(space, Flavor::commutative);
  for (int attempt = 0; attempt < 40 && static_cast<int>(e.size()) < terms; ++attempt) {
    std::vector<Letter> ls(len(rng));
    int p = 0;
    for (auto& l : ls) {
      l = letter(rng);
      p ^= space->letter_parity(l);
    }
    if (p != parity) continue;
    e.add_product(ls, small_rational(rng));
  }
  return e;
}

}  // namespace ncbv
