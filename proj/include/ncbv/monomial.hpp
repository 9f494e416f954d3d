#pragma once

#include <algorithm>
#include <compare>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "ncbv/graded_space.hpp"

namespace ncbv {

/// Canonical rotation representative of a nonempty word of letters.
/// The empty word is never a CyclicWord; it is the formal variable ν.
struct CyclicWord {
  std::vector<Letter> letters;

  std::size_t size() const { return letters.size(); }

  /// Canonical total order on words: shorter first, then lexicographic.
  friend std::strong_ordering operator<=>(const CyclicWord& a, const CyclicWord& b) {
    if (auto c = a.letters.size() <=> b.letters.size(); c != 0) return c;
    return a.letters <=> b.letters;
  }
  friend bool operator==(const CyclicWord&, const CyclicWord&) = default;
};

inline int word_degree(std::span<const Letter> letters, const GradedSymplecticSpace& space) {
  int d = 0;
  for (Letter l : letters) d += space.degree(l);
  return d;
}

inline int word_parity(std::span<const Letter> letters, const GradedSymplecticSpace& space) {
  int p = 0;
  for (Letter l : letters) p ^= space.letter_parity(l);
  return p;
}

/// Result of a canonicalization: the normal form and the Koszul sign that
/// relates it to the raw input, or nothing when the input is zero.
template <typename T>
using Signed = std::optional<std::pair<T, int>>;

/// Rotates to the lexicographically least representative, tracking the sign
/// (-1)^{|prefix||suffix|} of moving a prefix to the back. Returns nothing
/// when a rotation fixes the word with sign -1.
inline Signed<CyclicWord> canonicalize_cyclic(std::span<const Letter> letters,
                                              const GradedSymplecticSpace& space) {
  const std::size_t n = letters.size();
  if (n == 0) throw std::invalid_argument("cannot canonicalize the empty word");
  for (Letter l : letters) space.check_letter(l);

  std::vector<int> prefix(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i) prefix[i + 1] = prefix[i] ^ space.letter_parity(letters[i]);
  const int total = prefix[n];

  auto rotation_less = [&](std::size_t r, std::size_t s) {
    for (std::size_t k = 0; k < n; ++k) {
      Letter a = letters[(r + k) % n], b = letters[(s + k) % n];
      if (a != b) return a < b ? -1 : 1;
    }
    return 0;
  };

  std::size_t best = 0;
  for (std::size_t r = 1; r < n; ++r)
    if (rotation_less(r, best) < 0) best = r;

  auto sign_of = [&](std::size_t r) { return (prefix[r] & (total ^ prefix[r])) ? -1 : 1; };
  const int sign = sign_of(best);
  for (std::size_t r = 0; r < n; ++r)
    if (r != best && rotation_less(r, best) == 0 && sign_of(r) != sign) return std::nullopt;

  CyclicWord w;
  w.letters.reserve(n);
  for (std::size_t k = 0; k < n; ++k) w.letters.push_back(letters[(best + k) % n]);
  return std::make_pair(std::move(w), sign);
}

/// γ^i ν^j times a graded-symmetric product of cyclic words. On the
/// commutative side every word has length one and i = j = 0.
struct SymMonomial {
  unsigned gamma_power = 0;
  unsigned nu_power = 0;
  std::vector<CyclicWord> words;

  friend std::strong_ordering operator<=>(const SymMonomial&, const SymMonomial&) = default;
  friend bool operator==(const SymMonomial&, const SymMonomial&) = default;
};

inline int monomial_degree(const SymMonomial& m, const GradedSymplecticSpace& space) {
  int d = 0;
  for (const auto& w : m.words) d += word_degree(w.letters, space);
  return d;
}

inline int monomial_parity(const SymMonomial& m, const GradedSymplecticSpace& space) {
  return monomial_degree(m, space) & 1;
}

/// Sorts the words, accumulating (-1)^{|u||v|} for every transposition of
/// adjacent words u, v. A repeated odd word makes the product zero.
inline Signed<SymMonomial> canonicalize_monomial(unsigned gamma_power, unsigned nu_power,
                                                 std::vector<CyclicWord> words,
                                                 const GradedSymplecticSpace& space) {
  const std::size_t n = words.size();
  std::vector<int> par(n);
  for (std::size_t i = 0; i < n; ++i) par[i] = word_parity(words[i].letters, space);

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return words[a] < words[b]; });

  // Sign of the permutation restricted to odd words.
  int inversions = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!par[order[i]]) continue;
    for (std::size_t j = i + 1; j < n; ++j)
      if (par[order[j]] && order[j] < order[i]) ++inversions;
  }
  SymMonomial m{gamma_power, nu_power, {}};
  m.words.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (i > 0 && par[order[i]] && words[order[i]] == m.words.back()) return std::nullopt;
    m.words.push_back(std::move(words[order[i]]));
  }
  return std::make_pair(std::move(m), (inversions & 1) ? -1 : 1);
}

}  // namespace ncbv
