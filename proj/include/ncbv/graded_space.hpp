#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ncbv/scalar.hpp"

namespace ncbv {

using Letter = std::uint32_t;
using ScalarMatrix = std::vector<std::vector<Scalar>>;

/// A linear combination of letters, used for letter images of a differential.
using LetterCombination = std::vector<std::pair<Letter, Scalar>>;

inline int parity(int degree) { return degree & 1; }

inline ScalarMatrix identity_matrix(std::size_t n) {
  ScalarMatrix m(n, std::vector<Scalar>(n, Scalar(0)));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

inline ScalarMatrix multiply(const ScalarMatrix& a, const ScalarMatrix& b) {
  const std::size_t n = a.size(), k = b.size(), m = k ? b[0].size() : 0;
  ScalarMatrix out(n, std::vector<Scalar>(m, Scalar(0)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < k; ++l) {
      if (is_zero(a[i][l])) continue;
      for (std::size_t j = 0; j < m; ++j) out[i][j] += a[i][l] * b[l][j];
    }
  return out;
}

/// Gauss-Jordan inverse over ℚ. Throws std::domain_error when singular.
inline ScalarMatrix invert(ScalarMatrix a) {
  const std::size_t n = a.size();
  ScalarMatrix inv = identity_matrix(n);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && is_zero(a[pivot][col])) ++pivot;
    if (pivot == n) throw std::domain_error("singular pairing matrix");
    std::swap(a[pivot], a[col]);
    std::swap(inv[pivot], inv[col]);
    const Scalar scale = 1 / a[col][col];
    for (std::size_t j = 0; j < n; ++j) {
      a[col][j] *= scale;
      inv[col][j] *= scale;
    }
    for (std::size_t row = 0; row < n; ++row) {
      if (row == col || is_zero(a[row][col])) continue;
      const Scalar f = a[row][col];
      for (std::size_t j = 0; j < n; ++j) {
        a[row][j] -= f * a[col][j];
        inv[row][j] -= f * inv[col][j];
      }
    }
  }
  return inv;
}

/// A finite graded vector space V with an odd symplectic form.
///
/// The basis is described through its dual coordinates ("letters"): letter i
/// is the coordinate dual to basis vector e_i, and `degree(i)` is the degree
/// of the letter, so |e_i| = -degree(i). `pairing()(i, j)` is ⟨e_i, e_j⟩ on V.
/// The inverse form on V* is cached at construction; with the Koszul sign of
/// evaluating D_r it comes out as ω(e^k, e^l) = (G⁻¹)_{kl}·(-1)^{|e_l|}, which
/// is symmetric whenever G is graded antisymmetric of odd degree.
///
/// An optional degree +1 differential on letters can be attached; operators
/// that need d* throw when it is absent.
class GradedSymplecticSpace {
 public:
  GradedSymplecticSpace(std::vector<std::string> names, std::vector<int> degrees,
                        ScalarMatrix pairing)
      : names_(std::move(names)), degrees_(std::move(degrees)), pairing_(std::move(pairing)) {
    const std::size_t n = names_.size();
    if (degrees_.size() != n || pairing_.size() != n)
      throw std::invalid_argument("letter, degree and pairing sizes disagree");
    for (const auto& row : pairing_)
      if (row.size() != n) throw std::invalid_argument("pairing matrix is not square");
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        const Scalar& g = pairing_[i][j];
        if (is_zero(g)) {
          if (!is_zero(pairing_[j][i]))
            throw std::invalid_argument("pairing is not graded antisymmetric");
          continue;
        }
        if (parity(degrees_[i] + degrees_[j]) == 0)
          throw std::invalid_argument("pairing has even degree on letters " + names_[i] +
                                      ", " + names_[j]);
        // (-1)^{|e_i||e_j|} = 1 because exactly one of the two degrees is odd.
        if (g != -pairing_[j][i])
          throw std::invalid_argument("pairing is not graded antisymmetric");
      }
    const ScalarMatrix ginv = invert(pairing_);
    inverse_.assign(n, std::vector<Scalar>(n, Scalar(0)));
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t l = 0; l < n; ++l)
        inverse_[k][l] = parity(degrees_[l]) ? -ginv[k][l] : ginv[k][l];
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t l = 0; l < n; ++l)
        if (inverse_[k][l] != inverse_[l][k])
          throw std::logic_error("inverse pairing failed to be symmetric");
    for (std::size_t k = 0; k < n; ++k) {
      auto& row = partners_.emplace_back();
      for (std::size_t l = 0; l < n; ++l)
        if (!is_zero(inverse_[k][l])) row.push_back(static_cast<Letter>(l));
    }
  }

  std::size_t size() const { return names_.size(); }
  const std::string& name(Letter l) const { return names_.at(l); }
  int degree(Letter l) const { return degrees_[l]; }
  int letter_parity(Letter l) const { return parity(degrees_[l]); }
  const std::vector<std::string>& names() const { return names_; }
  const std::vector<int>& degrees() const { return degrees_; }
  const ScalarMatrix& pairing() const { return pairing_; }
  const ScalarMatrix& inverse_pairing() const { return inverse_; }
  const Scalar& omega(Letter a, Letter b) const { return inverse_[a][b]; }
  /// Letters with a nonzero inverse pairing against `l`.
  const std::vector<Letter>& partners(Letter l) const { return partners_[l]; }

  std::optional<Letter> find(std::string_view name) const {
    for (std::size_t i = 0; i < names_.size(); ++i)
      if (names_[i] == name) return static_cast<Letter>(i);
    return std::nullopt;
  }

  Letter check_letter(Letter l) const {
    if (l >= size()) throw std::out_of_range("letter index " + std::to_string(l) + " out of range");
    return l;
  }

  bool has_differential() const { return differential_.has_value(); }
  const std::vector<LetterCombination>& differential() const {
    if (!differential_) throw std::logic_error("space carries no internal differential");
    return *differential_;
  }

  /// Attaches d* on letters. Images must be homogeneous of degree +1, square
  /// to zero, and be compatible with the inverse pairing:
  /// ω(d a, b) + (-1)^{|a|} ω(a, d b) = 0.
  void set_differential(std::vector<LetterCombination> images) {
    const std::size_t n = size();
    if (images.size() != n) throw std::invalid_argument("differential needs one image per letter");
    for (std::size_t a = 0; a < n; ++a)
      for (const auto& [l, c] : images[a]) {
        check_letter(l);
        if (!is_zero(c) && degrees_[l] != degrees_[a] + 1)
          throw std::invalid_argument("differential image of " + names_[a] + " has wrong degree");
      }
    auto apply = [&](const LetterCombination& v) {
      std::vector<Scalar> out(n, Scalar(0));
      for (const auto& [l, c] : v)
        for (const auto& [m, e] : images[l]) out[m] += c * e;
      return out;
    };
    for (std::size_t a = 0; a < n; ++a)
      for (const auto& v : apply(images[a]))
        if (!is_zero(v)) throw std::invalid_argument("differential does not square to zero");
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        Scalar total = 0;
        for (const auto& [l, c] : images[a]) total += c * inverse_[l][b];
        Scalar right = 0;
        for (const auto& [l, c] : images[b]) right += c * inverse_[a][l];
        total += parity(degrees_[a]) ? -right : right;
        if (!is_zero(total))
          throw std::invalid_argument("differential is not compatible with the pairing");
      }
    differential_ = std::move(images);
  }

  bool operator==(const GradedSymplecticSpace& o) const {
    return names_ == o.names_ && degrees_ == o.degrees_ && pairing_ == o.pairing_;
  }

 private:
  std::vector<std::string> names_;
  std::vector<int> degrees_;
  ScalarMatrix pairing_;
  ScalarMatrix inverse_;
  std::vector<std::vector<Letter>> partners_;
  std::optional<std::vector<LetterCombination>> differential_;
};

using SpacePtr = std::shared_ptr<const GradedSymplecticSpace>;

inline bool same_space(const SpacePtr& a, const SpacePtr& b) {
  return a == b || (a && b && *a == *b);
}

inline const ScalarMatrix& inverse_pairing(const GradedSymplecticSpace& space) {
  return space.inverse_pairing();
}

/// Letter of V ⊗ Mat_N stored as (letter of V, row, column), flattened in
/// that lexicographic order.
struct MatrixLetter {
  Letter base;
  std::uint32_t row;
  std::uint32_t col;
};

inline Letter matrix_letter(Letter base, std::uint32_t row, std::uint32_t col, std::uint32_t n) {
  return static_cast<Letter>((base * n + row) * n + col);
}

inline MatrixLetter split_matrix_letter(Letter l, std::uint32_t n) {
  return {static_cast<Letter>(l / (n * n)), (l / n) % n, l % n};
}

/// V ⊗ Mat_N(𝕂) with ⟨a⊗X, b⊗Y⟩ = ⟨a,b⟩ Tr(XY). The differential of V, if
/// any, is carried over entrywise.
inline SpacePtr matrix_space(const GradedSymplecticSpace& base, std::uint32_t n) {
  if (n == 0) throw std::invalid_argument("matrix size must be positive");
  const std::size_t dim = base.size() * n * n;
  std::vector<std::string> names(dim);
  std::vector<int> degrees(dim);
  ScalarMatrix pairing(dim, std::vector<Scalar>(dim, Scalar(0)));
  for (Letter a = 0; a < base.size(); ++a)
    for (std::uint32_t r = 0; r < n; ++r)
      for (std::uint32_t c = 0; c < n; ++c) {
        const Letter l = matrix_letter(a, r, c, n);
        names[l] = base.name(a) + "[" + std::to_string(r + 1) + "," + std::to_string(c + 1) + "]";
        degrees[l] = base.degree(a);
        // Tr(E_rc E_r'c') = δ_{c r'} δ_{r c'}
        for (Letter b = 0; b < base.size(); ++b)
          pairing[l][matrix_letter(b, c, r, n)] = base.pairing()[a][b];
      }
  auto space = std::make_shared<GradedSymplecticSpace>(std::move(names), std::move(degrees),
                                                        std::move(pairing));
  if (base.has_differential()) {
    std::vector<LetterCombination> images(dim);
    for (Letter a = 0; a < base.size(); ++a)
      for (std::uint32_t r = 0; r < n; ++r)
        for (std::uint32_t c = 0; c < n; ++c)
          for (const auto& [b, coeff] : base.differential()[a])
            images[matrix_letter(a, r, c, n)].emplace_back(matrix_letter(b, r, c, n), coeff);
    space->set_differential(std::move(images));
  }
  return space;
}

}  // namespace ncbv
