#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ncbv/operators.hpp"

namespace ncbv {

using Tuple = std::vector<std::uint32_t>;

/// Sign of permuting items of the given parities into the order `perm`
/// (perm[i] is the original position of the item placed at i).
inline int koszul_sign(const std::vector<int>& parity, const std::vector<std::size_t>& perm) {
  int inversions = 0;
  for (std::size_t i = 0; i < perm.size(); ++i)
    for (std::size_t j = i + 1; j < perm.size(); ++j)
      if (perm[i] > perm[j] && parity[perm[i]] && parity[perm[j]]) ++inversions;
  return (inversions & 1) ? -1 : 1;
}

/// A finite-dimensional cyclic A∞-algebra given by structure-map tables.
///
/// The basis e_0, …, e_{n-1} of A has degrees |e_i| and a symmetric pairing of
/// odd degree. m_k is a dense table: entry `((i_1·n + i_2)·n + … + i_k)·n + j`
/// is the e_j-coefficient of m_k(e_{i_1}, …, e_{i_k}).
///
/// The suspended space ΣA has letters (Σe_i)* of degree 1 - |e_i| and pairing
/// ⟨Σu,Σv⟩ = (-1)^{|u|}⟨u,v⟩. Each m_k is transported to the (k+1)-linear form
///   α̃(Σu_1, …, Σu_{k+1}) = (-1)^{Σ_i (i-1)(|u_i|-1)} ⟨m_k(u_1,…,u_k), u_{k+1}⟩,
/// which must be cyclically invariant with Koszul signs in the shifted degrees.
/// With this transport a cyclic dga (A, d, ·) is the A∞-algebra m_1 = d,
/// m_2 = ·, and {m̃,m̃} = 0 encodes d² = 0, the Leibniz rule and associativity.
class CyclicAInfinity {
 public:
  CyclicAInfinity(std::vector<std::string> basis, std::vector<int> degrees, ScalarMatrix pairing,
                  std::vector<std::string> letter_names = {})
      : basis_(std::move(basis)),
        degrees_(std::move(degrees)),
        pairing_(std::move(pairing)),
        letter_names_(std::move(letter_names)) {
    const std::size_t n = basis_.size();
    if (degrees_.size() != n || pairing_.size() != n)
      throw std::invalid_argument("basis, degree and pairing sizes disagree");
    if (letter_names_.empty())
      for (const auto& b : basis_) letter_names_.push_back("s" + b);
    if (letter_names_.size() != n) throw std::invalid_argument("one letter name per basis vector");
    for (std::size_t i = 0; i < n; ++i) {
      if (pairing_[i].size() != n) throw std::invalid_argument("pairing matrix is not square");
      for (std::size_t j = 0; j < n; ++j) {
        if (is_zero(pairing_[i][j])) continue;
        if (parity(degrees_[i] + degrees_[j]) == 0)
          throw std::invalid_argument("pairing on A must have odd degree");
        if (pairing_[i][j] != pairing_[j][i]) throw std::invalid_argument("pairing on A must be symmetric");
      }
    }
    invert(pairing_);
  }

  std::size_t dim() const { return basis_.size(); }
  const std::vector<std::string>& basis() const { return basis_; }
  const std::vector<std::string>& letter_names() const { return letter_names_; }
  const std::vector<int>& degrees() const { return degrees_; }
  int degree(std::size_t i) const { return degrees_[i]; }
  const ScalarMatrix& pairing() const { return pairing_; }
  const std::map<unsigned, std::vector<Scalar>>& maps() const { return maps_; }
  const std::optional<std::vector<Scalar>>& unit() const { return unit_; }

  /// Installs m_k from a dense table of size n^{k+1}. Checks degree and the
  /// cyclic invariance of the transported form.
  void set_map(unsigned k, std::vector<Scalar> table) {
    if (k == 0) throw std::invalid_argument("structure maps start at m_1");
    if (table.size() != power(dim(), k + 1)) throw std::invalid_argument("structure map table has wrong size");
    for (auto& v : table) v.canonicalize();
    maps_[k] = std::move(table);
    try {
      check_map(k);
    } catch (...) {
      maps_.erase(k);
      throw;
    }
  }

  /// Sparse convenience: m_k(e_{in}) has e_out-coefficient c. Validation is
  /// deferred to `validate()`.
  void set_entry(const Tuple& in, std::uint32_t out, const Scalar& c) {
    const unsigned k = static_cast<unsigned>(in.size());
    auto& t = maps_[k];
    if (t.empty()) t.assign(power(dim(), k + 1), Scalar(0));
    t[index(in, out)] = c;
    t[index(in, out)].canonicalize();
  }

  void set_unit(std::vector<Scalar> u) {
    if (u.size() != dim()) throw std::invalid_argument("unit has wrong length");
    unit_ = std::move(u);
  }

  /// Degree and cyclicity of every map, and the unit axioms when a unit is set.
  void validate() const {
    for (const auto& [k, t] : maps_) check_map(k);
    if (unit_) check_unit();
  }

  Scalar structure(const Tuple& in, std::uint32_t out) const {
    auto it = maps_.find(static_cast<unsigned>(in.size()));
    return it == maps_.end() ? Scalar(0) : it->second[index(in, out)];
  }

  /// ⟨m_k(u_1..u_k), u_{k+1}⟩ for basis vectors.
  Scalar cyclic_tensor(const Tuple& t) const {
    Tuple in(t.begin(), t.end() - 1);
    Scalar sum = 0;
    for (std::uint32_t j = 0; j < dim(); ++j) {
      const Scalar& p = pairing_[j][t.back()];
      if (is_zero(p)) continue;
      sum += structure(in, j) * p;
    }
    return sum;
  }

  /// The transported form α̃ on ΣA.
  Scalar alpha(const Tuple& t) const {
    int e = 0;
    for (std::size_t i = 0; i < t.size(); ++i) e ^= static_cast<int>(i & 1) & shifted_parity(t[i]);
    Scalar v = cyclic_tensor(t);
    return e ? Scalar(-v) : v;
  }

  int shifted_parity(std::uint32_t i) const { return parity(degrees_[i] - 1); }

  /// Tuples (u_1, …, u_{k+1}) where α̃ can be nonzero, for every installed k.
  template <typename Visit>
  void for_each_alpha(Visit&& visit) const {
    for (const auto& [k, t] : maps_) {
      const std::size_t n = dim();
      Tuple in(k);
      for (std::size_t flat = 0; flat < power(n, k); ++flat) {
        std::size_t rest = flat;
        for (std::size_t i = k; i-- > 0;) {
          in[i] = static_cast<std::uint32_t>(rest % n);
          rest /= n;
        }
        bool any = false;
        for (std::uint32_t j = 0; j < n && !any; ++j) any = !is_zero(t[flat * n + j]);
        if (!any) continue;
        Tuple full = in;
        full.push_back(0);
        for (std::uint32_t last = 0; last < n; ++last) {
          full.back() = last;
          Scalar a = alpha(full);
          if (!is_zero(a)) visit(k, full, a);
        }
      }
    }
  }

  /// ΣA as a graded symplectic space over the letters (Σe_i)*.
  SpacePtr sigma_space() const {
    if (!space_) {
      std::vector<int> letter_degrees;
      for (int d : degrees_) letter_degrees.push_back(1 - d);
      ScalarMatrix g(dim(), std::vector<Scalar>(dim(), Scalar(0)));
      for (std::size_t i = 0; i < dim(); ++i)
        for (std::size_t j = 0; j < dim(); ++j)
          g[i][j] = parity(degrees_[i]) ? Scalar(-pairing_[i][j]) : pairing_[i][j];
      space_ = std::make_shared<GradedSymplecticSpace>(letter_names_, std::move(letter_degrees), std::move(g));
    }
    return space_;
  }

 private:
  static std::size_t power(std::size_t b, std::size_t e) {
    std::size_t r = 1;
    while (e--) r *= b;
    return r;
  }

  std::size_t index(const Tuple& in, std::uint32_t out) const {
    std::size_t idx = 0;
    for (auto i : in) {
      if (i >= dim()) throw std::out_of_range("basis index out of range");
      idx = idx * dim() + i;
    }
    if (out >= dim()) throw std::out_of_range("basis index out of range");
    return idx * dim() + out;
  }

  void check_map(unsigned k) const {
    const auto& t = maps_.at(k);
    const std::size_t n = dim();
    for (std::size_t flat = 0; flat < power(n, k); ++flat) {
      int in_degree = 0;
      std::size_t rest = flat;
      for (unsigned i = 0; i < k; ++i) {
        in_degree += degrees_[rest % n];
        rest /= n;
      }
      for (std::size_t j = 0; j < n; ++j)
        if (!is_zero(t[flat * n + j]) && degrees_[j] != in_degree + 2 - static_cast<int>(k))
          throw std::invalid_argument("m_" + std::to_string(k) + " does not have degree " +
                                      std::to_string(2 - static_cast<int>(k)));
    }
    Tuple tuple(k + 1);
    for (std::size_t flat = 0; flat < power(n, k + 1); ++flat) {
      std::size_t rest = flat;
      for (std::size_t i = k + 1; i-- > 0;) {
        tuple[i] = static_cast<std::uint32_t>(rest % n);
        rest /= n;
      }
      const Scalar a = alpha(tuple);
      if (is_zero(a)) continue;
      Tuple rotated(k + 1);
      rotated[0] = tuple.back();
      std::copy(tuple.begin(), tuple.end() - 1, rotated.begin() + 1);
      int others = 0;
      for (unsigned i = 0; i < k; ++i) others ^= shifted_parity(tuple[i]);
      const Scalar b = alpha(rotated);
      if ((shifted_parity(tuple.back()) & others) ? a != -b : a != b)
        throw std::invalid_argument("m_" + std::to_string(k) + " is not cyclic with respect to the pairing");
    }
  }

  void check_unit() const {
    const auto& u = *unit_;
    const std::size_t n = dim();
    for (std::uint32_t a = 0; a < n; ++a)
      for (std::uint32_t j = 0; j < n; ++j) {
        Scalar left = 0, right = 0;
        for (std::uint32_t i = 0; i < n; ++i) {
          if (is_zero(u[i])) continue;
          left += u[i] * structure({i, a}, j);
          right += u[i] * structure({a, i}, j);
        }
        const Scalar expected = a == j ? Scalar(1) : Scalar(0);
        if (left != expected || right != expected) throw std::invalid_argument("unit axiom m_2(1,a) = a = m_2(a,1) fails");
      }
    for (const auto& [k, t] : maps_) {
      if (k == 2) continue;
      for (unsigned slot = 0; slot < k; ++slot) {
        Tuple in(k, 0);
        for (std::size_t flat = 0; flat < power(n, k); ++flat) {
          std::size_t rest = flat;
          for (std::size_t i = k; i-- > 0;) {
            in[i] = static_cast<std::uint32_t>(rest % n);
            rest /= n;
          }
          if (in[slot] != 0) continue;
          for (std::uint32_t j = 0; j < n; ++j) {
            Scalar s = 0;
            for (std::uint32_t i = 0; i < n; ++i) {
              if (is_zero(u[i])) continue;
              Tuple with = in;
              with[slot] = i;
              s += u[i] * structure(with, j);
            }
            if (!is_zero(s)) throw std::invalid_argument("m_" + std::to_string(k) + " does not vanish on the unit");
          }
        }
      }
    }
  }

  std::vector<std::string> basis_;
  std::vector<int> degrees_;
  ScalarMatrix pairing_;
  std::vector<std::string> letter_names_;
  std::map<unsigned, std::vector<Scalar>> maps_;
  std::optional<std::vector<Scalar>> unit_;
  mutable SpacePtr space_;
};

/// Mat_N(A) = A ⊗ Mat_N(𝕂): structure maps tensored with the matrix product
/// chain, pairing combined with the trace pairing. Basis element (e, r, c) sits
/// at (e·N + r)·N + c, matching matrix_space on ΣA.
inline CyclicAInfinity matrix_ainfinity(const CyclicAInfinity& a, std::uint32_t n) {
  if (n == 0) throw std::invalid_argument("matrix size must be positive");
  const std::size_t d = a.dim();
  std::vector<std::string> basis, letters;
  std::vector<int> degrees;
  for (std::size_t e = 0; e < d; ++e)
    for (std::uint32_t r = 0; r < n; ++r)
      for (std::uint32_t c = 0; c < n; ++c) {
        const std::string slot = "[" + std::to_string(r + 1) + "," + std::to_string(c + 1) + "]";
        basis.push_back(a.basis()[e] + slot);
        letters.push_back(a.letter_names()[e] + slot);
        degrees.push_back(a.degree(e));
      }
  const std::size_t dim = basis.size();
  auto at = [n](std::size_t e, std::uint32_t r, std::uint32_t c) {
    return static_cast<std::uint32_t>((e * n + r) * n + c);
  };
  ScalarMatrix pairing(dim, std::vector<Scalar>(dim, Scalar(0)));
  for (std::size_t e = 0; e < d; ++e)
    for (std::size_t f = 0; f < d; ++f) {
      if (is_zero(a.pairing()[e][f])) continue;
      for (std::uint32_t r = 0; r < n; ++r)
        for (std::uint32_t c = 0; c < n; ++c) pairing[at(e, r, c)][at(f, c, r)] = a.pairing()[e][f];
    }
  CyclicAInfinity out(std::move(basis), std::move(degrees), std::move(pairing), std::move(letters));
  for (const auto& [k, table] : a.maps()) {
    for (std::size_t flat = 0; flat < table.size(); ++flat) {
      if (is_zero(table[flat])) continue;
      Tuple in(k);
      std::size_t rest = flat;
      const std::uint32_t j = static_cast<std::uint32_t>(rest % d);
      rest /= d;
      for (std::size_t i = k; i-- > 0;) {
        in[i] = static_cast<std::uint32_t>(rest % d);
        rest /= d;
      }
      // Index chains r_0, r_1, …, r_k: input i is E_{r_{i-1} r_i}.
      std::vector<std::uint32_t> chain(k + 1, 0);
      while (true) {
        Tuple mat_in(k);
        for (unsigned i = 0; i < k; ++i) mat_in[i] = at(in[i], chain[i], chain[i + 1]);
        out.set_entry(mat_in, at(j, chain[0], chain[k]), table[flat]);
        std::size_t p = 0;
        while (p <= k && ++chain[p] == n) chain[p++] = 0;
        if (p > k) break;
      }
    }
  }
  if (a.unit()) {
    std::vector<Scalar> u(dim, Scalar(0));
    for (std::size_t e = 0; e < d; ++e)
      for (std::uint32_t r = 0; r < n; ++r) u[at(e, r, r)] = (*a.unit())[e];
    out.set_unit(std::move(u));
  }
  out.validate();
  return out;
}

/// m̃ ∈ NCHam(ΣA): each cyclically invariant form α̃_k of k+1 arguments is sent
/// to the cyclic word (1/(k+1)) Σ_t α̃_k(t) (t_1 ⋯ t_{k+1}).
inline Element encode_ainfinity(const CyclicAInfinity& a) {
  a.validate();
  Element out(a.sigma_space(), Flavor::cyclic);
  a.for_each_alpha([&](unsigned k, const Tuple& t, const Scalar& v) {
    out.add_raw(0, 0, {RawWord(t.begin(), t.end())}, v / (k + 1));
  });
  return out;
}

/// l̃ ∈ Ŝ(ΣA*) for the commutator L∞-structure: the symmetrization
/// l_k(u_1..u_k) = Σ_π ±m_k(u_π(1), …, u_π(k)) encoded with weight 1/(k+1)!.
inline Element commutator_element(const CyclicAInfinity& a) {
  a.validate();
  Element out(a.sigma_space(), Flavor::commutative);
  std::map<unsigned, Scalar> weight;
  for (const auto& [k, t] : a.maps()) {
    Scalar f = 1;
    for (unsigned i = 2; i <= k + 1; ++i) f *= i;
    weight[k] = 1 / f;
  }
  // Enumerate l̃'s tensor on tuples t by scattering each nonzero α̃(s) to the
  // tuples obtained by permuting its first k arguments.
  a.for_each_alpha([&](unsigned k, const Tuple& s, const Scalar& v) {
    std::vector<int> par(k);
    for (unsigned i = 0; i < k; ++i) par[i] = a.shifted_parity(s[i]);
    std::vector<std::size_t> perm(k);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    do {
      std::vector<Letter> letters(k + 1);
      for (unsigned i = 0; i < k; ++i) letters[i] = s[perm[i]];
      letters[k] = s[k];
      out.add_product(letters, koszul_sign(par, perm) * v * weight[k]);
    } while (std::next_permutation(perm.begin(), perm.end()));
  });
  return out;
}

/// The two-dimensional algebra 𝒜: a in degree 1, b in degree 2, ⟨a,b⟩ = 1,
/// da = b, all higher products zero. The basis used is (a, β = -b) so that the
/// letters of Σ𝒜 are x = (Σa)* of degree 0 and ξ = (Σβ)* = -(Σb)* of degree -1.
inline CyclicAInfinity algebra_A() {
  CyclicAInfinity a({"a", "β"}, {1, 2}, {{Scalar(0), Scalar(-1)}, {Scalar(-1), Scalar(0)}}, {"x", "ξ"});
  a.set_entry({0}, 1, Scalar(-1));
  a.validate();
  return a;
}

/// ΣA with the letter differential d* = -{m̃_1, -} induced by m_1 attached.
inline SpacePtr sigma_space_with_differential(const CyclicAInfinity& a) {
  const SpacePtr base = a.sigma_space();
  Element quadratic(base, Flavor::cyclic);
  const Element full = encode_ainfinity(a);
  for (const auto& [m, c] : full.terms())
    if (m.words.size() == 1 && m.words[0].size() == 2) quadratic.add_term(m, c);
  std::vector<LetterCombination> images(base->size());
  for (Letter l = 0; l < base->size(); ++l) {
    const Element image = nc_bracket(quadratic, Element::word(base, {l}));
    for (const auto& [m, c] : image.terms()) {
      if (m.nu_power || m.words.size() != 1 || m.words[0].size() != 1)
        throw std::logic_error("m_1 did not induce a linear differential");
      images[l].emplace_back(m.words[0].letters[0], -c);
    }
  }
  auto space = std::make_shared<GradedSymplecticSpace>(*base);
  space->set_differential(std::move(images));
  return space;
}

}  // namespace ncbv
