#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "ncbv/graded_space.hpp"

namespace ncbv {

using Vector = std::vector<Scalar>;

/// A finite-dimensional (ungraded) Frobenius algebra given by structure
/// constants e_a e_b = Σ_c mult[a][b][c] e_c and a nondegenerate symmetric
/// invariant pairing.
class FrobeniusAlgebra {
 public:
  using Table = std::vector<std::vector<Vector>>;

  FrobeniusAlgebra(Table mult, ScalarMatrix pairing, Vector unit)
      : mult_(std::move(mult)), pairing_(std::move(pairing)), unit_(std::move(unit)) {
    const std::size_t n = pairing_.size();
    if (n == 0) throw std::invalid_argument("Frobenius algebra must be nonzero");
    for (auto& row : mult_)
      for (auto& v : row)
        for (auto& x : v) x.canonicalize();
    for (auto& row : pairing_)
      for (auto& x : row) x.canonicalize();
    for (auto& x : unit_) x.canonicalize();
    if (mult_.size() != n || unit_.size() != n) throw std::invalid_argument("dimension mismatch");
    for (const auto& row : mult_) {
      if (row.size() != n) throw std::invalid_argument("dimension mismatch");
      for (const auto& v : row)
        if (v.size() != n) throw std::invalid_argument("dimension mismatch");
    }
    for (std::size_t a = 0; a < n; ++a) {
      if (pairing_[a].size() != n) throw std::invalid_argument("pairing matrix is not square");
      for (std::size_t b = 0; b < n; ++b)
        if (pairing_[a][b] != pairing_[b][a]) throw std::invalid_argument("pairing is not symmetric");
    }
    const ScalarMatrix ginv = invert(pairing_);
    dual_.assign(n, Vector(n, Scalar(0)));
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) dual_[j][k] = ginv[k][j];
    check_axioms();
    window_ = Vector(n, Scalar(0));
    for (std::size_t i = 0; i < n; ++i) window_ = add(window_, multiply(basis(i), dual_[i]));
  }

  std::size_t dim() const { return pairing_.size(); }
  const ScalarMatrix& pairing() const { return pairing_; }
  const Vector& unit() const { return unit_; }

  Vector basis(std::size_t i) const {
    Vector v(dim(), Scalar(0));
    v.at(i) = 1;
    return v;
  }
  /// y^j with ⟨e_i, y^j⟩ = δ_ij.
  const Vector& dual(std::size_t j) const { return dual_.at(j); }
  /// Σ_i e_i y^i, which is central.
  const Vector& window() const { return window_; }

  Vector multiply(const Vector& u, const Vector& v) const {
    const std::size_t n = dim();
    Vector out(n, Scalar(0));
    for (std::size_t a = 0; a < n; ++a) {
      if (is_zero(u[a])) continue;
      for (std::size_t b = 0; b < n; ++b) {
        if (is_zero(v[b])) continue;
        const Scalar f = u[a] * v[b];
        for (std::size_t c = 0; c < n; ++c)
          if (!is_zero(mult_[a][b][c])) out[c] += f * mult_[a][b][c];
      }
    }
    return out;
  }

  Scalar pair(const Vector& u, const Vector& v) const {
    Scalar s = 0;
    for (std::size_t a = 0; a < dim(); ++a) {
      if (is_zero(u[a])) continue;
      for (std::size_t b = 0; b < dim(); ++b)
        if (!is_zero(v[b])) s += u[a] * pairing_[a][b] * v[b];
    }
    return s;
  }

  static Vector add(Vector u, const Vector& v) {
    for (std::size_t i = 0; i < u.size(); ++i) u[i] += v[i];
    return u;
  }
  static Vector scale(const Scalar& s, Vector u) {
    for (auto& x : u) x *= s;
    return u;
  }

  /// Expresses the algebra in the basis f_a = Σ_b p[a][b] e_b.
  FrobeniusAlgebra change_basis(const ScalarMatrix& p) const {
    const std::size_t n = dim();
    const ScalarMatrix q = invert(p);
    auto to_new = [&](const Vector& v) {
      Vector out(n, Scalar(0));
      for (std::size_t b = 0; b < n; ++b)
        for (std::size_t a = 0; a < n; ++a) out[a] += v[b] * q[b][a];
      return out;
    };
    std::vector<Vector> f(n);
    for (std::size_t a = 0; a < n; ++a) f[a] = p[a];
    Table mult(n, std::vector<Vector>(n));
    ScalarMatrix pairing(n, Vector(n, Scalar(0)));
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        mult[a][b] = to_new(multiply(f[a], f[b]));
        pairing[a][b] = pair(f[a], f[b]);
      }
    return FrobeniusAlgebra(std::move(mult), std::move(pairing), to_new(unit_));
  }

 private:
  void check_axioms() const {
    const std::size_t n = dim();
    for (std::size_t a = 0; a < n; ++a) {
      if (multiply(unit_, basis(a)) != basis(a) || multiply(basis(a), unit_) != basis(a))
        throw std::invalid_argument("unit axiom fails");
      for (std::size_t b = 0; b < n; ++b) {
        const Vector ab = multiply(basis(a), basis(b));
        for (std::size_t c = 0; c < n; ++c) {
          if (multiply(ab, basis(c)) != multiply(basis(a), multiply(basis(b), basis(c))))
            throw std::invalid_argument("multiplication is not associative");
          if (pair(ab, basis(c)) != pair(basis(a), multiply(basis(b), basis(c))))
            throw std::invalid_argument("pairing is not invariant");
        }
      }
    }
  }

  Table mult_;
  ScalarMatrix pairing_;
  Vector unit_;
  ScalarMatrix dual_;
  Vector window_;
};

/// t_k(c_1, …, c_k) = ⟨c_1 ⋯ c_{k-1}, c_k⟩; the empty product is the unit.
inline Scalar otft_t(const FrobeniusAlgebra& f, const std::vector<Vector>& cs) {
  if (cs.empty()) throw std::invalid_argument("t_k needs at least one argument");
  Vector prod = f.unit();
  for (std::size_t i = 0; i + 1 < cs.size(); ++i) prod = f.multiply(prod, cs[i]);
  return f.pair(prod, cs.back());
}

/// β(c) = Σ_i x_i y^i c.
inline Vector otft_beta(const FrobeniusAlgebra& f, const Vector& c) { return f.multiply(f.window(), c); }

/// γ(c) = Σ_{i,j} x_i x_j y^i y^j c.
inline Vector otft_gamma(const FrobeniusAlgebra& f, const Vector& c) {
  const std::size_t n = f.dim();
  Vector out(n, Scalar(0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Vector v = f.multiply(f.basis(i), f.basis(j));
      v = f.multiply(v, f.dual(i));
      v = f.multiply(v, f.dual(j));
      out = FrobeniusAlgebra::add(out, v);
    }
  return f.multiply(out, c);
}

/// μ^{g,b}_{k_1..k_m}: the open TFT tensor on m boundary circles carrying the
/// inputs `boundaries[p]` in cyclic order, on a surface of genus g with b
/// further boundary components without inputs. The handle and hole operators
/// are applied to the argument at (place_boundary, place_position).
inline Scalar otft_mu(const FrobeniusAlgebra& f, unsigned genus, unsigned free_boundaries,
                      std::vector<std::vector<Vector>> boundaries, std::size_t place_boundary = 0,
                      std::size_t place_position = 0) {
  const std::size_t m = boundaries.size();
  if (m == 0) throw std::invalid_argument("at least one boundary with inputs is required");
  for (const auto& b : boundaries)
    if (b.empty()) throw std::invalid_argument("every boundary needs at least one input");
  auto& target = boundaries.at(place_boundary).at(place_position);
  for (unsigned i = 0; i < free_boundaries; ++i) target = otft_beta(f, target);
  for (unsigned i = 0; i < genus; ++i) target = otft_gamma(f, target);

  const std::size_t n = f.dim();
  std::vector<std::size_t> idx(m, 0);
  Scalar total = 0;
  std::vector<Vector> outer(m), inner;
  while (true) {
    for (std::size_t p = 0; p < m; ++p) outer[m - 1 - p] = f.basis(idx[p]);
    const Scalar left = otft_t(f, outer);
    if (!is_zero(left)) {
      inner.clear();
      for (std::size_t p = 0; p < m; ++p) {
        inner.push_back(f.dual(idx[p]));
        inner.insert(inner.end(), boundaries[p].begin(), boundaries[p].end());
      }
      total += left * otft_t(f, inner);
    }
    std::size_t p = 0;
    while (p < m && ++idx[p] == n) idx[p++] = 0;
    if (p == m) break;
  }
  return total;
}

/// Mat_N(𝕂) with the trace pairing, basis E_rc at index r·N + c.
inline FrobeniusAlgebra frobenius_matrix(std::uint32_t n, const Scalar& trace_scale = 1) {
  const std::size_t d = std::size_t{n} * n;
  FrobeniusAlgebra::Table mult(d, std::vector<Vector>(d, Vector(d, Scalar(0))));
  ScalarMatrix pairing(d, Vector(d, Scalar(0)));
  Vector unit(d, Scalar(0));
  for (std::uint32_t r = 0; r < n; ++r) {
    unit[r * n + r] = 1;
    for (std::uint32_t c = 0; c < n; ++c) {
      pairing[r * n + c][c * n + r] = trace_scale;
      for (std::uint32_t s = 0; s < n; ++s) mult[r * n + c][c * n + s][r * n + s] = 1;
    }
  }
  return FrobeniusAlgebra(std::move(mult), std::move(pairing), std::move(unit));
}

/// 𝕂^n with ⟨e_i, e_j⟩ = δ_ij λ_i.
inline FrobeniusAlgebra frobenius_diagonal(const std::vector<Scalar>& lambdas) {
  const std::size_t n = lambdas.size();
  FrobeniusAlgebra::Table mult(n, std::vector<Vector>(n, Vector(n, Scalar(0))));
  ScalarMatrix pairing(n, Vector(n, Scalar(0)));
  for (std::size_t i = 0; i < n; ++i) {
    mult[i][i][i] = 1;
    pairing[i][i] = lambdas[i];
  }
  return FrobeniusAlgebra(std::move(mult), std::move(pairing), Vector(n, Scalar(1)));
}

/// Group algebra of ℤ/n with ⟨g, h⟩ = λ·[gh = 1].
inline FrobeniusAlgebra frobenius_cyclic_group(std::uint32_t n, const Scalar& lambda = 1) {
  FrobeniusAlgebra::Table mult(n, std::vector<Vector>(n, Vector(n, Scalar(0))));
  ScalarMatrix pairing(n, Vector(n, Scalar(0)));
  Vector unit(n, Scalar(0));
  unit[0] = 1;
  for (std::uint32_t a = 0; a < n; ++a)
    for (std::uint32_t b = 0; b < n; ++b) {
      mult[a][b][(a + b) % n] = 1;
      if ((a + b) % n == 0) pairing[a][b] = lambda;
    }
  return FrobeniusAlgebra(std::move(mult), std::move(pairing), std::move(unit));
}

/// Block direct sum A ⊕ B.
inline FrobeniusAlgebra frobenius_direct_sum(const FrobeniusAlgebra& a, const FrobeniusAlgebra& b) {
  const std::size_t na = a.dim(), n = na + b.dim();
  FrobeniusAlgebra::Table mult(n, std::vector<Vector>(n, Vector(n, Scalar(0))));
  ScalarMatrix pairing(n, Vector(n, Scalar(0)));
  Vector unit(n, Scalar(0));
  auto embed = [&](const FrobeniusAlgebra& s, std::size_t off) {
    for (std::size_t i = 0; i < s.dim(); ++i) {
      unit[off + i] = s.unit()[i];
      for (std::size_t j = 0; j < s.dim(); ++j) {
        pairing[off + i][off + j] = s.pairing()[i][j];
        const Vector v = s.multiply(s.basis(i), s.basis(j));
        for (std::size_t k = 0; k < s.dim(); ++k) mult[off + i][off + j][off + k] = v[k];
      }
    }
  };
  embed(a, 0);
  embed(b, na);
  return FrobeniusAlgebra(std::move(mult), std::move(pairing), std::move(unit));
}

/// A random semisimple Frobenius algebra: a direct sum of copies of 𝕂, group
/// algebras of small cyclic groups and Mat_2 with scaled trace pairings, in a
/// random basis.
template <typename Rng>
FrobeniusAlgebra random_frobenius(Rng& rng, std::size_t max_blocks = 2) {
  auto nonzero = [&] {
    std::uniform_int_distribution<int> num(1, 4), sgn(0, 1);
    Scalar q(sgn(rng) ? num(rng) : -num(rng), std::uniform_int_distribution<int>(1, 3)(rng));
    q.canonicalize();
    return q;
  };
  auto block = [&]() -> FrobeniusAlgebra {
    switch (std::uniform_int_distribution<int>(0, 2)(rng)) {
      case 0: return frobenius_diagonal({nonzero()});
      case 1: return frobenius_cyclic_group(std::uniform_int_distribution<std::uint32_t>(2, 3)(rng), nonzero());
      default: return frobenius_matrix(2, nonzero());
    }
  };
  FrobeniusAlgebra f = block();
  const std::size_t blocks = std::uniform_int_distribution<std::size_t>(1, max_blocks)(rng);
  for (std::size_t i = 1; i < blocks; ++i) f = frobenius_direct_sum(f, block());
  const std::size_t n = f.dim();
  // Unitriangular times a random permutation, hence invertible.
  ScalarMatrix p(n, Vector(n, Scalar(0)));
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  std::shuffle(perm.begin(), perm.end(), rng);
  for (std::size_t i = 0; i < n; ++i) {
    p[i][perm[i]] = 1;
    for (std::size_t j = i + 1; j < n; ++j)
      if (std::uniform_int_distribution<int>(0, 2)(rng) == 0)
        p[i][perm[j]] = std::uniform_int_distribution<int>(-2, 2)(rng);
  }
  return f.change_basis(p);
}

}  // namespace ncbv
