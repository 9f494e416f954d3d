#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

#include "ncbv/element.hpp"

namespace ncbv {

// Sign convention. Every operator below is built from one primitive: bring
// the letters (or words) it acts on to the front of the sequence, paying the
// Koszul sign of that permutation, then contract the two leading letters a, b
// with ω(a, b) = ⟨a,b⟩⁻¹. Cyclic words additionally pay the rotation sign.
// Because all signs are Koszul signs of the flattened letter sequence, the
// quotient σ from cyclic words to symmetric words commutes with everything.
//
// With this convention the brackets are graded symmetric,
// {a,b} = (-1)^{|a||b|}{b,a}, and satisfy
//   {a,{b,c}} + {{a,b},c} - (-1)^{(|a|+1)(|b|+1)}{b,{a,c}} = 0;
// the twisted bracket (-1)^{|a|}{a,b} is the usual odd Lie bracket.

namespace detail {

inline std::vector<int> prefix_parities(std::span<const Letter> w, const GradedSymplecticSpace& s) {
  std::vector<int> p(w.size() + 1, 0);
  for (std::size_t i = 0; i < w.size(); ++i) p[i + 1] = p[i] ^ s.letter_parity(w[i]);
  return p;
}

inline std::vector<int> word_parities(const std::vector<CyclicWord>& ws,
                                      const GradedSymplecticSpace& s) {
  std::vector<int> p(ws.size());
  for (std::size_t i = 0; i < ws.size(); ++i) p[i] = word_parity(ws[i].letters, s);
  return p;
}

inline std::vector<int> running(const std::vector<int>& par) {
  std::vector<int> pre(par.size() + 1, 0);
  for (std::size_t i = 0; i < par.size(); ++i) pre[i + 1] = pre[i] ^ par[i];
  return pre;
}

/// Letters of `w` starting after position i and wrapping around to i-1.
inline RawWord rotated_tail(std::span<const Letter> w, std::size_t i) {
  RawWord out;
  out.reserve(w.size() - 1);
  out.insert(out.end(), w.begin() + i + 1, w.end());
  out.insert(out.end(), w.begin(), w.begin() + i);
  return out;
}

/// (a₁⋯a_n) ↦ Σ_{i<j} ±ω(a_i,a_j) (a_{i+1}⋯a_{j-1}) ⊗ (a_{j+1}⋯a_{i-1}).
template <typename Emit>
void cobracket_word(std::span<const Letter> a, const GradedSymplecticSpace& s, Emit&& emit) {
  const std::size_t n = a.size();
  const auto pre = prefix_parities(a, s);
  const int total = pre[n];
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const Scalar& w = s.omega(a[i], a[j]);
      if (is_zero(w)) continue;
      int e = pre[i] & (total ^ pre[i]);
      e ^= s.letter_parity(a[j]) & (pre[j] ^ pre[i + 1]);
      RawWord inner(a.begin() + i + 1, a.begin() + j);
      RawWord outer(a.begin() + j + 1, a.end());
      outer.insert(outer.end(), a.begin(), a.begin() + i);
      emit(e ? Scalar(-w) : w, std::move(inner), std::move(outer));
    }
}

/// {(a₁⋯a_m),(b₁⋯b_n)} = Σ ±ω(a_i,b_j) (a_{i+1}⋯a_{i-1} b_{j+1}⋯b_{j-1}).
template <typename Emit>
void bracket_words(std::span<const Letter> a, std::span<const Letter> b,
                   const GradedSymplecticSpace& s, Emit&& emit) {
  const auto pa = prefix_parities(a, s);
  const auto pb = prefix_parities(b, s);
  const int ta = pa[a.size()], tb = pb[b.size()];
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) {
      const Scalar& w = s.omega(a[i], b[j]);
      if (is_zero(w)) continue;
      int e = (pa[i] & (ta ^ pa[i])) ^ (pb[j] & (tb ^ pb[j]));
      e ^= s.letter_parity(b[j]) & (ta ^ s.letter_parity(a[i]));
      RawWord joined = rotated_tail(a, i);
      RawWord tail = rotated_tail(b, j);
      joined.insert(joined.end(), tail.begin(), tail.end());
      emit(e ? Scalar(-w) : w, std::move(joined));
    }
}

inline std::vector<CyclicWord> without(const std::vector<CyclicWord>& ws, std::size_t i,
                                       std::size_t k = static_cast<std::size_t>(-1)) {
  std::vector<CyclicWord> out;
  out.reserve(ws.size());
  for (std::size_t t = 0; t < ws.size(); ++t)
    if (t != i && t != k) out.push_back(ws[t]);
  return out;
}

/// Adds c·γ^g ν^j (fresh₁)(fresh₂)⋯·rest where the fresh words are raw.
inline void add_spliced(Element& out, unsigned g, unsigned nu, std::vector<RawWord> fresh,
                        const std::vector<CyclicWord>& rest, Scalar c) {
  std::vector<CyclicWord> ws;
  ws.reserve(fresh.size() + rest.size());
  for (auto& f : fresh) {
    if (f.empty()) {
      ++nu;
      continue;
    }
    auto cw = canonicalize_cyclic(f, out.space());
    if (!cw) return;
    if (cw->second < 0) c = -c;
    ws.push_back(std::move(cw->first));
  }
  ws.insert(ws.end(), rest.begin(), rest.end());
  out.add_words(g, nu, std::move(ws), c);
}

inline void require(const Element& e, Flavor f, const char* op) {
  if (e.flavor() != f)
    throw std::invalid_argument(std::string(op) + " expects a " + flavor_name(f) + " element");
}

inline std::vector<Letter> letters_of(const std::vector<CyclicWord>& ws) {
  std::vector<Letter> out;
  out.reserve(ws.size());
  for (const auto& w : ws) out.push_back(w.letters[0]);
  return out;
}

}  // namespace detail

/// Read-only handle on a space whose inverse pairing has been verified
/// against the pairing.
class OperatorContext {
 public:
  explicit OperatorContext(SpacePtr space) : space_(std::move(space)) {
    const auto& g = space_->pairing();
    const auto& w = space_->inverse_pairing();
    const std::size_t n = space_->size();
    ScalarMatrix undo(n, std::vector<Scalar>(n));
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t l = 0; l < n; ++l)
        undo[k][l] = space_->letter_parity(static_cast<Letter>(l)) ? -w[k][l] : w[k][l];
    if (multiply(g, undo) != identity_matrix(n))
      throw std::logic_error("inverse pairing inconsistent with pairing");
  }
  const SpacePtr& space() const { return space_; }

 private:
  SpacePtr space_;
};

/// Odd bracket on S(NCHam(V)), Leibniz-extended over symmetric products; ν
/// and γ are central.
inline Element nc_bracket(const Element& u, const Element& v) {
  detail::require(u, Flavor::cyclic, "nc_bracket");
  u.check_compatible(v);
  const auto& s = u.space();
  Element out(u.space_ptr(), Flavor::cyclic);
  for (const auto& [mu, cu] : u.terms()) {
    const auto par_u = detail::word_parities(mu.words, s);
    const auto pre_u = detail::running(par_u);
    const int tot_u = pre_u.back();
    for (const auto& [mv, cv] : v.terms()) {
      const auto par_v = detail::word_parities(mv.words, s);
      const auto pre_v = detail::running(par_v);
      const Scalar c = cu * cv;
      for (std::size_t i = 0; i < mu.words.size(); ++i)
        for (std::size_t k = 0; k < mv.words.size(); ++k) {
          int e = (par_u[i] & pre_u[i]) ^ (par_v[k] & pre_v[k]) ^ (par_v[k] & (tot_u ^ par_u[i]));
          auto rest = detail::without(mu.words, i);
          auto rest_v = detail::without(mv.words, k);
          rest.insert(rest.end(), rest_v.begin(), rest_v.end());
          detail::bracket_words(mu.words[i].letters, mv.words[k].letters, s,
                                [&](const Scalar& w, RawWord joined) {
                                  detail::add_spliced(out, mu.gamma_power + mv.gamma_power,
                                                      mu.nu_power + mv.nu_power, {std::move(joined)},
                                                      rest, e ? Scalar(-c * w) : Scalar(c * w));
                                });
        }
    }
  }
  return out;
}

/// ∇, extended to S(NCHam) as a derivation; ∇(ν) = 0, empty arcs become ν.
inline Element nc_cobracket(const Element& x) {
  detail::require(x, Flavor::cyclic, "nc_cobracket");
  const auto& s = x.space();
  Element out(x.space_ptr(), Flavor::cyclic);
  for (const auto& [m, c] : x.terms()) {
    const auto par = detail::word_parities(m.words, s);
    const auto pre = detail::running(par);
    for (std::size_t i = 0; i < m.words.size(); ++i) {
      const int e = par[i] & pre[i];
      const auto rest = detail::without(m.words, i);
      detail::cobracket_word(m.words[i].letters, s, [&](const Scalar& w, RawWord a, RawWord b) {
        detail::add_spliced(out, m.gamma_power, m.nu_power, {std::move(a), std::move(b)}, rest,
                            e ? Scalar(-c * w) : Scalar(c * w));
      });
    }
  }
  return out;
}

/// Chevalley-Eilenberg differential: brackets each unordered pair of word
/// factors once and multiplies by the remaining factors.
inline Element ce_delta(const Element& x) {
  detail::require(x, Flavor::cyclic, "ce_delta");
  const auto& s = x.space();
  Element out(x.space_ptr(), Flavor::cyclic);
  for (const auto& [m, c] : x.terms()) {
    const auto par = detail::word_parities(m.words, s);
    const auto pre = detail::running(par);
    for (std::size_t i = 0; i < m.words.size(); ++i)
      for (std::size_t k = i + 1; k < m.words.size(); ++k) {
        const int e = (par[i] & pre[i]) ^ (par[k] & (pre[k] ^ par[i]));
        const auto rest = detail::without(m.words, i, k);
        detail::bracket_words(m.words[i].letters, m.words[k].letters, s,
                              [&](const Scalar& w, RawWord joined) {
                                detail::add_spliced(out, m.gamma_power, m.nu_power,
                                                    {std::move(joined)}, rest,
                                                    e ? Scalar(-c * w) : Scalar(c * w));
                              });
      }
  }
  return out;
}

/// Multiplies every term by γ^k.
inline Element times_gamma(const Element& x, unsigned k = 1) {
  Element out(x.space_ptr(), x.flavor());
  for (const auto& [m, c] : x.terms()) {
    SymMonomial shifted = m;
    shifted.gamma_power += k;
    out.add_term(shifted, c);
  }
  return out;
}

/// Multiplies every term by ν^k.
inline Element times_nu(const Element& x, unsigned k = 1) {
  detail::require(x, Flavor::cyclic, "times_nu");
  Element out(x.space_ptr(), x.flavor());
  for (const auto& [m, c] : x.terms()) {
    SymMonomial shifted = m;
    shifted.nu_power += k;
    out.add_term(shifted, c);
  }
  return out;
}

/// Δ_K = ∇ + γδ.
inline Element delta_K(const Element& x) { return nc_cobracket(x) + times_gamma(ce_delta(x)); }

/// Odd Poisson bracket on Ŝ(V*): the Leibniz extension of ω.
inline Element com_poisson(const Element& f, const Element& g) {
  detail::require(f, Flavor::commutative, "com_poisson");
  f.check_compatible(g);
  const auto& s = f.space();
  Element out(f.space_ptr(), Flavor::commutative);
  for (const auto& [mf, cf] : f.terms()) {
    const auto lf = detail::letters_of(mf.words);
    const auto par_f = detail::word_parities(mf.words, s);
    const auto pre_f = detail::running(par_f);
    const int tot_f = pre_f.back();
    for (const auto& [mg, cg] : g.terms()) {
      const auto lg = detail::letters_of(mg.words);
      const auto par_g = detail::word_parities(mg.words, s);
      const auto pre_g = detail::running(par_g);
      for (std::size_t i = 0; i < lf.size(); ++i)
        for (std::size_t k = 0; k < lg.size(); ++k) {
          const Scalar& w = s.omega(lf[i], lg[k]);
          if (is_zero(w)) continue;
          int e = (par_f[i] & pre_f[i]) ^ (par_g[k] & pre_g[k]) ^ (par_g[k] & (tot_f ^ par_f[i]));
          auto rest = detail::without(mf.words, i);
          auto rest_g = detail::without(mg.words, k);
          rest.insert(rest.end(), rest_g.begin(), rest_g.end());
          Scalar c = cf * cg * w;
          out.add_words(0, 0, std::move(rest), e ? Scalar(-c) : c);
        }
    }
  }
  return out;
}

/// BV Laplacian on Ŝ(V*): contracts every unordered pair of letters with ω.
inline Element bv_laplacian(const Element& f) {
  detail::require(f, Flavor::commutative, "bv_laplacian");
  const auto& s = f.space();
  Element out(f.space_ptr(), Flavor::commutative);
  for (const auto& [m, c] : f.terms()) {
    const auto l = detail::letters_of(m.words);
    const auto par = detail::word_parities(m.words, s);
    const auto pre = detail::running(par);
    for (std::size_t i = 0; i < l.size(); ++i)
      for (std::size_t k = i + 1; k < l.size(); ++k) {
        const Scalar& w = s.omega(l[i], l[k]);
        if (is_zero(w)) continue;
        const int e = (par[i] & pre[i]) ^ (par[k] & (pre[k] ^ par[i]));
        out.add_words(0, 0, detail::without(m.words, i, k), e ? Scalar(-c * w) : Scalar(c * w));
      }
  }
  return out;
}

/// The bracket matching the element's flavor.
inline Element bracket(const Element& a, const Element& b) {
  return a.flavor() == Flavor::cyclic ? nc_bracket(a, b) : com_poisson(a, b);
}

/// d*, the degree +1 derivation induced by the space's letter differential,
/// acting on letters of cyclic words and of polynomials.
inline Element internal_differential(const Element& x) {
  const auto& s = x.space();
  if (!s.has_differential()) throw std::logic_error("space has no internal differential");
  const auto& images = s.differential();
  Element out(x.space_ptr(), x.flavor());
  for (const auto& [m, c] : x.terms()) {
    const auto par = detail::word_parities(m.words, s);
    const auto pre = detail::running(par);
    for (std::size_t i = 0; i < m.words.size(); ++i) {
      const auto& w = m.words[i].letters;
      const auto rest = detail::without(m.words, i);
      // d* passes the earlier words (pre[i]) and letters (inner); moving the
      // changed word, now of parity par[i] + 1, back to the front contributes
      // (par[i] + 1)·pre[i].
      int inner = 0;
      for (std::size_t p = 0; p < w.size(); ++p) {
        const int e = (par[i] & pre[i]) ^ inner;
        for (const auto& [img, coeff] : images[w[p]]) {
          RawWord changed = w;
          changed[p] = img;
          Scalar t = e ? Scalar(-c * coeff) : Scalar(c * coeff);
          if (x.flavor() == Flavor::cyclic) {
            detail::add_spliced(out, m.gamma_power, m.nu_power, {std::move(changed)}, rest, t);
          } else {
            std::vector<CyclicWord> ws{CyclicWord{std::move(changed)}};
            ws.insert(ws.end(), rest.begin(), rest.end());
            out.add_words(0, 0, std::move(ws), t);
          }
        }
        inner ^= s.letter_parity(w[p]);
      }
    }
  }
  return out;
}

/// d(x) + ½{x,x} for a caller-chosen differential d.
template <typename Differential>
Element mc_defect(const Element& x, Differential&& d) {
  Element out = d(x);
  out += Scalar(1, 2) * bracket(x, x);
  return out;
}

/// ½{x,x}: the defect with the zero differential.
inline Element mc_defect(const Element& x) {
  return mc_defect(x, [](const Element& e) { return Element(e.space_ptr(), e.flavor()); });
}

}  // namespace ncbv
