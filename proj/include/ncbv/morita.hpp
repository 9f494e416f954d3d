#pragma once

#include <map>
#include <stdexcept>
#include <vector>

#include "ncbv/element.hpp"

namespace ncbv {

/// σ: S(NCHam(V)) → Ŝ(V*), flattening every cyclic word into a product of its
/// letters. ν and γ are sent to 1.
inline Element sigma(const Element& e) {
  if (e.flavor() != Flavor::cyclic) throw std::invalid_argument("sigma expects a cyclic element");
  Element out(e.space_ptr(), Flavor::commutative);
  for (const auto& [m, c] : e.terms()) {
    std::vector<Letter> letters;
    for (const auto& w : m.words) letters.insert(letters.end(), w.letters.begin(), w.letters.end());
    out.add_product(letters, c);
  }
  return out;
}

/// σ_K: γ^i ν^j (w_1)⋯(w_n) ↦ ħ^{2i+j+n-1} σ(w_1)⋯σ(w_n), returned as a map
/// from the power of ħ to the commutative element carrying it. A pure power
/// ν^j has n = 0 and weight j - 1; the constant 1 would get weight -1.
inline std::map<int, Element> sigma_K(const Element& e) {
  if (e.flavor() != Flavor::cyclic) throw std::invalid_argument("sigma_K expects a cyclic element");
  std::map<int, Element> out;
  for (const auto& [m, c] : e.terms()) {
    const int weight = 2 * static_cast<int>(m.gamma_power) + static_cast<int>(m.nu_power) +
                       static_cast<int>(m.words.size()) - 1;
    std::vector<Letter> letters;
    for (const auto& w : m.words) letters.insert(letters.end(), w.letters.begin(), w.letters.end());
    auto it = out.try_emplace(weight, e.space_ptr(), Flavor::commutative).first;
    it->second.add_product(letters, c);
  }
  for (auto it = out.begin(); it != out.end();)
    it = it->second.is_zero() ? out.erase(it) : std::next(it);
  return out;
}

/// ℳ: S(NCHam(V)) → S(NCHam(V ⊗ Mat_N)). A word ℓ_1⋯ℓ_k becomes
/// Σ_{i_1..i_k} (ℓ_1[i_1,i_2] ℓ_2[i_2,i_3] ⋯ ℓ_k[i_k,i_1]), products of words
/// go to products, ν ↦ Nν and γ ↦ γ.
inline Element morita_M(const Element& e, std::uint32_t n, SpacePtr target = nullptr) {
  if (e.flavor() != Flavor::cyclic) throw std::invalid_argument("morita_M expects a cyclic element");
  if (!target) target = matrix_space(e.space(), n);
  if (target->size() != e.space().size() * n * n) throw std::invalid_argument("target is not V ⊗ Mat_N");
  std::map<CyclicWord, Element> cache;
  auto image = [&](const CyclicWord& w) -> const Element& {
    auto it = cache.find(w);
    if (it != cache.end()) return it->second;
    Element img(target, Flavor::cyclic);
    const std::size_t k = w.size();
    std::vector<std::uint32_t> idx(k, 0);
    RawWord raw(k);
    while (true) {
      for (std::size_t p = 0; p < k; ++p) raw[p] = matrix_letter(w.letters[p], idx[p], idx[(p + 1) % k], n);
      img.add_raw(0, 0, {raw}, 1);
      std::size_t p = 0;
      while (p < k && ++idx[p] == n) idx[p++] = 0;
      if (p == k) break;
    }
    return cache.emplace(w, std::move(img)).first->second;
  };
  Element out(target, Flavor::cyclic);
  for (const auto& [m, c] : e.terms()) {
    Scalar scale = c;
    for (unsigned j = 0; j < m.nu_power; ++j) scale *= n;
    Element term(target, Flavor::cyclic);
    term.add_term(SymMonomial{m.gamma_power, m.nu_power, {}}, scale);
    for (const auto& w : m.words) term = sym_product(term, image(w));
    out += term;
  }
  return out;
}

/// ℛ: S(NCHam(V ⊗ Mat_N)) → S(NCHam(V)), keeping only letters in the (1,1)
/// slot. Linear over ν and γ, so ℛ∘ℳ is the identity on products of words and
/// multiplies ν^j by N^j.
inline Element morita_R(const Element& e, SpacePtr base, std::uint32_t n) {
  if (e.flavor() != Flavor::cyclic) throw std::invalid_argument("morita_R expects a cyclic element");
  if (e.space().size() != base->size() * n * n) throw std::invalid_argument("source is not V ⊗ Mat_N");
  Element out(base, Flavor::cyclic);
  for (const auto& [m, c] : e.terms()) {
    std::vector<RawWord> raw;
    bool corner = true;
    for (const auto& w : m.words) {
      auto& r = raw.emplace_back();
      for (Letter l : w.letters) {
        const auto ml = split_matrix_letter(l, n);
        if (ml.row != 0 || ml.col != 0) corner = false;
        r.push_back(ml.base);
      }
      if (!corner) break;
    }
    if (corner) out.add_raw(m.gamma_power, m.nu_power, raw, c);
  }
  return out;
}

}  // namespace ncbv
