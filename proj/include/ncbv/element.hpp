#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ncbv/monomial.hpp"

namespace ncbv {

/// Which algebra an Element lives in: S(NCHam(V)) with γ and ν, or the
/// graded-commutative polynomial algebra Ŝ(V*).
enum class Flavor { cyclic, commutative };

inline const char* flavor_name(Flavor f) { return f == Flavor::cyclic ? "cyclic" : "commutative"; }

/// A raw (not yet canonical) letter sequence; empty means ν.
using RawWord = std::vector<Letter>;

/// Finite ℚ-linear combination of canonical monomials. Zero coefficients are
/// never stored.
class Element {
 public:
  using Terms = std::map<SymMonomial, Scalar>;

  Element(SpacePtr space, Flavor flavor) : space_(std::move(space)), flavor_(flavor) {
    if (!space_) throw std::invalid_argument("element needs a space");
  }

  static Element constant(SpacePtr space, Flavor flavor, const Scalar& c) {
    Element e(std::move(space), flavor);
    e.add_term(SymMonomial{}, c);
    return e;
  }

  /// c·ν^j in S(NCHam).
  static Element nu(SpacePtr space, unsigned power = 1, const Scalar& c = 1) {
    Element e(std::move(space), Flavor::cyclic);
    e.add_term(SymMonomial{0, power, {}}, c);
    return e;
  }

  /// c·(w₁)(w₂)⋯ from raw letter sequences; an empty sequence contributes ν.
  static Element words(SpacePtr space, const std::vector<RawWord>& raw, const Scalar& c = 1,
                       unsigned gamma_power = 0, unsigned nu_power = 0) {
    Element e(std::move(space), Flavor::cyclic);
    e.add_raw(gamma_power, nu_power, raw, c);
    return e;
  }

  static Element word(SpacePtr space, const RawWord& raw, const Scalar& c = 1) {
    return words(std::move(space), {raw}, c);
  }

  /// c·a₁a₂⋯ in Ŝ(V*).
  static Element polynomial(SpacePtr space, const std::vector<Letter>& letters, const Scalar& c = 1) {
    Element e(std::move(space), Flavor::commutative);
    e.add_product(letters, c);
    return e;
  }

  const SpacePtr& space_ptr() const { return space_; }
  const GradedSymplecticSpace& space() const { return *space_; }
  Flavor flavor() const { return flavor_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  Scalar coefficient(const SymMonomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Scalar(0) : it->second;
  }

  /// Adds an already canonical monomial.
  void add_term(const SymMonomial& m, Scalar c) {
    if (ncbv::is_zero(c)) return;
    c.canonicalize();
    auto [it, inserted] = terms_.try_emplace(m, std::move(c));
    if (!inserted) {
      it->second += c;
      if (ncbv::is_zero(it->second)) terms_.erase(it);
    }
  }

  /// Canonicalizes γ^i ν^j (raw₁)(raw₂)⋯ and adds it with coefficient c.
  void add_raw(unsigned gamma_power, unsigned nu_power, const std::vector<RawWord>& raw,
               const Scalar& c) {
    if (ncbv::is_zero(c)) return;
    if (flavor_ != Flavor::cyclic) throw std::logic_error("add_raw on a commutative element");
    std::vector<CyclicWord> ws;
    ws.reserve(raw.size());
    int sign = 1;
    for (const auto& r : raw) {
      if (r.empty()) {
        ++nu_power;
        continue;
      }
      auto cw = canonicalize_cyclic(r, *space_);
      if (!cw) return;
      sign *= cw->second;
      ws.push_back(std::move(cw->first));
    }
    add_words(gamma_power, nu_power, std::move(ws), sign > 0 ? c : Scalar(-c));
  }

  /// Adds c·γ^i ν^j times the product of already canonical words.
  void add_words(unsigned gamma_power, unsigned nu_power, std::vector<CyclicWord> ws,
                 const Scalar& c) {
    if (ncbv::is_zero(c)) return;
    auto m = canonicalize_monomial(gamma_power, nu_power, std::move(ws), *space_);
    if (!m) return;
    add_term(m->first, m->second > 0 ? c : Scalar(-c));
  }

  /// Adds c·a₁⋯a_k on the commutative side.
  void add_product(const std::vector<Letter>& letters, const Scalar& c) {
    if (flavor_ != Flavor::commutative) throw std::logic_error("add_product on a cyclic element");
    std::vector<CyclicWord> ws;
    ws.reserve(letters.size());
    for (Letter l : letters) ws.push_back(CyclicWord{{space_->check_letter(l)}});
    add_words(0, 0, std::move(ws), c);
  }

  /// Every term has the same parity.
  bool is_homogeneous() const {
    int p = -1;
    for (const auto& [m, c] : terms_) {
      int q = monomial_parity(m, *space_);
      if (p >= 0 && q != p) return false;
      p = q;
    }
    return true;
  }

  /// Parity of a homogeneous element (0 for zero). Throws otherwise.
  int parity() const {
    if (!is_homogeneous()) throw std::logic_error("parity of an inhomogeneous element");
    return terms_.empty() ? 0 : monomial_parity(terms_.begin()->first, *space_);
  }

  Element& operator+=(const Element& o) {
    check_compatible(o);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  Element& operator-=(const Element& o) {
    check_compatible(o);
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  Element& operator*=(const Scalar& s) {
    if (ncbv::is_zero(s)) {
      terms_.clear();
      return *this;
    }
    for (auto& [m, c] : terms_) c *= s;
    return *this;
  }

  friend Element operator+(Element a, const Element& b) { return a += b; }
  friend Element operator-(Element a, const Element& b) { return a -= b; }
  friend Element operator-(Element a) { return a *= Scalar(-1); }
  friend Element operator*(const Scalar& s, Element a) { return a *= s; }

  friend bool operator==(const Element& a, const Element& b) {
    return a.flavor_ == b.flavor_ && same_space(a.space_, b.space_) && a.terms_ == b.terms_;
  }

  void check_compatible(const Element& o) const {
    if (flavor_ != o.flavor_)
      throw std::invalid_argument(std::string("mixed flavors: ") + flavor_name(flavor_) + " vs " +
                                  flavor_name(o.flavor_));
    if (!same_space(space_, o.space_)) throw std::invalid_argument("elements over different spaces");
  }

 private:
  SpacePtr space_;
  Flavor flavor_;
  Terms terms_;
};

inline Element add(const Element& a, const Element& b) { return a + b; }
inline Element scale(const Scalar& s, const Element& a) { return s * a; }

/// Graded-commutative product in S(NCHam) or Ŝ(V*).
inline Element sym_product(const Element& a, const Element& b) {
  a.check_compatible(b);
  Element out(a.space_ptr(), a.flavor());
  for (const auto& [ma, ca] : a.terms())
    for (const auto& [mb, cb] : b.terms()) {
      std::vector<CyclicWord> ws = ma.words;
      ws.insert(ws.end(), mb.words.begin(), mb.words.end());
      out.add_words(ma.gamma_power + mb.gamma_power, ma.nu_power + mb.nu_power, std::move(ws),
                    ca * cb);
    }
  return out;
}

inline Element operator*(const Element& a, const Element& b) { return sym_product(a, b); }

/// Human-readable rendering, e.g. "2 ν (x x) + (x)(x)".
inline std::string to_string(const Element& e) {
  if (e.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : e.terms()) {
    std::string coeff = c.get_str();
    if (!first) {
      if (sgn(c) < 0) {
        out += " - ";
        coeff = Scalar(-c).get_str();
      } else {
        out += " + ";
      }
    }
    first = false;
    std::string body;
    if (m.gamma_power) body += "γ^" + std::to_string(m.gamma_power) + " ";
    if (m.nu_power) body += "ν^" + std::to_string(m.nu_power) + " ";
    for (const auto& w : m.words) {
      if (e.flavor() == Flavor::commutative) {
        body += e.space().name(w.letters[0]) + " ";
        continue;
      }
      body += "(";
      for (std::size_t i = 0; i < w.letters.size(); ++i) {
        if (i) body += " ";
        body += e.space().name(w.letters[i]);
      }
      body += ")";
    }
    if (!body.empty() && body.back() == ' ') body.pop_back();
    if (body.empty()) {
      out += coeff;
    } else if (coeff == "1") {
      out += body;
    } else if (coeff == "-1") {
      out += "-" + body;
    } else {
      out += coeff + " " + body;
    }
  }
  return out;
}

}  // namespace ncbv
