#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "ncbv/ainfinity.hpp"
#include "ncbv/nu_polynomial.hpp"
#include "ncbv/operators.hpp"

namespace ncbv {

/// Exponents (i_1, …, i_k) of the observable ∏ Tr(X^{i_j}), kept sorted.
class MultiIndex {
 public:
  MultiIndex() = default;
  MultiIndex(std::vector<unsigned> exponents) : exponents_(std::move(exponents)) {
    std::sort(exponents_.begin(), exponents_.end());
  }
  MultiIndex(std::initializer_list<unsigned> exponents) : MultiIndex(std::vector<unsigned>(exponents)) {}

  /// Parses "i1,i2,..."; the empty string is the empty index.
  static MultiIndex parse(const std::string& text) {
    std::vector<unsigned> out;
    std::size_t pos = 0;
    while (pos < text.size()) {
      const std::size_t comma = std::min(text.find(',', pos), text.size());
      const std::string part = text.substr(pos, comma - pos);
      if (part.empty() || part.find_first_not_of("0123456789") != std::string::npos)
        throw std::invalid_argument("bad multi-index entry '" + part + "'");
      out.push_back(static_cast<unsigned>(std::stoul(part)));
      pos = comma + 1;
      if (comma + 1 == text.size()) throw std::invalid_argument("trailing comma in multi-index");
    }
    return MultiIndex(std::move(out));
  }

  const std::vector<unsigned>& exponents() const { return exponents_; }
  std::size_t size() const { return exponents_.size(); }
  unsigned total() const {
    unsigned t = 0;
    for (unsigned e : exponents_) t += e;
    return t;
  }
  unsigned zeros() const {
    return static_cast<unsigned>(std::count(exponents_.begin(), exponents_.end(), 0u));
  }
  MultiIndex without_zeros() const {
    std::vector<unsigned> out;
    for (unsigned e : exponents_)
      if (e) out.push_back(e);
    return MultiIndex(std::move(out));
  }

  friend auto operator<=>(const MultiIndex&, const MultiIndex&) = default;
  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;

 private:
  std::vector<unsigned> exponents_;
};

inline std::string to_string(const MultiIndex& idx) {
  std::string out;
  for (unsigned e : idx.exponents()) {
    if (!out.empty()) out += ",";
    out += std::to_string(e);
  }
  return out;
}

/// All multi-indices of positive exponents with the given total.
inline std::vector<MultiIndex> partitions(unsigned total) {
  std::vector<MultiIndex> out;
  std::vector<unsigned> cur;
  auto rec = [&](auto&& self, unsigned left, unsigned max_part) -> void {
    if (left == 0) {
      out.emplace_back(cur);
      return;
    }
    for (unsigned p = std::min(left, max_part); p >= 1; --p) {
      cur.push_back(p);
      self(self, left - p, p);
      cur.pop_back();
    }
  };
  rec(rec, total, total);
  return out;
}

enum class Pivot { leftmost, largest, random };

inline const char* pivot_name(Pivot p) {
  switch (p) {
    case Pivot::leftmost: return "leftmost";
    case Pivot::largest: return "largest";
    default: return "random";
  }
}

/// Reduces (x^{i_1})⋯(x^{i_k}) ∈ S(NCHam(Σ𝒜)) to its cohomology class
/// p(ν) ∈ ℚ[ν] for the differential d* + δ + ∇. A pivot factor (x^i) is
/// rewritten as -d*((x^{i-1}ξ)·rest) and replaced by (δ + ∇)((x^{i-1}ξ)·rest).
/// Results are memoized per reducer by the sorted exponents.
class GueReducer {
 public:
  explicit GueReducer(Pivot pivot = Pivot::leftmost, std::uint64_t seed = 0)
      : pivot_(pivot), rng_(seed), space_(sigma_space_with_differential(algebra_A())) {
    x_ = *space_->find("x");
    xi_ = *space_->find("ξ");
  }

  const SpacePtr& space() const { return space_; }
  std::size_t cache_size() const { return memo_.size(); }
  std::size_t steps() const { return steps_; }

  NuPolynomial reduce(const MultiIndex& idx) {
    return reduce_positive(idx.without_zeros()).shifted(idx.zeros());
  }

  /// The cocycle (x^{i_1})⋯(x^{i_k}) as an element, exponent 0 giving ν.
  Element cocycle(const MultiIndex& idx) const {
    std::vector<RawWord> raw;
    for (unsigned e : idx.exponents()) raw.emplace_back(e, x_);
    return Element::words(space_, raw);
  }

  /// One rewriting step at factor `pos` of a zero-free index: the element
  /// (δ + ∇)((x^{i-1}ξ)·rest) cohomologous to the cocycle.
  Element step(const MultiIndex& idx, std::size_t pos) const {
    const auto& ex = idx.exponents();
    if (pos >= ex.size() || ex[pos] == 0) throw std::invalid_argument("pivot must be a positive exponent");
    std::vector<RawWord> raw;
    RawWord head(ex[pos] - 1, x_);
    head.push_back(xi_);
    raw.push_back(std::move(head));
    for (std::size_t j = 0; j < ex.size(); ++j)
      if (j != pos) raw.emplace_back(ex[j], x_);
    const Element y = Element::words(space_, raw);
    return ce_delta(y) + nc_cobracket(y);
  }

 private:
  std::size_t choose(const MultiIndex& idx) {
    const auto& ex = idx.exponents();
    switch (pivot_) {
      case Pivot::leftmost: return 0;
      case Pivot::largest: return ex.size() - 1;
      default: return std::uniform_int_distribution<std::size_t>(0, ex.size() - 1)(rng_);
    }
  }

  NuPolynomial reduce_positive(const MultiIndex& idx) {
    if (idx.size() == 0) return NuPolynomial::constant(1);
    if (auto it = memo_.find(idx); it != memo_.end()) return it->second;
    ++steps_;
    NuPolynomial out;
    const Element next_terms = step(idx, choose(idx));
    for (const auto& [m, c] : next_terms.terms()) {
      std::vector<unsigned> next;
      for (const auto& w : m.words) {
        if (std::any_of(w.letters.begin(), w.letters.end(), [&](Letter l) { return l != x_; }))
          throw std::logic_error("reduction left a ξ behind");
        next.push_back(static_cast<unsigned>(w.size()));
      }
      out += c * reduce_positive(MultiIndex(std::move(next))).shifted(m.nu_power);
    }
    memo_.emplace(idx, out);
    return out;
  }

  Pivot pivot_;
  std::mt19937_64 rng_;
  SpacePtr space_;
  Letter x_ = 0, xi_ = 1;
  std::map<MultiIndex, NuPolynomial> memo_;
  std::size_t steps_ = 0;
};

/// p_{idx}(ν) with the default pivot and a fresh cache.
inline NuPolynomial reduce_to_polynomial(const MultiIndex& idx) { return GueReducer().reduce(idx); }

}  // namespace ncbv
