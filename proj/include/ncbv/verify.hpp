#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "ncbv/ainfinity.hpp"
#include "ncbv/frobenius.hpp"
#include "ncbv/gue.hpp"
#include "ncbv/harer_zagier.hpp"
#include "ncbv/monte_carlo.hpp"
#include "ncbv/morita.hpp"
#include "ncbv/multitrace.hpp"
#include "ncbv/operators.hpp"
#include "ncbv/random_elements.hpp"
#include "ncbv/wick.hpp"

namespace ncbv {

/// Outcome of one verification check.
struct CheckResult {
  CheckResult(std::string name_, std::string scale_) : name(std::move(name_)), scale(std::move(scale_)) {}

  std::string name;
  std::string scale;
  std::uint64_t cases = 0;
  bool passed = true;
  std::string counterexample;

  void fail(std::string what) {
    if (passed) counterexample = std::move(what);
    passed = false;
  }
};

inline nlohmann::ordered_json to_json(const CheckResult& r) {
  nlohmann::ordered_json j{{"name", r.name}, {"scale", r.scale}, {"cases", r.cases}, {"passed", r.passed}};
  j["counterexample"] = r.passed ? nlohmann::ordered_json(nullptr) : nlohmann::ordered_json(r.counterexample);
  return j;
}

using Reducer = std::function<NuPolynomial(const MultiIndex&)>;

/// The default engine behind a shared cache.
inline Reducer default_reducer(Pivot pivot = Pivot::leftmost, std::uint64_t seed = 0) {
  auto r = std::make_shared<GueReducer>(pivot, seed);
  return [r](const MultiIndex& idx) { return r->reduce(idx); };
}

inline NuPolynomial nu_poly(std::initializer_list<std::pair<unsigned, long>> terms) {
  NuPolynomial p;
  for (const auto& [e, c] : terms) p.add(e, c);
  return p;
}

/// The polynomials computed by hand for the algebra 𝒜.
inline std::vector<std::pair<MultiIndex, NuPolynomial>> golden_table() {
  return {
      {{2}, nu_poly({{2, 1}})},
      {{4}, nu_poly({{3, 2}, {1, 1}})},
      {{6}, nu_poly({{4, 5}, {2, 10}})},
      {{8}, nu_poly({{5, 14}, {3, 70}, {1, 21}})},
      {{10}, nu_poly({{6, 42}, {4, 420}, {2, 483}})},
      {{1, 1}, nu_poly({{1, 1}})},
      {{1, 3}, nu_poly({{2, 3}})},
      {{2, 2}, nu_poly({{4, 1}, {2, 2}})},
      {{1, 5}, nu_poly({{3, 10}, {1, 5}})},
      {{2, 4}, nu_poly({{5, 2}, {3, 9}, {1, 4}})},
      {{3, 3}, nu_poly({{3, 12}, {1, 3}})},
      {{1, 7}, nu_poly({{4, 35}, {2, 70}})},
      {{2, 6}, nu_poly({{6, 5}, {4, 40}, {2, 60}})},
      {{3, 5}, nu_poly({{4, 45}, {2, 60}})},
      {{4, 4}, nu_poly({{6, 4}, {4, 40}, {2, 61}})},
  };
}

/// Describes the first coefficient where two polynomials differ.
inline std::string first_difference(const std::string& label, const NuPolynomial& expected,
                                    const NuPolynomial& got) {
  const int top = std::max(expected.degree(), got.degree());
  for (int e = top; e >= 0; --e) {
    const auto u = static_cast<unsigned>(e);
    if (expected.coefficient(u) != got.coefficient(u))
      return label + ": coefficient of ν^" + std::to_string(e) + " is " + got.coefficient(u).get_str() +
             ", expected " + expected.coefficient(u).get_str() + " (got " + to_string(got) + ", expected " +
             to_string(expected) + ")";
  }
  return label + ": equal";
}

inline CheckResult check_golden_table(const Reducer& reduce) {
  CheckResult r{"golden_table", "15 polynomials"};
  for (const auto& [idx, expected] : golden_table()) {
    ++r.cases;
    const NuPolynomial got = reduce(idx);
    if (got != expected) r.fail(first_difference("p_{" + to_string(idx) + "}", expected, got));
  }
  return r;
}

/// Every multi-index of positive exponents with total at most `cap`.
inline std::vector<MultiIndex> indices_up_to(unsigned cap) {
  std::vector<MultiIndex> out;
  for (unsigned t = 0; t <= cap; ++t)
    for (auto& idx : partitions(t)) out.push_back(std::move(idx));
  return out;
}

inline CheckResult check_oracle_equivalence(const Reducer& reduce, unsigned cap = 12) {
  CheckResult r{"oracle_equivalence", "all multi-indices with total ≤ " + std::to_string(cap)};
  for (const auto& idx : indices_up_to(cap)) {
    ++r.cases;
    const NuPolynomial expected = wick_oracle(idx, std::max(cap, 16u));
    const NuPolynomial got = reduce(idx);
    if (got != expected) r.fail(first_difference("p_{" + to_string(idx) + "} vs Wick", expected, got));
  }
  // Exponent 0 is a factor ν on both sides.
  for (const MultiIndex& idx : {MultiIndex{0}, MultiIndex{0, 2}, MultiIndex{0, 0, 1, 1}}) {
    ++r.cases;
    const NuPolynomial expected = wick_oracle(idx), got = reduce(idx);
    if (got != expected) r.fail(first_difference("p_{" + to_string(idx) + "} vs Wick", expected, got));
  }
  return r;
}

inline CheckResult check_harer_zagier(const Reducer& reduce, unsigned k_recurrence = 15, unsigned k_closed = 10,
                                      unsigned n_closed = 6) {
  CheckResult r{"harer_zagier", "recurrence k ≤ " + std::to_string(k_recurrence) + ", closed form k ≤ " +
                                    std::to_string(k_closed) + " and N ≤ " + std::to_string(n_closed) +
                                    ", Catalan k ≤ " + std::to_string(k_recurrence)};
  const unsigned k_max = std::max(k_recurrence, k_closed);
  std::vector<NuPolynomial> p(k_max + 1);
  p[0] = NuPolynomial::monomial(1);
  for (unsigned k = 1; k <= k_max; ++k) p[k] = reduce({2 * k});
  for (unsigned k = 2; k <= k_recurrence; ++k) {
    ++r.cases;
    const NuPolynomial res = harer_zagier_residual(k, p[k], p[k - 1], p[k - 2]);
    if (!res.is_zero()) r.fail("recurrence fails at k = " + std::to_string(k) + ": residual " + to_string(res));
  }
  for (unsigned k = 1; k <= k_closed; ++k)
    for (unsigned n = 1; n <= n_closed; ++n) {
      ++r.cases;
      const Scalar got = p[k].evaluate(n), expected = harer_zagier_closed(k, n);
      if (got != expected)
        r.fail("p_" + std::to_string(2 * k) + "(" + std::to_string(n) + ") = " + got.get_str() +
               ", closed form gives " + expected.get_str());
    }
  for (unsigned k = 1; k <= k_recurrence; ++k) {
    ++r.cases;
    if (p[k].degree() != static_cast<int>(k + 1) || p[k].leading_coefficient() != Scalar(catalan(k)))
      r.fail("leading term of p_" + std::to_string(2 * k) + " is " + p[k].leading_coefficient().get_str() + "ν^" +
             std::to_string(p[k].degree()) + ", expected Catalan " + catalan(k).get_str());
    if (k >= 2 && sgn(p[k].coefficient(k - 1)) <= 0)
      r.fail("coefficient of ν^" + std::to_string(k - 1) + " in p_" + std::to_string(2 * k) + " is not positive");
  }
  return r;
}

inline CheckResult check_multitrace_sum(const Reducer& reduce, unsigned k_max = 6, unsigned n_ones = 8) {
  CheckResult r{"multitrace_sum", "k ≤ " + std::to_string(k_max) + ", 2n ones with n ≤ " + std::to_string(n_ones)};
  for (unsigned k = 1; k <= k_max; ++k) {
    ++r.cases;
    NuPolynomial lhs;
    for (unsigned i = 1; i <= 2 * k - 1; ++i) lhs += reduce({i, 2 * k - i});
    const NuPolynomial rhs = reduce({2 * k + 2}) - Scalar(2) * reduce({2 * k}).shifted(1);
    if (lhs != rhs) r.fail(first_difference("sum relation at k = " + std::to_string(k), rhs, lhs));
  }
  for (unsigned n = 1; n <= n_ones; ++n) {
    ++r.cases;
    const NuPolynomial got = reduce(MultiIndex(std::vector<unsigned>(2 * n, 1)));
    const NuPolynomial expected = NuPolynomial::monomial(n, Scalar(double_factorial_odd(n)));
    if (got != expected) r.fail(first_difference(std::to_string(2 * n) + " ones", expected, got));
  }
  return r;
}

inline CheckResult check_confluence(unsigned cap = 12, std::uint64_t seed = 1) {
  CheckResult r{"confluence", "leftmost, largest and random pivots on all totals ≤ " + std::to_string(cap)};
  GueReducer left(Pivot::leftmost), large(Pivot::largest), random(Pivot::random, seed);
  for (const auto& idx : indices_up_to(cap)) {
    ++r.cases;
    const NuPolynomial a = left.reduce(idx), b = large.reduce(idx), c = random.reduce(idx);
    if (a != b) r.fail(first_difference("p_{" + to_string(idx) + "} largest pivot", a, b));
    if (a != c) r.fail(first_difference("p_{" + to_string(idx) + "} random pivot", a, c));
  }
  return r;
}

inline CheckResult check_monte_carlo(const Reducer& reduce, std::uint64_t samples = 200000, std::uint64_t seed = 20240,
                                     unsigned threads = 0) {
  CheckResult r{"monte_carlo", std::to_string(samples) + " samples per index, N ∈ {2,3}, 5σ band"};
  const std::vector<MultiIndex> panel{{2}, {4}, {1, 3}, {2, 2}, {1, 1, 1, 1}};
  std::uint64_t stream = 0;
  for (const auto& idx : panel)
    for (unsigned n : {2u, 3u}) {
      ++r.cases;
      const double exact = reduce(idx).evaluate(n).get_d();
      const auto mc = monte_carlo_moment(idx, n, samples, seed + stream++, threads);
      const double z = (mc.estimate - exact) / mc.standard_error;
      if (!(std::abs(z) <= 5.0)) {
        std::ostringstream os;
        os << "idx " << to_string(idx) << ", N = " << n << ": estimate " << mc.estimate << " ± " << mc.standard_error
           << " vs exact " << exact << " (z = " << z << ")";
        r.fail(os.str());
      }
    }
  return r;
}

namespace detail {

/// Runs `cases` seeded cases; each returns a counterexample or nothing.
template <typename Case>
CheckResult run_cases(std::string name, std::uint64_t cases, std::uint64_t seed, Case&& one) {
  CheckResult r{std::move(name), std::to_string(cases) + " random cases, seed " + std::to_string(seed)};
  std::mt19937_64 rng(seed);
  for (std::uint64_t i = 0; i < cases; ++i) {
    ++r.cases;
    if (auto bad = one(rng, i)) r.fail("case " + std::to_string(i) + ": " + *bad);
  }
  return r;
}

inline int sign_of(int exponent) { return (exponent & 1) ? -1 : 1; }

inline std::optional<std::string> nonzero(const Element& e, const std::string& what) {
  if (e.is_zero()) return std::nullopt;
  return what + " = " + to_string(e);
}

inline Element total_differential(const Element& e) {
  return internal_differential(e) + ce_delta(e) + nc_cobracket(e);
}

}  // namespace detail

/// The randomized structural suites: bracket identities, squares of the
/// differentials, σ and ℳ compatibility, encodings and OTFT tensors.
inline std::vector<CheckResult> structural_suites(std::uint64_t cases = 200, std::uint64_t seed = 7) {
  using detail::nonzero;
  using detail::run_cases;
  using detail::sign_of;
  std::vector<CheckResult> out;

  out.push_back(run_cases("jacobi_nc_bracket", cases, seed + 1, [](auto& rng, std::uint64_t i) {
    const int pa = i % 2, pb = (i / 2) % 2, pc = (i / 4) % 2;
    auto s = random_space(rng);
    ElementShape shape{2, 2, 3, 1, 1};
    auto a = random_cyclic(rng, s, pa, shape), b = random_cyclic(rng, s, pb, shape), c = random_cyclic(rng, s, pc, shape);
    return nonzero(nc_bracket(a, nc_bracket(b, c)) + sign_of(pa) * nc_bracket(nc_bracket(a, b), c) -
                       sign_of((pa + 1) * (pb + 1)) * nc_bracket(b, nc_bracket(a, c)),
                   "Jacobi defect");
  }));
  out.push_back(run_cases("jacobi_com_poisson", cases, seed + 2, [](auto& rng, std::uint64_t i) {
    const int pa = i % 2, pb = (i / 2) % 2, pc = (i / 4) % 2;
    auto s = random_space(rng);
    auto a = random_polynomial(rng, s, pa), b = random_polynomial(rng, s, pb), c = random_polynomial(rng, s, pc);
    return nonzero(com_poisson(a, com_poisson(b, c)) + sign_of(pa) * com_poisson(com_poisson(a, b), c) -
                       sign_of((pa + 1) * (pb + 1)) * com_poisson(b, com_poisson(a, c)),
                   "Jacobi defect");
  }));
  out.push_back(run_cases("nabla_squared", cases, seed + 3, [](auto& rng, std::uint64_t i) {
    auto s = random_space(rng);
    return nonzero(nc_cobracket(nc_cobracket(random_cyclic(rng, s, i % 2, {3, 3, 4, 1, 1}))), "∇²");
  }));
  out.push_back(run_cases("delta_squared", cases, seed + 4, [](auto& rng, std::uint64_t i) {
    auto s = random_space(rng);
    return nonzero(ce_delta(ce_delta(random_cyclic(rng, s, i % 2, {3, 3, 3, 1, 1}))), "δ²");
  }));
  out.push_back(run_cases("bv_laplacian_squared", cases, seed + 5, [](auto& rng, std::uint64_t i) {
    auto s = random_space(rng);
    return nonzero(bv_laplacian(bv_laplacian(random_polynomial(rng, s, i % 2, 3, 5))), "Δ²");
  }));
  out.push_back(run_cases("delta_K_squared", cases, seed + 6, [](auto& rng, std::uint64_t i) {
    auto s = random_space(rng);
    return nonzero(delta_K(delta_K(random_cyclic(rng, s, i % 2, {3, 3, 4, 1, 1}))), "Δ_K²");
  }));
  out.push_back(run_cases("total_differential_squared", cases, seed + 7, [](auto& rng, std::uint64_t i) {
    static const SpacePtr s = sigma_space_with_differential(algebra_A());
    auto e = random_cyclic(rng, s, i % 2, {3, 3, 4, 1, 0});
    return nonzero(detail::total_differential(detail::total_differential(e)), "(d*+δ+∇)²");
  }));
  out.push_back(run_cases("bv_identity", cases, seed + 8, [](auto& rng, std::uint64_t i) {
    const int pf = i % 2;
    auto s = random_space(rng);
    auto f = random_polynomial(rng, s, pf), g = random_polynomial(rng, s, (i / 2) % 2);
    return nonzero(bv_laplacian(f * g) - bv_laplacian(f) * g - sign_of(pf) * (f * bv_laplacian(g)) - com_poisson(f, g),
                   "Δ(fg) defect");
  }));
  out.push_back(run_cases("lie_bialgebra_compatibility", cases, seed + 9, [](auto& rng, std::uint64_t i) {
    const int pu = i % 2;
    auto s = random_space(rng);
    ElementShape one_word{2, 1, 4, 0, 0};
    auto u = random_cyclic(rng, s, pu, one_word), v = random_cyclic(rng, s, (i / 2) % 2, one_word);
    return nonzero(nc_cobracket(nc_bracket(u, v)) + nc_bracket(nc_cobracket(u), v) +
                       sign_of(pu) * nc_bracket(u, nc_cobracket(v)),
                   "cocycle defect");
  }));
  out.push_back(run_cases("sigma_bracket_homomorphism", cases, seed + 10, [](auto& rng, std::uint64_t i) {
    auto s = random_space(rng);
    ElementShape shape{3, 2, 3, 1, 1};
    auto u = random_cyclic(rng, s, i % 2, shape), v = random_cyclic(rng, s, (i / 2) % 2, shape);
    return nonzero(sigma(nc_bracket(u, v)) - com_poisson(sigma(u), sigma(v)), "σ{u,v} - {σu,σv}");
  }));
  out.push_back(run_cases("morita_bracket_homomorphism", cases, seed + 11, [](auto& rng, std::uint64_t i) {
    auto s = random_space(rng, 1, 2);
    ElementShape shape{2, 2, 3, 1, 0};
    auto u = random_cyclic(rng, s, i % 2, shape), v = random_cyclic(rng, s, (i / 2) % 2, shape);
    const std::uint32_t n = 2 + i % 2;
    return nonzero(morita_M(nc_bracket(u, v), n) - nc_bracket(morita_M(u, n), morita_M(v, n)), "ℳ{u,v} - {ℳu,ℳv}");
  }));
  out.push_back(run_cases("morita_restriction_inverse", cases, seed + 12, [](auto& rng, std::uint64_t i) {
    auto s = random_space(rng);
    auto e = random_cyclic(rng, s, i % 2, {3, 2, 3, 0, 1});
    const std::uint32_t n = 2 + i % 2;
    return nonzero(morita_R(morita_M(e, n), s, n) - e, "ℛℳ(e) - e");
  }));
  out.push_back(run_cases("morita_intertwines_cobracket", cases, seed + 13, [](auto& rng, std::uint64_t i) {
    auto s = random_space(rng, 1, 2);
    auto u = random_cyclic(rng, s, i % 2, {2, 2, 3, 1, 0});
    const std::uint32_t n = 2 + i % 2;
    return nonzero(morita_M(nc_cobracket(u), n) - nc_cobracket(morita_M(u, n)), "ℳ∇u - ∇ℳu");
  }));

  CheckResult enc{"encodings", "σ(m̃) and {m̃,m̃} for 𝒜 and Mat_2(𝒜)"};
  for (const auto& a : {algebra_A(), matrix_ainfinity(algebra_A(), 2)}) {
    enc.cases += 2;
    const Element m = encode_ainfinity(a);
    if (sigma(m) != commutator_element(a))
      enc.fail("σ(m̃) = " + to_string(sigma(m)) + " but the commutator element is " + to_string(commutator_element(a)));
    if (!mc_defect(m).is_zero()) enc.fail("{m̃,m̃} = " + to_string(mc_defect(m)));
  }
  enc.cases += 2;
  if (morita_M(encode_ainfinity(algebra_A()), 2) != encode_ainfinity(matrix_ainfinity(algebra_A(), 2)))
    enc.fail("ℳ(m̃_𝒜) differs from m̃ of Mat_2(𝒜)");
  if (morita_R(encode_ainfinity(matrix_ainfinity(algebra_A(), 2)), algebra_A().sigma_space(), 2) !=
      encode_ainfinity(algebra_A()))
    enc.fail("ℛ(m̃ of Mat_2(𝒜)) differs from m̃_𝒜");
  out.push_back(enc);

  out.push_back(run_cases("otft_matrix_traces", cases, seed + 14, [](auto& rng, std::uint64_t i) -> std::optional<std::string> {
    const std::uint32_t n = 2 + i % 2;
    const FrobeniusAlgebra f = frobenius_matrix(n);
    std::uniform_int_distribution<int> entry(-3, 3);
    std::vector<std::vector<Vector>> bs(1 + i % 3);
    Scalar expected = 1;
    for (auto& b : bs) {
      b.resize(1 + rng() % 3);
      DenseMatrix<Scalar> prod = DenseMatrix<Scalar>::identity(n);
      for (auto& c : b) {
        c.resize(n * n);
        DenseMatrix<Scalar> m(n, n);
        for (std::uint32_t k = 0; k < n * n; ++k) m(k / n, k % n) = c[k] = entry(rng);
        prod = prod * m;
      }
      expected *= prod.trace();
    }
    const unsigned g = rng() % 3, b = rng() % 3;
    for (unsigned k = 0; k < b; ++k) expected *= n;
    const std::size_t p = rng() % bs.size(), q = rng() % bs[p].size();
    const Scalar got = otft_mu(f, g, b, bs, p, q);
    if (got == expected) return std::nullopt;
    return "μ^{" + std::to_string(g) + "," + std::to_string(b) + "} on Mat_" + std::to_string(n) + " is " +
           got.get_str() + ", expected " + expected.get_str();
  }));
  out.push_back(run_cases("otft_placement_independence", cases, seed + 15,
                          [](auto& rng, std::uint64_t i) -> std::optional<std::string> {
    FrobeniusAlgebra f = random_frobenius(rng);
    while (f.dim() > 4) f = random_frobenius(rng);
    std::uniform_int_distribution<int> entry(-3, 3);
    std::vector<std::vector<Vector>> bs(1 + i % 2);
    for (auto& b : bs) {
      b.resize(1 + rng() % 3);
      for (auto& c : b) {
        c.resize(f.dim());
        for (auto& x : c) x = entry(rng);
      }
    }
    const unsigned g = rng() % 2, b = rng() % 3;
    const Scalar first = otft_mu(f, g, b, bs);
    for (std::size_t p = 0; p < bs.size(); ++p)
      for (std::size_t q = 0; q < bs[p].size(); ++q)
        if (otft_mu(f, g, b, bs, p, q) != first)
          return "placement (" + std::to_string(p) + "," + std::to_string(q) + ") changes μ^{" + std::to_string(g) +
                 "," + std::to_string(b) + "} on a " + std::to_string(f.dim()) + "-dimensional algebra";
    return std::nullopt;
  }));
  return out;
}

struct VerifyConfig {
  unsigned degree_cap = 12;
  std::uint64_t structural_cases = 200;
  std::uint64_t seed = 7;
};

/// The checks behind `ncbv verify`.
inline std::vector<CheckResult> run_verify(const VerifyConfig& cfg, const Reducer& reduce) {
  std::vector<CheckResult> out;
  out.push_back(check_golden_table(reduce));
  out.push_back(check_oracle_equivalence(reduce, cfg.degree_cap));
  out.push_back(check_harer_zagier(reduce));
  out.push_back(check_multitrace_sum(reduce));
  out.push_back(check_confluence(cfg.degree_cap, cfg.seed));
  for (auto& r : structural_suites(cfg.structural_cases, cfg.seed)) out.push_back(std::move(r));
  return out;
}

}  // namespace ncbv
