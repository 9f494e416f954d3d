#pragma once

#include <atomic>
#include <cstdint>
#include <stdexcept>
#include <thread>
#include <vector>

#include "ncbv/concurrency.hpp"
#include "ncbv/gue.hpp"
#include "ncbv/nu_polynomial.hpp"

namespace ncbv {

namespace detail {

/// Counts fixed-point-free involutions π extending `partner` by the number of
/// cycles of γ∘π.
class WickCounter {
 public:
  WickCounter(const std::vector<std::uint32_t>& gamma, std::vector<std::uint32_t> partner)
      : gamma_(gamma), partner_(std::move(partner)), seen_(gamma.size()), counts_(gamma.size() + 1, 0) {}

  void run() { extend(); }
  const std::vector<std::uint64_t>& counts() const { return counts_; }

 private:
  static constexpr std::uint32_t free_slot = UINT32_MAX;

  void extend() {
    const std::size_t n = gamma_.size();
    std::size_t first = 0;
    while (first < n && partner_[first] != free_slot) ++first;
    if (first == n) {
      ++counts_[cycles()];
      return;
    }
    for (std::size_t j = first + 1; j < n; ++j) {
      if (partner_[j] != free_slot) continue;
      partner_[first] = static_cast<std::uint32_t>(j);
      partner_[j] = static_cast<std::uint32_t>(first);
      extend();
      partner_[j] = free_slot;
    }
    partner_[first] = free_slot;
  }

  std::size_t cycles() {
    std::fill(seen_.begin(), seen_.end(), 0);
    std::size_t c = 0;
    for (std::size_t p = 0; p < gamma_.size(); ++p) {
      if (seen_[p]) continue;
      ++c;
      for (std::size_t q = p; !seen_[q]; q = gamma_[partner_[q]]) seen_[q] = 1;
    }
    return c;
  }

  const std::vector<std::uint32_t>& gamma_;
  std::vector<std::uint32_t> partner_;
  std::vector<char> seen_;
  std::vector<std::uint64_t> counts_;
};

}  // namespace detail

/// E[∏ Tr(X^{i_j})] for the GUE by Wick's theorem: with T = Σ i_j and γ the
/// permutation cycling each consecutive block, the sum over pairings π of
/// ν^{#cycles(γ∘π)}. Exponent 0 contributes ν. Throws when T exceeds `cap`.
inline NuPolynomial wick_oracle(const MultiIndex& idx, unsigned cap = 16, unsigned threads = 0) {
  const MultiIndex positive = idx.without_zeros();
  const unsigned t = positive.total();
  if (t > cap)
    throw std::length_error("Wick oracle: total degree " + std::to_string(t) + " exceeds cap " +
                            std::to_string(cap));
  if (t % 2) return {};
  if (t == 0) return NuPolynomial::monomial(idx.zeros());

  std::vector<std::uint32_t> gamma(t);
  std::uint32_t start = 0;
  for (unsigned len : positive.exponents()) {
    for (std::uint32_t p = 0; p < len; ++p) gamma[start + p] = start + (p + 1) % len;
    start += len;
  }

  // Partners of point 0 are handed out to workers; counts are exact integers
  // so the merge is order-independent.
  if (threads == 0) threads = worker_threads();
  threads = std::min<unsigned>(threads, t - 1);
  std::vector<std::vector<std::uint64_t>> partial(threads, std::vector<std::uint64_t>(t + 1, 0));
  std::atomic<std::uint32_t> next{1};
  auto work = [&](unsigned w) {
    for (std::uint32_t j = next++; j < t; j = next++) {
      std::vector<std::uint32_t> partner(t, UINT32_MAX);
      partner[0] = j;
      partner[j] = 0;
      detail::WickCounter counter(gamma, std::move(partner));
      counter.run();
      for (std::size_t c = 0; c <= t; ++c) partial[w][c] += counter.counts()[c];
    }
  };
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < threads; ++w) pool.emplace_back(work, w);
  work(0);
  for (auto& th : pool) th.join();

  NuPolynomial out;
  for (std::size_t c = 0; c <= t; ++c) {
    std::uint64_t total = 0;
    for (const auto& p : partial) total += p[c];
    if (total) out.add(static_cast<unsigned>(c), Scalar(BigInt(std::to_string(total))));
  }
  return out.shifted(idx.zeros());
}

}  // namespace ncbv
