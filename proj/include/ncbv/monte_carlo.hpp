#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <thread>
#include <vector>

#include "ncbv/concurrency.hpp"
#include "ncbv/gue.hpp"
#include "ncbv/multitrace.hpp"

namespace ncbv {

/// Standard normal variates from mt19937_64 via the Box-Muller transform.
/// Uniforms are (u >> 11)·2^-53, so the stream is fixed across platforms.
class GaussianStream {
 public:
  explicit GaussianStream(std::mt19937_64 engine) : engine_(std::move(engine)) {}

  static GaussianStream seeded(std::uint64_t seed, std::uint64_t stream = 0) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
    return GaussianStream(std::mt19937_64(seq));
  }

  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double next() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double u1 = 1.0 - uniform();  // (0, 1]
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
  }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0;
  bool has_spare_ = false;
};

using ComplexMatrix = DenseMatrix<std::complex<double>>;

/// A GUE draw for the measure e^{-Tr(X²)/2}dX: real standard normal diagonal,
/// off-diagonal real and imaginary parts of variance 1/2.
inline ComplexMatrix sample_gue(std::size_t n, GaussianStream& g) {
  if (n == 0) throw std::invalid_argument("N must be positive");
  ComplexMatrix x(n, n);
  const double s = std::sqrt(0.5);
  for (std::size_t i = 0; i < n; ++i) {
    x(i, i) = g.next();
    for (std::size_t j = i + 1; j < n; ++j) {
      const double re = s * g.next(), im = s * g.next();
      x(i, j) = {re, im};
      x(j, i) = {re, -im};
    }
  }
  return x;
}

/// ∏ Tr(X^{i_j}) for one matrix, as a real number.
inline double trace_product(const MultiIndex& idx, const ComplexMatrix& x) {
  std::vector<double> traces{static_cast<double>(x.rows())};
  ComplexMatrix power = ComplexMatrix::identity(x.rows());
  double out = 1;
  for (unsigned e : idx.exponents()) {
    while (traces.size() <= e) {
      power = power * x;
      traces.push_back(power.trace().real());
    }
    out *= traces[e];
  }
  return out;
}

struct MonteCarloResult {
  double estimate = 0;
  double standard_error = 0;
  std::uint64_t samples = 0;
};

/// Sample mean and standard error of ∏ Tr(X^{i_j}) over GUE draws. Samples
/// are split into fixed chunks, chunk c drawing from GaussianStream::seeded(seed,
/// c); chunk statistics are merged in chunk order, so the result does not
/// depend on the thread count.
inline MonteCarloResult monte_carlo_moment(const MultiIndex& idx, std::size_t n, std::uint64_t samples,
                                           std::uint64_t seed, unsigned threads = 0) {
  if (samples < 2) throw std::invalid_argument("need at least two samples");
  if (n == 0) throw std::invalid_argument("N must be positive");
  constexpr std::uint64_t chunk = 1 << 14;
  const std::uint64_t chunks = (samples + chunk - 1) / chunk;
  struct Stats {
    double count = 0, mean = 0, m2 = 0;
  };
  std::vector<Stats> stats(chunks);
  auto run_chunk = [&](std::uint64_t c) {
    GaussianStream g = GaussianStream::seeded(seed, c);
    const std::uint64_t count = std::min(chunk, samples - c * chunk);
    Stats s;
    for (std::uint64_t i = 0; i < count; ++i) {
      const double v = trace_product(idx, sample_gue(n, g));
      s.count += 1;
      const double d = v - s.mean;
      s.mean += d / s.count;
      s.m2 += d * (v - s.mean);
    }
    stats[c] = s;
  };
  if (threads == 0) threads = worker_threads();
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, chunks));
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < threads; ++w)
    pool.emplace_back([&, w] {
      for (std::uint64_t c = w; c < chunks; c += threads) run_chunk(c);
    });
  for (std::uint64_t c = 0; c < chunks; c += threads) run_chunk(c);
  for (auto& t : pool) t.join();

  Stats total;
  for (const auto& s : stats) {
    const double count = total.count + s.count;
    const double d = s.mean - total.mean;
    total.mean += d * s.count / count;
    total.m2 += s.m2 + d * d * total.count * s.count / count;
    total.count = count;
  }
  MonteCarloResult r;
  r.samples = samples;
  r.estimate = total.mean;
  r.standard_error = std::sqrt(total.m2 / (total.count - 1) / total.count);
  return r;
}

}  // namespace ncbv
