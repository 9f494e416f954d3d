#pragma once

#include <algorithm>
#include <complex>
#include <map>
#include <type_traits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "ncbv/element.hpp"

namespace ncbv {

/// Row-major square or rectangular matrix over a numeric field.
template <typename T>
class DenseMatrix {
 public:
  DenseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}

  static DenseMatrix identity(std::size_t n) {
    DenseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }
  static DenseMatrix diagonal(const std::vector<T>& d) {
    DenseMatrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  friend DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix dimensions do not match");
    DenseMatrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T& f = a(i, k);
        for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += f * b(k, j);
      }
    return out;
  }

  T trace() const {
    if (rows_ != cols_) throw std::invalid_argument("trace of a non-square matrix");
    T t(0);
    for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
    return t;
  }

 private:
  std::size_t rows_, cols_;
  std::vector<T> data_;
};

template <typename T>
T scalar_as(const Scalar& c) {
  if constexpr (std::is_same_v<T, Scalar>) {
    return c;
  } else if constexpr (std::is_same_v<T, std::complex<double>>) {
    return {c.get_d(), 0.0};
  } else {
    return static_cast<T>(c.get_d());
  }
}

/// A ℚ[ν]-combination of products of single-trace operators Tr(X^p), the
/// image of the LQT map on words in one letter.
class MultiTraceFunctional {
 public:
  /// (ν power, sorted trace powers).
  using Key = std::pair<unsigned, std::vector<unsigned>>;

  void add(unsigned nu_power, std::vector<unsigned> traces, Scalar c) {
    if (is_zero(c)) return;
    c.canonicalize();
    std::sort(traces.begin(), traces.end());
    auto [it, inserted] = terms_.try_emplace(Key{nu_power, std::move(traces)}, c);
    if (!inserted) {
      it->second += c;
      if (is_zero(it->second)) terms_.erase(it);
    }
  }

  const std::map<Key, Scalar>& terms() const { return terms_; }
  bool is_zero_functional() const { return terms_.empty(); }
  friend bool operator==(const MultiTraceFunctional&, const MultiTraceFunctional&) = default;

 private:
  std::map<Key, Scalar> terms_;
};

/// Image of a cyclic element whose words only use the letter `x`: the word
/// (x^p) becomes Tr(X^p) and ν^j becomes ν^j.
inline MultiTraceFunctional lqt_image(const Element& e, Letter x) {
  if (e.flavor() != Flavor::cyclic) throw std::invalid_argument("lqt_image expects a cyclic element");
  MultiTraceFunctional f;
  for (const auto& [m, c] : e.terms()) {
    if (m.gamma_power) throw std::invalid_argument("lqt_image: γ has no trace image");
    std::vector<unsigned> traces;
    for (const auto& w : m.words) {
      for (Letter l : w.letters)
        if (l != x) throw std::invalid_argument("lqt_image: word uses a letter other than " + e.space().name(x));
      traces.push_back(static_cast<unsigned>(w.size()));
    }
    f.add(m.nu_power, std::move(traces), c);
  }
  return f;
}

/// Σ c·N^j·∏ Tr(X^p) for an N×N matrix X.
template <typename T>
T lqt_evaluate(const MultiTraceFunctional& f, const DenseMatrix<T>& x, std::size_t n) {
  if (x.rows() != n || x.cols() != n) throw std::invalid_argument("matrix is not N×N");
  std::vector<T> traces{T(static_cast<double>(n))};
  DenseMatrix<T> power = DenseMatrix<T>::identity(n);
  auto trace_of = [&](unsigned p) {
    while (traces.size() <= p) {
      power = power * x;
      traces.push_back(power.trace());
    }
    return traces[p];
  };
  T total(0);
  for (const auto& [key, c] : f.terms()) {
    T term = scalar_as<T>(c);
    for (unsigned j = 0; j < key.first; ++j) term *= traces[0];
    for (unsigned p : key.second) term *= trace_of(p);
    total += term;
  }
  return total;
}

inline nlohmann::ordered_json to_json(const MultiTraceFunctional& f) {
  nlohmann::ordered_json terms = nlohmann::ordered_json::array();
  for (const auto& [key, c] : f.terms())
    terms.push_back({{"nu_power", key.first}, {"traces", key.second}, {"coeff", format_scalar(c)}});
  return {{"terms", terms}};
}

inline MultiTraceFunctional multitrace_from_json(const nlohmann::ordered_json& j) {
  MultiTraceFunctional f;
  for (const auto& t : j.at("terms"))
    f.add(t.at("nu_power").get<unsigned>(), t.at("traces").get<std::vector<unsigned>>(),
          parse_scalar(t.at("coeff").get<std::string>()));
  return f;
}

}  // namespace ncbv
