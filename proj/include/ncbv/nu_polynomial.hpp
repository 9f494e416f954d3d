#pragma once

#include <map>
#include <sstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "ncbv/scalar.hpp"

namespace ncbv {

/// Polynomial in ν with exact coefficients. Zero coefficients are not stored.
class NuPolynomial {
 public:
  using Coeffs = std::map<unsigned, Scalar>;

  NuPolynomial() = default;
  static NuPolynomial constant(const Scalar& c) { return monomial(0, c); }
  static NuPolynomial monomial(unsigned power, const Scalar& c = 1) {
    NuPolynomial p;
    p.add(power, c);
    return p;
  }

  const Coeffs& coeffs() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }
  /// Degree of the polynomial; -1 for zero.
  int degree() const { return coeffs_.empty() ? -1 : static_cast<int>(coeffs_.rbegin()->first); }
  Scalar coefficient(unsigned power) const {
    auto it = coeffs_.find(power);
    return it == coeffs_.end() ? Scalar(0) : it->second;
  }
  Scalar leading_coefficient() const { return coeffs_.empty() ? Scalar(0) : coeffs_.rbegin()->second; }

  void add(unsigned power, Scalar c) {
    if (ncbv::is_zero(c)) return;
    c.canonicalize();
    auto [it, inserted] = coeffs_.try_emplace(power, c);
    if (!inserted) {
      it->second += c;
      if (ncbv::is_zero(it->second)) coeffs_.erase(it);
    }
  }

  Scalar evaluate(const Scalar& nu) const {
    Scalar out = 0;
    unsigned prev = coeffs_.empty() ? 0 : coeffs_.rbegin()->first;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
      for (unsigned k = it->first; k < prev; ++k) out *= nu;
      out += it->second;
      prev = it->first;
    }
    for (unsigned k = 0; k < prev; ++k) out *= nu;
    return out;
  }

  /// Multiplies by ν^k.
  NuPolynomial shifted(unsigned k) const {
    NuPolynomial p;
    for (const auto& [e, c] : coeffs_) p.coeffs_.emplace(e + k, c);
    return p;
  }

  NuPolynomial& operator+=(const NuPolynomial& o) {
    for (const auto& [e, c] : o.coeffs_) add(e, c);
    return *this;
  }
  NuPolynomial& operator-=(const NuPolynomial& o) {
    for (const auto& [e, c] : o.coeffs_) add(e, -c);
    return *this;
  }
  NuPolynomial& operator*=(const Scalar& s) {
    if (ncbv::is_zero(s)) coeffs_.clear();
    for (auto& [e, c] : coeffs_) c *= s;
    return *this;
  }
  friend NuPolynomial operator+(NuPolynomial a, const NuPolynomial& b) { return a += b; }
  friend NuPolynomial operator-(NuPolynomial a, const NuPolynomial& b) { return a -= b; }
  friend NuPolynomial operator*(const Scalar& s, NuPolynomial a) { return a *= s; }
  friend NuPolynomial operator*(const NuPolynomial& a, const NuPolynomial& b) {
    NuPolynomial p;
    for (const auto& [ea, ca] : a.coeffs_)
      for (const auto& [eb, cb] : b.coeffs_) p.add(ea + eb, ca * cb);
    return p;
  }
  friend bool operator==(const NuPolynomial&, const NuPolynomial&) = default;

 private:
  Coeffs coeffs_;
};

/// "2ν^3 + ν", highest power first; "0" for zero.
inline std::string to_string(const NuPolynomial& p) {
  if (p.is_zero()) return "0";
  std::string out;
  for (auto it = p.coeffs().rbegin(); it != p.coeffs().rend(); ++it) {
    const auto& [e, c] = *it;
    Scalar mag = abs(c);
    if (out.empty()) {
      if (sgn(c) < 0) out += "-";
    } else {
      out += sgn(c) < 0 ? " - " : " + ";
    }
    if (e == 0) {
      out += mag.get_str();
      continue;
    }
    if (mag != 1) out += mag.get_str();
    out += "ν";
    if (e > 1) out += "^" + std::to_string(e);
  }
  return out;
}

inline nlohmann::ordered_json to_json(const NuPolynomial& p) {
  nlohmann::ordered_json coeffs = nlohmann::ordered_json::object();
  for (const auto& [e, c] : p.coeffs()) coeffs[std::to_string(e)] = format_scalar(c);
  return {{"coeffs", coeffs}};
}

inline NuPolynomial nu_polynomial_from_json(const nlohmann::ordered_json& j) {
  NuPolynomial p;
  for (const auto& [key, value] : j.at("coeffs").items()) {
    std::size_t used = 0;
    const unsigned long e = std::stoul(key, &used);
    if (used != key.size()) throw std::invalid_argument("bad exponent '" + key + "'");
    p.add(static_cast<unsigned>(e), parse_scalar(value.get<std::string>()));
  }
  return p;
}

/// CSV with header "exponent,numerator,denominator", one row per nonzero
/// coefficient in increasing exponent order.
inline std::string to_csv(const NuPolynomial& p) {
  std::string out = "exponent,numerator,denominator\n";
  for (const auto& [e, c] : p.coeffs())
    out += std::to_string(e) + "," + c.get_num().get_str() + "," + c.get_den().get_str() + "\n";
  return out;
}

inline NuPolynomial nu_polynomial_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != "exponent,numerator,denominator")
    throw std::invalid_argument("missing CSV header");
  NuPolynomial p;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto a = line.find(','), b = line.find(',', a == std::string::npos ? a : a + 1);
    if (a == std::string::npos || b == std::string::npos)
      throw std::invalid_argument("malformed CSV row '" + line + "'");
    std::size_t used = 0;
    const std::string exp = line.substr(0, a);
    const unsigned long e = std::stoul(exp, &used);
    if (used != exp.size()) throw std::invalid_argument("bad exponent '" + exp + "'");
    p.add(static_cast<unsigned>(e),
          parse_scalar(line.substr(a + 1, b - a - 1) + "/" + line.substr(b + 1)));
  }
  return p;
}

}  // namespace ncbv
