#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>

namespace ncbv {

/// Exact rational number. mpq_class keeps itself in lowest terms with a
/// positive denominator after every arithmetic operation.
using Scalar = mpq_class;
using BigInt = mpz_class;

/// Parses "n", "-n" or "n/d". Throws std::invalid_argument on malformed
/// input or a zero denominator.
inline Scalar parse_scalar(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  auto slash = s.find('/');
  mpz_class num, den(1);
  auto parse_int = [](const std::string& part, mpz_class& out) {
    if (part.empty() || out.set_str(part, 10) != 0)
      throw std::invalid_argument("malformed rational literal: " + part);
  };
  if (slash == std::string::npos) {
    parse_int(s, num);
  } else {
    parse_int(s.substr(0, slash), num);
    parse_int(s.substr(slash + 1), den);
  }
  if (den == 0) throw std::invalid_argument("zero denominator in " + s);
  Scalar q(num, den);
  q.canonicalize();
  return q;
}

/// Always "num/den" (den may be 1), the wire format used by every JSON file.
inline std::string format_scalar(const Scalar& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline bool is_zero(const Scalar& q) { return sgn(q) == 0; }

}  // namespace ncbv
