#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <optional>
#include <string>
#include <vector>

namespace lira {

/// Exact rational scalar. GMP keeps values canonical (lowest terms,
/// positive denominator), which the whole kernel relies on.
using Rational = boost::multiprecision::mpq_rational;
using Vec = std::vector<Rational>;

inline bool is_zero(const Rational& x) { return x.is_zero(); }

/// Parses "p", "-p" or "p/q". Returns nullopt on malformed input or q = 0.
inline std::optional<Rational> parse_rational(const std::string& text) {
  if (text.empty()) return std::nullopt;
  const auto slash = text.find('/');
  const std::string num = slash == std::string::npos ? text : text.substr(0, slash);
  const std::string den = slash == std::string::npos ? "1" : text.substr(slash + 1);
  auto valid_int = [](const std::string& s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
      if (s[i] < '0' || s[i] > '9') return false;
    return true;
  };
  if (!valid_int(num) || !valid_int(den)) return std::nullopt;
  boost::multiprecision::mpz_int n(num), d(den);
  if (d == 0) return std::nullopt;
  return Rational(n, d);
}

inline std::string format_rational(const Rational& x) {
  if (denominator(x) == 1) return numerator(x).str();
  return numerator(x).str() + "/" + denominator(x).str();
}

}  // namespace lira
