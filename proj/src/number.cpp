#include "bellcut/number.hpp"

#include "bellcut/errors.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>

namespace bellcut {

std::string to_string(const Rational& r) {
  const Integer num = boost::multiprecision::numerator(r);
  const Integer den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

namespace {

Integer parse_integer(std::string_view s) {
  if (s.empty()) throw ValidationError("empty number");
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) throw ValidationError("malformed number '" + std::string(s) + "'");
  for (std::size_t k = i; k < s.size(); ++k)
    if (s[k] < '0' || s[k] > '9') throw ValidationError("malformed number '" + std::string(s) + "'");
  // strip leading zeros, which the backend would read as an octal prefix
  const std::size_t first = std::min(s.find_first_not_of('0', i), s.size() - 1);
  const Integer magnitude(std::string(s.substr(first)));
  return s[0] == '-' ? Integer(-magnitude) : magnitude;
}

Rational pow10(long e) {
  Integer p = 1;
  for (long k = 0; k < (e < 0 ? -e : e); ++k) p *= 10;
  return e < 0 ? Rational(Integer(1), p) : Rational(p);
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) throw ValidationError("empty number");

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    Integer num = parse_integer(text.substr(0, slash));
    Integer den = parse_integer(text.substr(slash + 1));
    if (den == 0) throw ValidationError("zero denominator in '" + std::string(text) + "'");
    return Rational(num, den);
  }

  long exponent = 0;
  std::string_view mantissa = text;
  if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
    mantissa = text.substr(0, e);
    exponent = static_cast<long>(parse_integer(text.substr(e + 1)).convert_to<long long>());
  }
  std::string digits;
  long frac = 0;
  bool seen_dot = false;
  for (char c : mantissa) {
    if (c == '.') {
      if (seen_dot) throw ValidationError("malformed number '" + std::string(text) + "'");
      seen_dot = true;
    } else {
      digits.push_back(c);
      if (seen_dot) ++frac;
    }
  }
  return Rational(parse_integer(digits)) * pow10(exponent - frac);
}

Rational rational_from_double(double x, long long denominator) {
  if (!std::isfinite(x)) throw ValidationError("non-finite value");
  const long double scaled = std::llroundl(static_cast<long double>(x) * denominator);
  return Rational(Integer(static_cast<long long>(scaled)), Integer(denominator));
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

Rational dot(const RationalVector& a, const RationalVector& b) {
  if (a.size() != b.size()) throw ValidationError("dimension mismatch in dot product");
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!a[i].is_zero() && !b[i].is_zero()) s += a[i] * b[i];
  return s;
}

Rational integer_scaling(const RationalVector& v) {
  Integer l = 1;
  Integer g = 0;
  for (const auto& x : v) l = boost::multiprecision::lcm(l, boost::multiprecision::denominator(x));
  for (const auto& x : v) {
    Integer k = boost::multiprecision::numerator(x) * (l / boost::multiprecision::denominator(x));
    g = boost::multiprecision::gcd(g, abs(k));
  }
  if (g == 0) return 1;
  return Rational(l, g);
}

}  // namespace bellcut
