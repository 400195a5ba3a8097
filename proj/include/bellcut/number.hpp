#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <string>
#include <string_view>
#include <vector>

namespace bellcut {

using Integer = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

using RationalVector = std::vector<Rational>;

/// "num/den", or just "num" when the denominator is 1.
std::string to_string(const Rational& r);

/// Accepts "p", "p/q", and finite decimals such as "-0.25" or "1e-3".
Rational parse_rational(std::string_view text);

/// Nearest rational with the given denominator (round half away from zero).
Rational rational_from_double(double x, long long denominator);

double to_double(const Rational& r);

/// Dot product in exact arithmetic; sizes must agree.
Rational dot(const RationalVector& a, const RationalVector& b);

/// Positive factor that turns `v` into coprime integers (1 for the zero vector).
Rational integer_scaling(const RationalVector& v);

}  // namespace bellcut
