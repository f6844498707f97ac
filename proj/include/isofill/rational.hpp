#pragma once

#include <string>
#include <string_view>

#include <boost/multiprecision/gmp.hpp>

namespace isofill {

/// Exact rational number. GMP keeps every value in lowest terms with a
/// positive denominator, so no separate normalisation step is needed.
using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;

/// Renders `q` as `num/den`, always with an explicit denominator (`3/1`, `0/1`).
std::string to_string(const Rational& q);

/// Parses `a`, `-a` or `a/b` with integer `a`, `b`; throws ParseError.
Rational parse_rational(std::string_view text);

inline Rational abs_value(const Rational& q) { return q < 0 ? Rational(-q) : q; }

}  // namespace isofill
