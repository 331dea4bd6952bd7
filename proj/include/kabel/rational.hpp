#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace kabel {

using Integer = mpz_class;
using Rational = mpq_class;

/// "p/q" or "p" for integers; canonical form.
std::string to_string(const Rational& q);
std::string to_string(const Integer& z);

/// Parses "p", "-p", "p/q". Throws Error(ParseError).
Rational parse_rational(std::string_view text);

/// Exact conversion of a GMP integer that is known to fit.
long long to_ll(const Integer& z);

/// Least common multiple of the denominators.
Integer common_denominator(const std::vector<Rational>& v);

} // namespace kabel
