#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace tracklab {

using Rational = mpq_class;
using Integer = mpz_class;

/// Parses `p/q` or a plain integer. Throws std::invalid_argument on bad input.
Rational parse_rational(std::string_view text);

/// Canonical text form: `p/q` in lowest terms, or `p` when q == 1.
std::string to_string(const Rational& value);

/// Divides an integer vector by the gcd of its entries (no-op for the zero vector).
void make_primitive(std::vector<Integer>& v);

}  // namespace tracklab
