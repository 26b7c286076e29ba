#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace pisot {

using Integer = mpz_class;
using Rational = mpq_class;

/// Parses "p", "-p" or "p/q" (q != 0) into a canonical rational. Throws ParseError.
Rational parse_rational(std::string_view text);

/// "p" for integers, "p/q" otherwise.
std::string to_string(const Rational& q);
std::string to_string(const Integer& z);

/// Floor of log2|q| (approximately); 0 for q == 0. Used to size working precision.
long bit_size(const Rational& q);

}  // namespace pisot
