#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace efk {

using Integer = mpz_class;
using Rational = mpq_class;

// Accepts "p", "-p", "p/q" and finite decimals such as "-0.25".
Rational parse_rational(std::string_view text);
Integer parse_integer(std::string_view text);

std::string to_string(const Integer& z);
std::string to_string(const Rational& q);

Integer floor_of(const Rational& q);
bool is_integer(const Rational& q);
Rational abs_of(const Rational& q);

}  // namespace efk
