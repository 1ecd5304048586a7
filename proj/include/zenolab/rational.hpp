#pragma once

#include <boost/rational.hpp>
#include <string>

namespace zenolab {

// exact exponent arithmetic for the power-scale calculus
using Rational = boost::rational<long long>;

Rational pos_part(const Rational& r);

// accepts "p" or "p/q" with optional sign on p; q must be nonzero
Rational parse_rational(const std::string& text);

// canonical form: "p" when the denominator is 1, else "p/q" with q > 0
std::string to_string(const Rational& r);

double to_double(const Rational& r);

}  // namespace zenolab
