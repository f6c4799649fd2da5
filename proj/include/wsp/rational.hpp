#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace wsp {

// Exact rational scalar used for every cost, flow and LP value.
using Rational = mpq_class;

// Accepts "7", "-3", "3/2" and plain decimals such as "0.25" (no exponent
// notation). Throws std::invalid_argument on anything else.
Rational parse_rational(std::string_view text);

// Canonical "p/q" form; integers print as "p/1".
std::string format_rational(const Rational& q);

std::int64_t floor_to_int(const Rational& q);
std::int64_t ceil_to_int(const Rational& q);

// Exact value of a double (every finite double is a dyadic rational).
Rational from_double(double value);

inline double to_double(const Rational& q) { return q.get_d(); }

}  // namespace wsp
