#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace tropcram {

// Exact rational scalar. All tie and singularity tests compare these with ==.
using Rational = mpq_class;
using RationalVector = std::vector<Rational>;

// Accepts "p", "-p", "p/q" (any sign placement GMP accepts); the result is
// canonicalized. Throws ParseError on malformed text or a zero denominator.
Rational parse_rational(std::string_view text);

// Lowest-terms "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& value);

bool is_integer(const Rational& value);

// Fixed-point decimal rendering with `digits` fractional digits, rounded half
// away from zero. Deterministic; used only for SVG output.
std::string to_decimal(const Rational& value, int digits = 6);

Rational min_of(const RationalVector& values);
Rational max_of(const RationalVector& values);

}  // namespace tropcram
