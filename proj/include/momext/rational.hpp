#pragma once

#include <gmpxx.h>

#include <string>

namespace momext {

// Exact arithmetic everywhere: mpq_class keeps values in lowest terms with a
// positive denominator, which is exactly the invariant the certificate format
// relies on.
using Rational = mpq_class;
using BigInt = mpz_class;

// "num/den" with an explicit denominator, e.g. "4/1", "-1770/7".
std::string rational_str(const Rational& r);

// Accepts "num", "num/den" and optional leading '-'; throws std::invalid_argument
// on anything else (including den == 0).
Rational parse_rational(const std::string& s);

}  // namespace momext
