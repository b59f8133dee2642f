#pragma once

// Exact rational scalars backed by GMP.

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace hrw {

using integer = mpz_class;
using rational = mpq_class;

// Accepts "p/q", integers and finite decimals, each with an optional sign.
// Decimals are converted exactly ("0.25" -> 1/4). Throws hrw::error with
// kind parse_error on malformed text.
rational parse_rational(std::string_view text);

// "p/q", or "p" when the denominator is one.
std::string to_string(const rational &q);

// Fixed-point rendering rounded half away from zero to `digits` places.
std::string to_decimal(const rational &q, unsigned digits);

double to_double(const rational &q);

inline int sign(const rational &q) { return sgn(q); }

rational pow(const rational &base, long exponent);

// 10^k for any integer k.
rational pow10(long k);

integer floor(const rational &q);
integer ceil(const rational &q);

bool is_integer(const rational &q);

// Binomial coefficient C(r, k) for rational r.
rational binomial(const rational &r, unsigned long k);

integer factorial(unsigned long n);

} // namespace hrw
