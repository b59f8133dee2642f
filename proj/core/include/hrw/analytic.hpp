#pragma once

// Rational approximations of transcendental values.
//
// Every function returns the multiple of 10^-(d+1) nearest to the true value,
// so the absolute error is below 10^-d. Results are a pure function of the
// inputs, which keeps downstream exact arithmetic reproducible.

#include <hrw/rational.hpp>

#include <optional>

namespace hrw {

enum class analytic_fn { exp, ln, sin, cos, tan, pow_real };

rational approx_exp(const rational &x, unsigned d);
rational approx_ln(const rational &x, unsigned d);
rational approx_sin(const rational &x, unsigned d);
rational approx_cos(const rational &x, unsigned d);
rational approx_tan(const rational &x, unsigned d);
// x^r for x > 0.
rational approx_pow(const rational &x, const rational &r, unsigned d);
// x^k for integer k: exact while the result stays below about 2^16 bits,
// approximated like approx_pow beyond that.
rational integer_power(const rational &x, const integer &k, unsigned d);
rational approx_pi(unsigned d);
rational approx_e(unsigned d);

// Exact n-th root when x is a perfect n-th power of a rational (x >= 0).
std::optional<rational> exact_root(const rational &x, unsigned long n);

// n-th root of x >= 0: exact when possible, approximated otherwise.
rational root(const rational &x, unsigned long n, unsigned d);

inline rational sqrt(const rational &x, unsigned d)
{
    return root(x, 2, d);
}

} // namespace hrw
