#pragma once

// Rule-based differentiation and polynomial extraction. Both serve as
// oracles independent of the series-field evaluator.

#include <hrw/expr.hpp>
#include <hrw/rational.hpp>

#include <string_view>
#include <vector>

namespace hrw {

// d/d(var) for trees built from + - * / and integer constant powers.
// UnsupportedNode on function calls and non-integer powers.
expr symbolic_derivative(const expr &e, std::string_view var);

// Constant folding and identity elimination (0+x, 1*x, x^1, --x, ...).
expr simplify(const expr &e);

// Dense univariate polynomial, coefficients in increasing degree.
class polynomial
{
public:
    polynomial() = default;
    explicit polynomial(std::vector<rational> coefficients);

    const std::vector<rational> &coefficients() const noexcept
    {
        return m_coeffs;
    }
    // -1 for the zero polynomial.
    long degree() const noexcept
    {
        return static_cast<long>(m_coeffs.size()) - 1;
    }

    rational operator()(const rational &x) const;
    polynomial derivative() const;
    // Antiderivative with zero constant term.
    polynomial antiderivative() const;
    // Exact integral over [a, b].
    rational integrate(const rational &a, const rational &b) const;

    friend polynomial operator+(const polynomial &p, const polynomial &q);
    friend polynomial operator-(const polynomial &p, const polynomial &q);
    friend polynomial operator*(const polynomial &p, const polynomial &q);
    friend bool operator==(const polynomial &, const polynomial &) = default;

private:
    void trim();

    std::vector<rational> m_coeffs;
};

// UnsupportedNode unless e is a polynomial in `var` with rational
// coefficients.
polynomial to_polynomial(const expr &e, std::string_view var);

} // namespace hrw
