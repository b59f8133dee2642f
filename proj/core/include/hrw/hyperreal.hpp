#pragma once

// Computable fragment of a non-Archimedean ordered field: finite formal
// series sum_q a_q eps^q with rational exponents and exact rational
// coefficients, truncated to a window W above the leading exponent.

#include <hrw/analytic.hpp>
#include <hrw/config.hpp>
#include <hrw/rational.hpp>

#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hrw {

struct term {
    rational exponent;
    rational coefficient;

    friend bool operator==(const term &, const term &) = default;
};

enum class classification { zero, infinitesimal, appreciable, infinite_positive, infinite_negative };

std::string_view to_string(classification c);

// A finite rational or one of the two signed infinities.
class extended_real
{
public:
    enum class kind { finite, pos_inf, neg_inf };

    extended_real() = default;
    extended_real(rational value) : m_kind(kind::finite), m_value(std::move(value)) {}

    static extended_real pos_infinity()
    {
        extended_real r;
        r.m_kind = kind::pos_inf;
        return r;
    }
    static extended_real neg_infinity()
    {
        extended_real r;
        r.m_kind = kind::neg_inf;
        return r;
    }

    kind which() const noexcept
    {
        return m_kind;
    }
    bool is_finite() const noexcept
    {
        return m_kind == kind::finite;
    }
    // Precondition: is_finite().
    const rational &value() const
    {
        return m_value;
    }

    friend bool operator==(const extended_real &a, const extended_real &b)
    {
        return a.m_kind == b.m_kind && (a.m_kind != kind::finite || a.m_value == b.m_value);
    }

private:
    kind m_kind = kind::finite;
    rational m_value{0};
};

// "+inf", "-inf" or the rational in p/q form.
std::string to_string(const extended_real &x);

class hyperreal
{
public:
    // The zero element.
    explicit hyperreal(rational window = rational(default_window));
    // The standard constant c.
    hyperreal(rational c, rational window);

    // The monomial coeff * eps^q.
    static hyperreal monomial(rational coeff, rational q, rational window = rational(default_window));
    // Normalises arbitrary terms: sorted, merged, zeros dropped, truncated.
    static hyperreal from_terms(std::vector<term> terms, rational window = rational(default_window), bool saturated = false);

    const std::vector<term> &terms() const noexcept
    {
        return m_terms;
    }
    const rational &window() const noexcept
    {
        return m_window;
    }
    // True when some computation producing this value discarded terms that
    // fell outside the window.
    bool saturated() const noexcept
    {
        return m_saturated;
    }
    bool is_zero() const noexcept
    {
        return m_terms.empty();
    }
    bool is_standard() const;

    // Least stored exponent; empty for zero.
    std::optional<rational> leading_exponent() const;
    // Precondition: !is_zero().
    const rational &leading_coefficient() const;
    rational coefficient(const rational &exponent) const;

    hyperreal operator-() const;

    friend hyperreal operator+(const hyperreal &x, const hyperreal &y);
    friend hyperreal operator-(const hyperreal &x, const hyperreal &y);
    friend hyperreal operator*(const hyperreal &x, const hyperreal &y);
    friend hyperreal operator/(const hyperreal &x, const hyperreal &y);

    friend hyperreal operator*(const hyperreal &x, const rational &c);
    friend hyperreal operator*(const rational &c, const hyperreal &x)
    {
        return x * c;
    }

    // Equality of truncated series.
    friend bool operator==(const hyperreal &x, const hyperreal &y);
    friend std::strong_ordering operator<=>(const hyperreal &x, const hyperreal &y);

private:
    std::vector<term> m_terms;
    rational m_window;
    bool m_saturated = false;
};

// eps^q; epsilon(1) is the canonical infinitesimal, epsilon(-1) the
// canonical infinite Gamma = 1/eps.
hyperreal epsilon(const rational &q = rational(1), const rational &window = rational(default_window));

hyperreal add(const hyperreal &x, const hyperreal &y);
hyperreal sub(const hyperreal &x, const hyperreal &y);
hyperreal neg(const hyperreal &x);
hyperreal mul(const hyperreal &x, const hyperreal &y);
// DivisionByZero on the zero element.
hyperreal inv(const hyperreal &x);
hyperreal div(const hyperreal &x, const hyperreal &y);
hyperreal pow(const hyperreal &x, long k);

// Leading coefficients whose n-th root is irrational are approximated to
// 10^-precision. NonPositiveLeading when the leading coefficient is <= 0.
hyperreal nth_root(const hyperreal &x, unsigned long n, unsigned precision = default_precision);

std::strong_ordering compare(const hyperreal &x, const hyperreal &y);
classification classify(const hyperreal &x);

inline bool is_infinitesimal(const hyperreal &x)
{
    auto c = classify(x);
    return c == classification::zero || c == classification::infinitesimal;
}
inline bool is_limited(const hyperreal &x)
{
    auto c = classify(x);
    return c != classification::infinite_positive && c != classification::infinite_negative;
}

extended_real st(const hyperreal &x);

bool infinitely_close(const hyperreal &x, const hyperreal &y);
bool in_monad(const hyperreal &x, const rational &r);

// x in o(e): x = 0 or lambda(x) > lambda(e). NotInfinitesimal unless e is a
// nonzero infinitesimal.
bool in_order_ideal(const hyperreal &x, const hyperreal &e);
// a - b in o(e^n).
bool close_of_order(const hyperreal &a, const hyperreal &b, const hyperreal &e, long n);

// f(x) for limited x via the Taylor expansion of f at st(x). `power` is the
// exponent for pow_real. TranscendentalOnUnlimited on infinite x.
hyperreal apply_analytic(analytic_fn f, const hyperreal &x, const field_config &cfg,
                         const rational &power = rational(0));

// Canonical text: "3 + 1*eps^1 + -1/4*eps^2"; zero renders as "0".
std::string to_string(const hyperreal &x);
// Inverse of to_string. Throws parse_error.
hyperreal parse_hyperreal(std::string_view text, const rational &window = rational(default_window));

} // namespace hrw
