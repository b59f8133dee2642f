#include <hrw/errors.hpp>
#include <hrw/hyperreal.hpp>

#include <algorithm>
#include <functional>
#include <utility>

namespace hrw {

namespace {

// Sorts, merges equal exponents, drops zero coefficients and truncates
// everything at or above lambda + window. Returns true when terms were cut.
bool normalize(std::vector<term> &terms, const rational &window)
{
    std::sort(terms.begin(), terms.end(), [](const term &a, const term &b) { return a.exponent < b.exponent; });
    std::vector<term> merged;
    merged.reserve(terms.size());
    for (auto &t : terms) {
        if (!merged.empty() && merged.back().exponent == t.exponent) {
            merged.back().coefficient += t.coefficient;
        } else {
            merged.push_back(std::move(t));
        }
    }
    std::erase_if(merged, [](const term &t) { return sgn(t.coefficient) == 0; });
    bool cut = false;
    if (!merged.empty()) {
        rational limit = merged.front().exponent + window;
        auto it = std::find_if(merged.begin(), merged.end(), [&](const term &t) { return t.exponent >= limit; });
        cut = it != merged.end();
        merged.erase(it, merged.end());
    }
    terms = std::move(merged);
    return cut;
}

void require_same_window(const hyperreal &x, const hyperreal &y)
{
    if (x.window() != y.window()) {
        raise(error_kind::domain_error,
              "operands use different windows (" + to_string(x.window()) + " vs " + to_string(y.window()) + ")");
    }
}

// Product of two term lists keeping only exponents below `cutoff`.
std::vector<term> product_below(const std::vector<term> &a, const std::vector<term> &b, const rational &cutoff, bool &cut)
{
    std::vector<term> out;
    out.reserve(a.size() * b.size());
    for (const auto &s : a) {
        for (const auto &t : b) {
            rational e = s.exponent + t.exponent;
            if (e >= cutoff) {
                cut = true;
                // b is sorted; later terms only raise the exponent.
                break;
            }
            out.push_back({std::move(e), s.coefficient * t.coefficient});
        }
    }
    return out;
}

// Sum_{k=0..K} c_k u^k for u with positive leading exponent, keeping
// exponents below `window`. `coeff(k)` yields c_k.
template <typename Coeff>
std::vector<term> power_series(const std::vector<term> &u, const rational &window, Coeff &&coeff)
{
    std::vector<term> sum{{rational(0), coeff(0)}};
    if (u.empty()) {
        normalize(sum, window);
        return sum;
    }
    const rational &mu = u.front().exponent;
    integer count = ceil(window / mu);
    unsigned long terms_needed = count.get_ui();
    std::vector<term> power{{rational(0), rational(1)}};
    bool cut = false;
    for (unsigned long k = 1; k <= terms_needed && !power.empty(); ++k) {
        power = product_below(power, u, window, cut);
        normalize(power, window);
        rational c = coeff(k);
        if (sgn(c) != 0) {
            for (const auto &t : power) {
                sum.push_back({t.exponent, t.coefficient * c});
            }
        }
    }
    normalize(sum, window);
    return sum;
}

} // namespace

std::string_view to_string(classification c)
{
    switch (c) {
        case classification::zero:
            return "zero";
        case classification::infinitesimal:
            return "infinitesimal-nonzero";
        case classification::appreciable:
            return "appreciable";
        case classification::infinite_positive:
            return "infinite-positive";
        case classification::infinite_negative:
            return "infinite-negative";
    }
    return "unknown";
}

std::string to_string(const extended_real &x)
{
    switch (x.which()) {
        case extended_real::kind::pos_inf:
            return "+inf";
        case extended_real::kind::neg_inf:
            return "-inf";
        case extended_real::kind::finite:
            break;
    }
    return to_string(x.value());
}

hyperreal::hyperreal(rational window) : m_window(std::move(window)) {}

hyperreal::hyperreal(rational c, rational window) : m_window(std::move(window))
{
    if (sgn(c) != 0) {
        m_terms.push_back({rational(0), std::move(c)});
    }
}

hyperreal hyperreal::monomial(rational coeff, rational q, rational window)
{
    hyperreal out(std::move(window));
    if (sgn(coeff) != 0) {
        out.m_terms.push_back({std::move(q), std::move(coeff)});
    }
    return out;
}

hyperreal hyperreal::from_terms(std::vector<term> terms, rational window, bool saturated)
{
    hyperreal out(std::move(window));
    bool cut = normalize(terms, out.m_window);
    out.m_terms = std::move(terms);
    out.m_saturated = saturated || cut;
    return out;
}

bool hyperreal::is_standard() const
{
    return m_terms.empty() || (m_terms.size() == 1 && sgn(m_terms.front().exponent) == 0);
}

std::optional<rational> hyperreal::leading_exponent() const
{
    if (m_terms.empty()) {
        return std::nullopt;
    }
    return m_terms.front().exponent;
}

const rational &hyperreal::leading_coefficient() const
{
    if (m_terms.empty()) {
        raise(error_kind::domain_error, "zero element has no leading coefficient");
    }
    return m_terms.front().coefficient;
}

rational hyperreal::coefficient(const rational &exponent) const
{
    for (const auto &t : m_terms) {
        if (t.exponent == exponent) {
            return t.coefficient;
        }
        if (t.exponent > exponent) {
            break;
        }
    }
    return rational(0);
}

hyperreal hyperreal::operator-() const
{
    hyperreal out = *this;
    for (auto &t : out.m_terms) {
        t.coefficient = -t.coefficient;
    }
    return out;
}

hyperreal operator+(const hyperreal &x, const hyperreal &y)
{
    require_same_window(x, y);
    std::vector<term> terms;
    terms.reserve(x.m_terms.size() + y.m_terms.size());
    terms.insert(terms.end(), x.m_terms.begin(), x.m_terms.end());
    terms.insert(terms.end(), y.m_terms.begin(), y.m_terms.end());
    return hyperreal::from_terms(std::move(terms), x.m_window, x.m_saturated || y.m_saturated);
}

hyperreal operator-(const hyperreal &x, const hyperreal &y)
{
    return x + (-y);
}

hyperreal operator*(const hyperreal &x, const hyperreal &y)
{
    require_same_window(x, y);
    if (x.is_zero() || y.is_zero()) {
        return hyperreal(x.m_window);
    }
    rational cutoff = x.m_terms.front().exponent + y.m_terms.front().exponent + x.m_window;
    bool cut = false;
    auto terms = product_below(x.m_terms, y.m_terms, cutoff, cut);
    return hyperreal::from_terms(std::move(terms), x.m_window, cut || x.m_saturated || y.m_saturated);
}

hyperreal operator*(const hyperreal &x, const rational &c)
{
    if (sgn(c) == 0) {
        return hyperreal(x.m_window);
    }
    hyperreal out = x;
    for (auto &t : out.m_terms) {
        t.coefficient *= c;
    }
    return out;
}

hyperreal operator/(const hyperreal &x, const hyperreal &y)
{
    return x * inv(y);
}

bool operator==(const hyperreal &x, const hyperreal &y)
{
    return x.m_terms == y.m_terms;
}

std::strong_ordering operator<=>(const hyperreal &x, const hyperreal &y)
{
    return compare(x, y);
}

hyperreal epsilon(const rational &q, const rational &window)
{
    return hyperreal::monomial(rational(1), q, window);
}

hyperreal add(const hyperreal &x, const hyperreal &y)
{
    return x + y;
}
hyperreal sub(const hyperreal &x, const hyperreal &y)
{
    return x - y;
}
hyperreal neg(const hyperreal &x)
{
    return -x;
}
hyperreal mul(const hyperreal &x, const hyperreal &y)
{
    return x * y;
}
hyperreal div(const hyperreal &x, const hyperreal &y)
{
    return x / y;
}

namespace {

// Splits nonzero x = a eps^lambda (1 + u); returns u.
std::vector<term> relative_tail(const hyperreal &x)
{
    const auto &terms = x.terms();
    const rational &lambda = terms.front().exponent;
    const rational &a = terms.front().coefficient;
    std::vector<term> u;
    u.reserve(terms.size() - 1);
    for (std::size_t i = 1; i < terms.size(); ++i) {
        u.push_back({terms[i].exponent - lambda, terms[i].coefficient / a});
    }
    return u;
}

} // namespace

hyperreal inv(const hyperreal &x)
{
    if (x.is_zero()) {
        raise(error_kind::division_by_zero, "inverse of zero");
    }
    const rational &lambda = x.terms().front().exponent;
    rational a_inv = 1 / x.terms().front().coefficient;
    auto u = relative_tail(x);
    bool truncated = !u.empty();
    // (1 + u)^-1 = sum (-1)^k u^k
    auto series = power_series(u, x.window(), [](unsigned long k) { return rational(k % 2 == 0 ? 1 : -1); });
    for (auto &t : series) {
        t.exponent -= lambda;
        t.coefficient *= a_inv;
    }
    return hyperreal::from_terms(std::move(series), x.window(), truncated || x.saturated());
}

hyperreal pow(const hyperreal &x, long k)
{
    if (k < 0) {
        return inv(pow(x, -k));
    }
    hyperreal result(rational(1), x.window());
    hyperreal base = x;
    unsigned long e = static_cast<unsigned long>(k);
    while (e > 0) {
        if (e & 1UL) {
            result = result * base;
        }
        e >>= 1;
        if (e > 0) {
            base = base * base;
        }
    }
    return result;
}

hyperreal nth_root(const hyperreal &x, unsigned long n, unsigned precision)
{
    if (n == 0) {
        raise(error_kind::domain_error, "root degree must be positive");
    }
    if (x.is_zero()) {
        return x;
    }
    const rational &a = x.terms().front().coefficient;
    if (sgn(a) <= 0) {
        raise(error_kind::non_positive_leading, "root of value with leading coefficient " + to_string(a));
    }
    if (n == 1) {
        return x;
    }
    rational lambda = x.terms().front().exponent / static_cast<long>(n);
    rational ra = root(a, n, precision);
    auto u = relative_tail(x);
    bool truncated = !u.empty();
    rational r(1, static_cast<long>(n));
    auto series = power_series(u, x.window(), [&r](unsigned long k) { return binomial(r, k); });
    for (auto &t : series) {
        t.exponent += lambda;
        t.coefficient *= ra;
    }
    return hyperreal::from_terms(std::move(series), x.window(), truncated || x.saturated());
}

std::strong_ordering compare(const hyperreal &x, const hyperreal &y)
{
    hyperreal diff = y - x;
    if (diff.is_zero()) {
        return std::strong_ordering::equal;
    }
    return sgn(diff.leading_coefficient()) > 0 ? std::strong_ordering::less : std::strong_ordering::greater;
}

classification classify(const hyperreal &x)
{
    if (x.is_zero()) {
        return classification::zero;
    }
    int s = sgn(x.terms().front().exponent);
    if (s > 0) {
        return classification::infinitesimal;
    }
    if (s == 0) {
        return classification::appreciable;
    }
    return sgn(x.leading_coefficient()) > 0 ? classification::infinite_positive : classification::infinite_negative;
}

extended_real st(const hyperreal &x)
{
    switch (classify(x)) {
        case classification::infinite_positive:
            return extended_real::pos_infinity();
        case classification::infinite_negative:
            return extended_real::neg_infinity();
        default:
            return extended_real(x.coefficient(rational(0)));
    }
}

bool infinitely_close(const hyperreal &x, const hyperreal &y)
{
    return is_infinitesimal(x - y);
}

bool in_monad(const hyperreal &x, const rational &r)
{
    return infinitely_close(x, hyperreal(r, x.window()));
}

bool in_order_ideal(const hyperreal &x, const hyperreal &e)
{
    if (classify(e) != classification::infinitesimal) {
        raise(error_kind::not_infinitesimal, "order ideal generator must be a nonzero infinitesimal");
    }
    if (x.is_zero()) {
        return true;
    }
    return *x.leading_exponent() > *e.leading_exponent();
}

bool close_of_order(const hyperreal &a, const hyperreal &b, const hyperreal &e, long n)
{
    return in_order_ideal(a - b, pow(e, n));
}

hyperreal apply_analytic(analytic_fn f, const hyperreal &x, const field_config &cfg, const rational &power)
{
    if (!is_limited(x)) {
        raise(error_kind::transcendental_on_unlimited, "analytic function applied to an infinite argument");
    }
    const unsigned d = cfg.precision;
    const rational &window = x.window();
    rational s = st(x).value();
    hyperreal h = x - hyperreal(s, window);

    if (f == analytic_fn::pow_real && is_integer(power)) {
        return pow(x, power.get_num().get_si());
    }
    if (f == analytic_fn::tan) {
        rational c = approx_cos(s, d);
        if (cmp(abs(c), pow10(-static_cast<long>(d))) < 0) {
            raise(error_kind::domain_error, "tan undefined near " + to_string(s));
        }
        if (h.is_zero()) {
            return hyperreal(approx_tan(s, d), window);
        }
        // The quotient's constant term is sin(s)/cos(s) of two roundings;
        // pin it to the rounding used for standard arguments so increments
        // of tan stay infinitesimal.
        auto q = apply_analytic(analytic_fn::sin, x, cfg) / apply_analytic(analytic_fn::cos, x, cfg);
        std::vector<term> terms = q.terms();
        for (auto &t : terms) {
            if (sgn(t.exponent) == 0) {
                t.coefficient = approx_tan(s, d);
            }
        }
        return hyperreal::from_terms(std::move(terms), window, q.saturated());
    }

    // Taylor coefficients f^(k)(s) / k!.
    std::function<rational(unsigned long)> coeff;
    switch (f) {
        case analytic_fn::exp: {
            rational e = approx_exp(s, d);
            coeff = [e](unsigned long k) { return rational(e / rational(factorial(k))); };
            break;
        }
        case analytic_fn::ln: {
            if (sgn(s) <= 0) {
                raise(error_kind::domain_error, "ln requires a positive standard part, got " + to_string(s));
            }
            rational l0 = approx_ln(s, d);
            coeff = [l0, s](unsigned long k) {
                if (k == 0) {
                    return l0;
                }
                rational c(k % 2 == 1 ? 1 : -1, static_cast<long>(k));
                return rational(c / pow(s, static_cast<long>(k)));
            };
            break;
        }
        case analytic_fn::sin:
        case analytic_fn::cos: {
            rational sv = approx_sin(s, d);
            rational cv = approx_cos(s, d);
            // Derivative cycles starting at sin or cos.
            std::vector<rational> cycle = f == analytic_fn::sin ? std::vector<rational>{sv, cv, -sv, -cv}
                                                                 : std::vector<rational>{cv, -sv, -cv, sv};
            coeff = [cycle](unsigned long k) { return rational(cycle[k % 4] / rational(factorial(k))); };
            break;
        }
        case analytic_fn::pow_real: {
            if (sgn(s) <= 0) {
                raise(error_kind::domain_error, "real power requires a positive standard part, got " + to_string(s));
            }
            rational p = approx_pow(s, power, d);
            coeff = [p, s, power](unsigned long k) {
                return rational(binomial(power, k) * p / pow(s, static_cast<long>(k)));
            };
            break;
        }
        case analytic_fn::tan:
            break;
    }

    hyperreal result(coeff(0), window);
    if (h.is_zero()) {
        return result;
    }
    // One extra term covers results whose constant coefficient vanishes.
    integer count = ceil(window / *h.leading_exponent()) + 1;
    hyperreal hk(rational(1), window);
    for (unsigned long k = 1; k <= count.get_ui(); ++k) {
        hk = hk * h;
        result = result + hk * coeff(k);
    }
    return hyperreal::from_terms(result.terms(), window, true);
}

std::string to_string(const hyperreal &x)
{
    if (x.is_zero()) {
        return "0";
    }
    std::string out;
    for (const auto &t : x.terms()) {
        if (!out.empty()) {
            out += " + ";
        }
        out += to_string(t.coefficient);
        if (sgn(t.exponent) != 0) {
            out += "*eps^" + to_string(t.exponent);
        }
    }
    return out;
}

hyperreal parse_hyperreal(std::string_view text, const rational &window)
{
    std::vector<term> terms;
    if (text == "0") {
        return hyperreal(window);
    }
    std::size_t offset = 0;
    while (true) {
        std::size_t sep = text.find(" + ", offset);
        std::string_view piece = text.substr(offset, sep == std::string_view::npos ? std::string_view::npos : sep - offset);
        if (piece.empty()) {
            throw parse_error(offset, "term", offset >= text.size() ? "end of input" : "' '");
        }
        try {
            if (auto star = piece.find("*eps^"); star != std::string_view::npos) {
                rational c = parse_rational(piece.substr(0, star));
                rational e;
                try {
                    e = parse_rational(piece.substr(star + 5));
                } catch (const parse_error &err) {
                    throw parse_error(star + 5 + err.position().value_or(0), err.expected(), err.found());
                }
                terms.push_back({std::move(e), std::move(c)});
            } else {
                terms.push_back({rational(0), parse_rational(piece)});
            }
        } catch (const parse_error &err) {
            throw parse_error(offset + err.position().value_or(0), err.expected(), err.found());
        }
        if (sep == std::string_view::npos) {
            break;
        }
        offset = sep + 3;
    }
    for (std::size_t i = 1; i < terms.size(); ++i) {
        if (!(terms[i - 1].exponent < terms[i].exponent)) {
            throw parse_error(0, "strictly increasing exponents", to_string(terms[i].exponent));
        }
    }
    return hyperreal::from_terms(std::move(terms), window);
}

} // namespace hrw
