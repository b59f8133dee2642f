#include <hrw/errors.hpp>
#include <hrw/rational.hpp>

#include <cctype>
#include <string>

namespace hrw {

namespace {

bool all_digits(std::string_view s)
{
    if (s.empty()) {
        return false;
    }
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) {
            return false;
        }
    }
    return true;
}

std::string describe(std::string_view text, std::size_t pos)
{
    if (pos >= text.size()) {
        return "end of input";
    }
    return "'" + std::string(1, text[pos]) + "'";
}

} // namespace

rational parse_rational(std::string_view text)
{
    std::size_t pos = 0;
    bool negative = false;
    if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) {
        negative = text[pos] == '-';
        ++pos;
    }
    auto body = text.substr(pos);
    rational out;
    if (auto slash = body.find('/'); slash != std::string_view::npos) {
        auto num = body.substr(0, slash);
        auto den = body.substr(slash + 1);
        if (!all_digits(num)) {
            throw parse_error(pos, "digits", describe(text, pos));
        }
        if (!all_digits(den)) {
            throw parse_error(pos + slash + 1, "digits", describe(text, pos + slash + 1));
        }
        integer d(std::string(den), 10);
        if (d == 0) {
            throw parse_error(pos + slash + 1, "nonzero denominator", "0");
        }
        out = rational(integer(std::string(num), 10), d);
        out.canonicalize();
    } else if (auto dot = body.find('.'); dot != std::string_view::npos) {
        auto whole = body.substr(0, dot);
        auto frac = body.substr(dot + 1);
        if (!all_digits(whole)) {
            throw parse_error(pos, "digits", describe(text, pos));
        }
        if (!all_digits(frac)) {
            throw parse_error(pos + dot + 1, "digits", describe(text, pos + dot + 1));
        }
        integer scale;
        mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
        out = rational(integer(std::string(whole) + std::string(frac), 10), scale);
        out.canonicalize();
    } else {
        if (!all_digits(body)) {
            std::size_t bad = pos;
            while (bad < text.size() && std::isdigit(static_cast<unsigned char>(text[bad]))) {
                ++bad;
            }
            throw parse_error(bad, "rational number", describe(text, bad));
        }
        out = rational(integer(std::string(body), 10));
    }
    return negative ? rational(-out) : out;
}

std::string to_string(const rational &q)
{
    return q.get_str(10);
}

std::string to_decimal(const rational &q, unsigned digits)
{
    integer scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, digits);
    rational scaled = abs(q) * scale;
    // Round half away from zero.
    integer n = floor(scaled + rational(1, 2));
    std::string s = n.get_str(10);
    if (digits > 0) {
        if (s.size() <= digits) {
            s.insert(0, digits + 1 - s.size(), '0');
        }
        s.insert(s.size() - digits, 1, '.');
    }
    if (sgn(q) < 0 && n != 0) {
        s.insert(0, 1, '-');
    }
    return s;
}

double to_double(const rational &q)
{
    return q.get_d();
}

rational pow(const rational &base, long exponent)
{
    if (exponent == 0) {
        return rational(1);
    }
    unsigned long e = exponent < 0 ? static_cast<unsigned long>(-exponent) : static_cast<unsigned long>(exponent);
    integer num, den;
    mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), e);
    mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), e);
    rational out = exponent < 0 ? rational(den, num) : rational(num, den);
    out.canonicalize();
    return out;
}

rational pow10(long k)
{
    integer p;
    mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(k < 0 ? -k : k));
    return k < 0 ? rational(integer(1), p) : rational(p);
}

integer floor(const rational &q)
{
    integer out;
    mpz_fdiv_q(out.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return out;
}

integer ceil(const rational &q)
{
    integer out;
    mpz_cdiv_q(out.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return out;
}

bool is_integer(const rational &q)
{
    return q.get_den() == 1;
}

rational binomial(const rational &r, unsigned long k)
{
    rational out(1);
    for (unsigned long i = 0; i < k; ++i) {
        out *= (r - i);
        out /= static_cast<long>(i + 1);
    }
    return out;
}

integer factorial(unsigned long n)
{
    integer out;
    mpz_fac_ui(out.get_mpz_t(), n);
    return out;
}

} // namespace hrw
