#include <hrw/analytic.hpp>
#include <hrw/errors.hpp>

#include <mpfr.h>

#include <cmath>
#include <map>
#include <mutex>

namespace hrw {

namespace {

// Results whose binary exponent exceeds this are reported as overflow.
constexpr long max_result_bits = 1L << 20;

class mp_float
{
public:
    explicit mp_float(mpfr_prec_t prec)
    {
        mpfr_init2(m_value, prec);
    }
    ~mp_float()
    {
        mpfr_clear(m_value);
    }
    mp_float(const mp_float &) = delete;
    mp_float &operator=(const mp_float &) = delete;

    mpfr_ptr get()
    {
        return m_value;
    }

private:
    mpfr_t m_value;
};

mpfr_prec_t base_bits(unsigned d)
{
    return static_cast<mpfr_prec_t>((d + 1) * 3.3219280948873623) + 64;
}

long magnitude_bits(const rational &x)
{
    if (cmp(abs(x), 1) < 0) {
        return 0;
    }
    return static_cast<long>(mpz_sizeinbase(x.get_num_mpz_t(), 2)) - static_cast<long>(mpz_sizeinbase(x.get_den_mpz_t(), 2)) + 2;
}

integer grid_scale(unsigned d)
{
    integer s;
    mpz_ui_pow_ui(s.get_mpz_t(), 10, d + 1);
    return s;
}

rational round_to_grid(mpfr_ptr v, unsigned d)
{
    if (mpfr_zero_p(v)) {
        return rational(0);
    }
    integer scale = grid_scale(d);
    mp_float scaled(mpfr_get_prec(v) + static_cast<mpfr_prec_t>(mpz_sizeinbase(scale.get_mpz_t(), 2)) + 2);
    mpfr_mul_z(scaled.get(), v, scale.get_mpz_t(), MPFR_RNDN);
    integer n;
    mpfr_get_z(n.get_mpz_t(), scaled.get(), MPFR_RNDN);
    rational out(n, scale);
    out.canonicalize();
    return out;
}

// Evaluates `fn(out, in)` with enough working precision that the rounded
// result lies within 10^-d of the true value, growing the precision when the
// result turns out to be large.
template <typename Fn>
rational evaluate(const char *what, const rational &x, unsigned d, long extra_bits, Fn &&fn)
{
    mpfr_prec_t prec = base_bits(d) + extra_bits;
    for (int attempt = 0; attempt < 4; ++attempt) {
        mp_float in(prec + magnitude_bits(x));
        mpfr_set_q(in.get(), x.get_mpq_t(), MPFR_RNDN);
        mp_float out(prec);
        fn(out.get(), in.get(), prec);
        if (mpfr_nan_p(out.get())) {
            raise(error_kind::domain_error, std::string(what) + " undefined at " + to_string(x));
        }
        if (mpfr_inf_p(out.get())) {
            raise(error_kind::domain_error, std::string(what) + " overflows at " + to_string(x));
        }
        if (mpfr_zero_p(out.get())) {
            return rational(0);
        }
        long e = mpfr_get_exp(out.get());
        if (e > max_result_bits) {
            raise(error_kind::domain_error, std::string(what) + " overflows at " + to_string(x));
        }
        mpfr_prec_t needed = base_bits(d) + extra_bits + (e > 0 ? e : 0);
        if (prec >= needed) {
            return round_to_grid(out.get(), d);
        }
        prec = needed;
    }
    raise(error_kind::domain_error, std::string(what) + ": precision did not stabilise");
}

rational cached_constant(std::map<unsigned, rational> &cache, std::mutex &mutex, unsigned d,
                         int (*fn)(mpfr_ptr, mpfr_rnd_t))
{
    std::lock_guard<std::mutex> lock(mutex);
    if (auto it = cache.find(d); it != cache.end()) {
        return it->second;
    }
    mp_float v(base_bits(d));
    fn(v.get(), MPFR_RNDN);
    rational out = round_to_grid(v.get(), d);
    cache.emplace(d, out);
    return out;
}

} // namespace

rational approx_exp(const rational &x, unsigned d)
{
    // Beyond this the result cannot be represented under max_result_bits.
    if (cmp(x, max_result_bits) > 0) {
        raise(error_kind::domain_error, "exp overflows at " + to_string(x));
    }
    return evaluate("exp", x, d, 0, [](mpfr_ptr out, mpfr_ptr in, mpfr_prec_t) { mpfr_exp(out, in, MPFR_RNDN); });
}

rational approx_ln(const rational &x, unsigned d)
{
    if (sgn(x) <= 0) {
        raise(error_kind::domain_error, "ln requires a positive argument, got " + to_string(x));
    }
    if (x == 1) {
        return rational(0);
    }
    return evaluate("ln", x, d, 0, [](mpfr_ptr out, mpfr_ptr in, mpfr_prec_t) { mpfr_log(out, in, MPFR_RNDN); });
}

rational approx_sin(const rational &x, unsigned d)
{
    if (sgn(x) == 0) {
        return rational(0);
    }
    return evaluate("sin", x, d, 0, [](mpfr_ptr out, mpfr_ptr in, mpfr_prec_t) { mpfr_sin(out, in, MPFR_RNDN); });
}

rational approx_cos(const rational &x, unsigned d)
{
    if (sgn(x) == 0) {
        return rational(1);
    }
    return evaluate("cos", x, d, 0, [](mpfr_ptr out, mpfr_ptr in, mpfr_prec_t) { mpfr_cos(out, in, MPFR_RNDN); });
}

rational approx_tan(const rational &x, unsigned d)
{
    if (sgn(x) == 0) {
        return rational(0);
    }
    // The derivative 1/cos^2 amplifies input rounding near the poles.
    long extra = 0;
    {
        mp_float in(base_bits(d) + magnitude_bits(x));
        mpfr_set_q(in.get(), x.get_mpq_t(), MPFR_RNDN);
        mp_float c(base_bits(d));
        mpfr_cos(c.get(), in.get(), MPFR_RNDN);
        if (mpfr_zero_p(c.get())) {
            raise(error_kind::domain_error, "tan undefined at " + to_string(x));
        }
        long e = mpfr_get_exp(c.get());
        extra = e < 0 ? -2 * e + 8 : 0;
    }
    return evaluate("tan", x, d, extra, [](mpfr_ptr out, mpfr_ptr in, mpfr_prec_t) { mpfr_tan(out, in, MPFR_RNDN); });
}

rational approx_pow(const rational &x, const rational &r, unsigned d)
{
    if (is_integer(r)) {
        return integer_power(x, r.get_num(), d);
    }
    if (sgn(x) <= 0) {
        raise(error_kind::domain_error, "real power requires a positive base, got " + to_string(x));
    }
    long extra = magnitude_bits(r) + 16;
    return evaluate("pow", x, d, extra, [&r](mpfr_ptr out, mpfr_ptr in, mpfr_prec_t prec) {
        mp_float exponent(prec + 64);
        mpfr_set_q(exponent.get(), r.get_mpq_t(), MPFR_RNDN);
        mpfr_pow(out, in, exponent.get(), MPFR_RNDN);
    });
}

rational integer_power(const rational &x, const integer &k, unsigned d)
{
    if (sgn(x) == 0) {
        if (sgn(k) < 0) {
            raise(error_kind::division_by_zero, "zero raised to a negative power");
        }
        return sgn(k) == 0 ? rational(1) : rational(0);
    }
    constexpr double exact_limit_bits = 65536;
    double size = static_cast<double>(mpz_sizeinbase(x.get_num_mpz_t(), 2) + mpz_sizeinbase(x.get_den_mpz_t(), 2));
    if (k.fits_slong_p() && std::fabs(k.get_d()) * size <= exact_limit_bits) {
        return pow(x, k.get_si());
    }
    rational r(k);
    long extra = magnitude_bits(r) + 16;
    rational magnitude = evaluate("pow", abs(x), d, extra, [&r](mpfr_ptr out, mpfr_ptr in, mpfr_prec_t prec) {
        mp_float exponent(prec + 64);
        mpfr_set_q(exponent.get(), r.get_mpq_t(), MPFR_RNDN);
        mpfr_pow(out, in, exponent.get(), MPFR_RNDN);
    });
    return sgn(x) < 0 && mpz_odd_p(k.get_mpz_t()) ? rational(-magnitude) : magnitude;
}

rational approx_pi(unsigned d)
{
    static std::map<unsigned, rational> cache;
    static std::mutex mutex;
    return cached_constant(cache, mutex, d, mpfr_const_pi);
}

rational approx_e(unsigned d)
{
    static std::map<unsigned, rational> cache;
    static std::mutex mutex;
    std::lock_guard<std::mutex> lock(mutex);
    if (auto it = cache.find(d); it != cache.end()) {
        return it->second;
    }
    mp_float one(base_bits(d));
    mpfr_set_ui(one.get(), 1, MPFR_RNDN);
    mp_float v(base_bits(d));
    mpfr_exp(v.get(), one.get(), MPFR_RNDN);
    rational out = round_to_grid(v.get(), d);
    cache.emplace(d, out);
    return out;
}

std::optional<rational> exact_root(const rational &x, unsigned long n)
{
    if (sgn(x) < 0 || n == 0) {
        return std::nullopt;
    }
    if (n == 1) {
        return x;
    }
    integer num, den;
    if (mpz_root(num.get_mpz_t(), x.get_num_mpz_t(), n) == 0) {
        return std::nullopt;
    }
    if (mpz_root(den.get_mpz_t(), x.get_den_mpz_t(), n) == 0) {
        return std::nullopt;
    }
    rational out(num, den);
    out.canonicalize();
    return out;
}

rational root(const rational &x, unsigned long n, unsigned d)
{
    if (n == 0) {
        raise(error_kind::domain_error, "root degree must be positive");
    }
    if (sgn(x) < 0) {
        raise(error_kind::domain_error, "root of negative value " + to_string(x));
    }
    if (auto r = exact_root(x, n)) {
        return *r;
    }
    return evaluate("root", x, d, 0, [n](mpfr_ptr out, mpfr_ptr in, mpfr_prec_t) { mpfr_rootn_ui(out, in, n, MPFR_RNDN); });
}

} // namespace hrw
