#include <hrw/analytic.hpp>
#include <hrw/errors.hpp>
#include <hrw/hyperreal.hpp>

#include <gtest/gtest.h>

#include <random>

using namespace hrw;

namespace {

const rational W{default_window};

hyperreal c(const rational &v)
{
    return hyperreal(v, W);
}

hyperreal eps(const rational &q = rational(1))
{
    return epsilon(q, W);
}

rational q(long p, long d = 1)
{
    rational r(p, d);
    r.canonicalize();
    return r;
}

void expect_kind(error_kind kind, const std::function<void()> &fn)
{
    try {
        fn();
        ADD_FAILURE() << "expected " << name(kind);
    } catch (const error &e) {
        EXPECT_EQ(e.kind(), kind) << e.what();
    }
}

// Up to four terms with exponents p/d in [lo, 3], d in {1, 2}, and
// coefficients n/m with |n| <= 9, m <= 4.
hyperreal random_series(std::mt19937_64 &rng, long lo)
{
    std::uniform_int_distribution<long> nterms(0, 4), num(-9, 9), den(1, 4), half(1, 2);
    std::vector<term> terms;
    for (long i = nterms(rng); i > 0; --i) {
        long d = half(rng);
        std::uniform_int_distribution<long> ex(lo * d, 3 * d);
        terms.push_back({rational(ex(rng), d), rational(num(rng), den(rng))});
        terms.back().exponent.canonicalize();
        terms.back().coefficient.canonicalize();
    }
    return hyperreal::from_terms(terms, W);
}

} // namespace

TEST(Epsilon, CanonicalGenerator)
{
    auto e = eps();
    ASSERT_EQ(e.terms().size(), 1u);
    EXPECT_EQ(e.terms()[0].exponent, 1);
    EXPECT_EQ(e.terms()[0].coefficient, 1);
}

TEST(Epsilon, InverseIsInfinitePositive)
{
    EXPECT_EQ(classify(eps(-1)), classification::infinite_positive);
}

TEST(Epsilon, HalfPowerSquares)
{
    EXPECT_EQ(eps(q(1, 2)) * eps(q(1, 2)), eps());
}

TEST(Add, Cancellation)
{
    EXPECT_EQ((c(3) + eps()) + (c(2) - eps()), c(5));
}

TEST(Add, TwoTerms)
{
    auto s = eps() + eps(2);
    std::vector<term> want{{1, 1}, {2, 1}};
    EXPECT_EQ(s.terms(), want);
}

TEST(Add, InverseGivesZero)
{
    auto x = c(3) + eps(q(1, 3)) * q(-7, 2);
    EXPECT_TRUE((x + neg(x)).is_zero());
}

TEST(Mul, DifferenceOfSquares)
{
    EXPECT_EQ((c(1) + eps()) * (c(1) - eps()), c(1) - eps(2));
}

TEST(Mul, EpsTimesGamma)
{
    EXPECT_EQ(eps() * eps(-1), c(1));
}

TEST(Mul, InfinitesimalTimesLimited)
{
    EXPECT_EQ(classify(eps(q(3, 2)) * (c(-40) + eps())), classification::infinitesimal);
}

TEST(Inv, GeometricSeries)
{
    auto r = inv(c(1) - eps());
    std::vector<term> want;
    for (long k = 0; k < default_window; ++k)
        want.push_back({k, 1});
    EXPECT_EQ(r.terms(), want);
    EXPECT_TRUE(r.saturated());
}

TEST(Inv, OfEpsilon)
{
    EXPECT_EQ(inv(eps()), eps(-1));
}

TEST(Inv, OfTwo)
{
    EXPECT_EQ(inv(c(2)), c(q(1, 2)));
}

TEST(Inv, ZeroRaises)
{
    expect_kind(error_kind::division_by_zero, [] { inv(c(0)); });
}

TEST(NthRoot, SquareRootSquaresBack)
{
    auto x = c(4) + eps() * q(4);
    auto r = nth_root(x, 2);
    EXPECT_EQ(r.coefficient(0), 2);
    EXPECT_EQ(r.coefficient(1), 1);
    EXPECT_EQ(r.coefficient(2), q(-1, 4));
    auto sq = r * r;
    for (long k = 0; k < default_window; ++k)
        EXPECT_EQ(sq.coefficient(k), x.coefficient(k)) << "k=" << k;
}

TEST(NthRoot, OfEpsilon)
{
    EXPECT_EQ(nth_root(eps(), 2), eps(q(1, 2)));
}

TEST(NthRoot, CubeRootOfEight)
{
    EXPECT_EQ(nth_root(c(8), 3), c(2));
}

TEST(NthRoot, NonPositiveLeading)
{
    expect_kind(error_kind::non_positive_leading, [] { nth_root(c(-1) + eps(), 2); });
}

TEST(Compare, EpsilonBelowSmallReal)
{
    EXPECT_EQ(compare(eps(), c(q(1, 1000000))), std::strong_ordering::less);
}

TEST(Compare, GammaAboveLargeReal)
{
    EXPECT_EQ(compare(eps(-1), c(1000000000)), std::strong_ordering::greater);
}

TEST(Compare, ShiftedConstant)
{
    EXPECT_EQ(compare(c(3) + eps(), c(3)), std::strong_ordering::greater);
    EXPECT_TRUE(c(3) - eps(5) < c(3));
}

TEST(Classify, Examples)
{
    EXPECT_EQ(classify(eps(2)), classification::infinitesimal);
    EXPECT_EQ(classify(c(5) + eps()), classification::appreciable);
    EXPECT_EQ(classify(c(7) - eps(-1)), classification::infinite_negative);
    EXPECT_EQ(classify(c(0)), classification::zero);
}

TEST(StandardPart, Examples)
{
    EXPECT_EQ(st((c(3) + eps()) * (c(2) - eps())), extended_real(rational(6)));
    EXPECT_EQ(st(inv(eps())), extended_real::pos_infinity());
    EXPECT_EQ(st(eps(5) - eps()), extended_real(rational(0)));
    EXPECT_EQ(st(c(1) - eps(-2)), extended_real::neg_infinity());
}

TEST(InfinitelyClose, Examples)
{
    EXPECT_TRUE(infinitely_close(c(3) + eps(), c(3) - eps(2)));
    EXPECT_FALSE(infinitely_close(c(3), c(q(30001, 10000))));
    auto x = c(q(-5, 3)) + eps(q(1, 2)) * q(9);
    EXPECT_TRUE(infinitely_close(x, c(st(x).value())));
    EXPECT_TRUE(in_monad(x, q(-5, 3)));
    EXPECT_FALSE(in_monad(x, q(-5, 4)));
}

TEST(OrderIdeal, Examples)
{
    EXPECT_TRUE(in_order_ideal(eps(2), eps()));
    EXPECT_FALSE(in_order_ideal(eps() * q(1, 2), eps()));
    EXPECT_TRUE(close_of_order(c(7) + eps(3), c(7), eps(), 2));
    EXPECT_FALSE(close_of_order(c(7) + eps(2), c(7), eps(), 2));
    EXPECT_TRUE(in_order_ideal(c(0), eps()));
}

TEST(OrderIdeal, RejectsNonInfinitesimalGenerator)
{
    expect_kind(error_kind::not_infinitesimal, [] { in_order_ideal(eps(2), c(1)); });
}

TEST(Analytic, ExpOfEpsilon)
{
    field_config cfg;
    auto r = apply_analytic(analytic_fn::exp, eps(), cfg);
    rational f = 1;
    for (long k = 0; k <= 8; ++k) {
        if (k > 0)
            f /= k;
        EXPECT_EQ(r.coefficient(k), f) << "k=" << k;
    }
}

TEST(Analytic, SinOverEpsilon)
{
    field_config cfg;
    auto r = apply_analytic(analytic_fn::sin, eps(), cfg) / eps();
    EXPECT_EQ(st(r), extended_real(rational(1)));
}

TEST(Analytic, ExpOfInfiniteRaises)
{
    field_config cfg;
    expect_kind(error_kind::transcendental_on_unlimited,
                [&] { apply_analytic(analytic_fn::exp, eps(-1), cfg); });
}

TEST(Analytic, ShiftedBaseUsesApproximation)
{
    field_config cfg;
    auto r = apply_analytic(analytic_fn::exp, c(1) + eps(), cfg);
    auto e = approx_e(cfg.precision);
    EXPECT_EQ(r.coefficient(0), e);
    EXPECT_EQ(r.coefficient(1), e);
    EXPECT_EQ(r.coefficient(2), e / 2);
}

TEST(Text, RoundTrip)
{
    auto x = c(3) + eps() - eps(2) * q(1, 4) + eps(q(-1, 2)) * q(5, 7);
    EXPECT_EQ(parse_hyperreal(to_string(x)), x);
    EXPECT_EQ(to_string(c(0)), "0");
    EXPECT_EQ(parse_hyperreal("0"), c(0));
}

TEST(Window, TruncationFlagsSaturation)
{
    auto big = eps(-1) + eps(default_window);
    EXPECT_TRUE(big.saturated());
    EXPECT_EQ(big, eps(-1));
}

TEST(Properties, RingLawsOnLimitedPairs)
{
    std::mt19937_64 rng(20240611);
    for (int i = 0; i < 200; ++i) {
        auto x = random_series(rng, 0), y = random_series(rng, 0), z = random_series(rng, 0);
        EXPECT_EQ(x + y, y + x);
        EXPECT_EQ(x * y, y * x);
        EXPECT_EQ((x + y) + z, x + (y + z));
        EXPECT_TRUE(is_limited(x + y));
        EXPECT_TRUE(is_limited(x * y));
        EXPECT_EQ(st(x + y).value(), st(x).value() + st(y).value());
        EXPECT_EQ(st(x * y).value(), st(x).value() * st(y).value());
        if (!is_infinitesimal(y)) {
            EXPECT_EQ(st(x / y).value(), st(x).value() / st(y).value());
        }
    }
}

TEST(Properties, OrderIsTotalAndCompatible)
{
    std::mt19937_64 rng(99);
    for (int i = 0; i < 200; ++i) {
        auto x = random_series(rng, -1), y = random_series(rng, -1), z = random_series(rng, -1);
        auto xy = compare(x, y);
        EXPECT_EQ(compare(y, x), 0 <=> xy);
        EXPECT_EQ(compare(x + z, y + z), xy);
        EXPECT_EQ(xy == 0, (x - y).is_zero());
    }
}

TEST(Properties, InfinitesimalsAbsorb)
{
    std::mt19937_64 rng(7);
    for (int i = 0; i < 200; ++i) {
        auto h = random_series(rng, 0) * eps(q(1, 2));
        auto l = random_series(rng, 0);
        EXPECT_TRUE(is_infinitesimal(h * l));
        EXPECT_TRUE(is_infinitesimal(h + h * l));
    }
}
