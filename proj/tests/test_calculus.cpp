#include <hrw/analytic.hpp>
#include <hrw/calculus.hpp>
#include <hrw/errors.hpp>
#include <hrw/eval.hpp>
#include <hrw/parser.hpp>
#include <hrw/symbolic.hpp>

#include <gtest/gtest.h>

using namespace hrw;

namespace {

rational q(long p, long d = 1)
{
    rational r(p, d);
    r.canonicalize();
    return r;
}

error_kind failure_of(const std::function<void()> &fn)
{
    try {
        fn();
    } catch (const error &e) {
        return e.kind();
    }
    ADD_FAILURE() << "no error raised";
    return error_kind::parse_error;
}

curve_def curve(std::initializer_list<const char *> parts)
{
    curve_def c;
    for (const char *p : parts)
        c.components.push_back(parse(p));
    return c;
}

bool within(const rational &a, const rational &b, long digits)
{
    return abs(a - b) < pow10(-digits);
}

extended_real fin(const rational &v)
{
    return extended_real(v);
}

} // namespace

TEST(TaylorJet, Exp)
{
    auto j = taylor_jet(parse("exp(x)"), "x", 0, 3);
    std::vector<rational> want{1, 1, q(1, 2), q(1, 6)};
    ASSERT_EQ(j.order(), 3u);
    for (std::size_t k = 0; k < 4; ++k)
        EXPECT_TRUE(within(j.coefficients[k], want[k], 40)) << k;
}

TEST(TaylorJet, CubeAtTwo)
{
    auto j = taylor_jet(parse("x^3"), "x", 2, 2);
    EXPECT_EQ(j.coefficients, (std::vector<rational>{8, 12, 6}));
}

TEST(TaylorJet, ReciprocalMatchesSymbolicOracle)
{
    auto f = parse("1/x");
    auto j = taylor_jet(f, "x", 1, 2);
    EXPECT_EQ(j.coefficients, (std::vector<rational>{1, -1, 1}));
    auto d1 = symbolic_derivative(f, "x");
    auto d2 = symbolic_derivative(d1, "x");
    EXPECT_EQ(j.coefficients[1], eval_real(d1, {{"x", 1}}));
    EXPECT_EQ(j.coefficients[2], eval_real(d2, {{"x", 1}}) / 2);
}

TEST(TaylorJet, Errors)
{
    EXPECT_EQ(failure_of([] { taylor_jet(parse("sqrt(x)"), "x", 0, 2); }), error_kind::non_smooth_at_point);
    EXPECT_EQ(failure_of([] { taylor_jet(parse("abs(x)"), "x", 0, 1); }), error_kind::non_smooth_at_point);
    EXPECT_EQ(failure_of([] { taylor_jet(parse("1/x"), "x", 0, 1); }), error_kind::domain_error);
    EXPECT_EQ(failure_of([] { taylor_jet(parse("x"), "x", 0, default_window); }), error_kind::domain_error);
}

TEST(Derivative, Examples)
{
    EXPECT_EQ(derivative(parse("x^3"), "x", 2, 1), 12);
    EXPECT_TRUE(within(derivative(parse("sin(x)"), "x", 0, 1), 1, 40));
    EXPECT_EQ(derivative(parse("x^5"), "x", 0, 5), 120);
}

TEST(Derivative, PolynomialsMatchSymbolicOracle)
{
    for (const char *text : {"x^4 - 3*x^2 + x", "(2*x - 1)^3", "x/(x^2 + 1)", "(x + 2)^2/(x - 4)"}) {
        auto f = parse(text);
        auto d = f;
        for (unsigned n = 1; n <= 3; ++n) {
            d = symbolic_derivative(d, "x");
            for (long k : {-3, 1, 5}) {
                rational x0 = q(k, 2);
                EXPECT_EQ(derivative(f, "x", x0, n), eval_real(d, {{"x", x0}})) << text << " n=" << n;
            }
        }
    }
}

TEST(NthIncrement, SecondDifferenceOfCube)
{
    auto inc = nth_increment(parse("x^3"), "x", 1, epsilon(), 2);
    EXPECT_EQ(inc, epsilon(2) * q(6) + epsilon(3) * q(6));
    EXPECT_EQ(st(inc / epsilon(2)), fin(6));
}

TEST(NthIncrement, FirstDifferenceOfSquare)
{
    auto inc = nth_increment(parse("x^2"), "x", 0, epsilon(), 1);
    EXPECT_EQ(inc, epsilon(2));
    EXPECT_EQ(st(inc / epsilon()), fin(0));
}

TEST(NthIncrement, ThirdDifferenceMatchesBinomialSum)
{
    auto f = parse("x^4");
    auto inc = nth_increment(f, "x", 1, epsilon(), 3);
    // Brute force: sum_k (-1)^k C(3,k) (1 + (3-k) h)^4 as a polynomial in h.
    hyperreal brute(rational(0), rational(default_window));
    long sign_k = 1;
    for (long k = 0; k <= 3; ++k, sign_k = -sign_k) {
        hyperreal base = hyperreal(rational(1), rational(default_window)) + epsilon() * rational(3 - k);
        brute = brute + pow(base, 4) * rational(sign_k * binomial(3, k));
    }
    EXPECT_EQ(inc, brute);
    EXPECT_EQ(st(inc / epsilon(3)), fin(24));
}

TEST(NthIncrement, NegativeStepGivesSameDerivative)
{
    auto f = parse("x^3 - x");
    for (unsigned n = 1; n <= 3; ++n) {
        auto up = nth_increment(f, "x", 2, epsilon(), n);
        auto down = nth_increment(f, "x", 2, -epsilon(), n);
        auto en = pow(epsilon(), long(n));
        auto back = pow(-epsilon(), long(n));
        EXPECT_EQ(st(up / en), st(down / back)) << n;
    }
}

TEST(SeqLimit, PowerOfReciprocal)
{
    auto r = seq_limit(parse("(1/n)^3"));
    EXPECT_EQ(r.value, fin(0));
    EXPECT_EQ(r.method, limit_method::field_evaluation);
}

TEST(SeqLimit, RootOfTwo)
{
    auto r = seq_limit(parse("2^(1/n)"));
    EXPECT_EQ(r.value, fin(1));
    EXPECT_EQ(r.method, limit_method::field_evaluation);
}

TEST(SeqLimit, NthRootOfNUsesFallback)
{
    auto r = seq_limit(parse("root(n, n)"));
    ASSERT_TRUE(r.value.has_value());
    ASSERT_TRUE(r.value->is_finite());
    EXPECT_LT(abs(r.value->value() - 1), q(1, 1000000));
    EXPECT_EQ(r.method, limit_method::numeric_fallback);
}

TEST(SeqLimit, SquareDiverges)
{
    auto r = seq_limit(parse("n^2"));
    EXPECT_EQ(r.value, extended_real::pos_infinity());
    EXPECT_EQ(r.method, limit_method::field_evaluation);
}

TEST(SeqLimit, GeometricWithNegativeRatio)
{
    auto r = seq_limit(parse("(-9/10)^n"));
    ASSERT_TRUE(r.value.has_value());
    EXPECT_EQ(*r.value, fin(0));
}

TEST(FnLimit, RemovableSingularity)
{
    auto r = fn_limit(parse("(x^2-1)/(x-1)"), "x", 1);
    EXPECT_EQ(r.value, fin(2));
}

TEST(FnLimit, PoleHasNoLimit)
{
    auto r = fn_limit(parse("1/x"), "x", 0);
    EXPECT_FALSE(r.exists());
    EXPECT_EQ(r.left, extended_real::neg_infinity());
    EXPECT_EQ(r.right, extended_real::pos_infinity());
}

TEST(FnLimit, SincAtZero)
{
    auto r = fn_limit(parse("sin(x)/x"), "x", 0);
    EXPECT_EQ(r.value, fin(1));
}

TEST(FnLimit, SignJump)
{
    auto r = fn_limit(parse("abs(x)/x"), "x", 0);
    EXPECT_FALSE(r.exists());
    EXPECT_EQ(r.left, fin(-1));
    EXPECT_EQ(r.right, fin(1));
}

TEST(FnLimit, MultivariateIsDirectional)
{
    auto r = fn_limit(parse("x*y/(x^2 + y^2)"), std::vector<std::string>{"x", "y"}, vec{0, 0});
    EXPECT_FALSE(r.exists());
    EXPECT_TRUE(r.directional_only);
    auto s = fn_limit(parse("x^2 + y"), std::vector<std::string>{"x", "y"}, vec{1, 2});
    EXPECT_EQ(s.value, fin(3));
}

TEST(Continuity, Examples)
{
    EXPECT_TRUE(continuity_check(parse("abs(x)"), "x", 0));
    EXPECT_TRUE(continuity_check(parse("x^2"), "x", 3));
    EXPECT_EQ(failure_of([] { continuity_check(parse("1/x"), "x", 0); }), error_kind::domain_error);
}

TEST(Tangent, CircleAtZero)
{
    auto c = curve({"cos(t)", "sin(t)"});
    auto t = unit_tangent(c, 0);
    EXPECT_TRUE(within(t[0], 0, 38));
    EXPECT_TRUE(within(t[1], 1, 38));
    EXPECT_TRUE(within(tangent_certificate(c, 0), 1, 38));
}

TEST(Tangent, ParabolaAtOne)
{
    auto c = curve({"t", "t^2"});
    auto t = unit_tangent(c, 1);
    // T = (1, 2)/sqrt(5): check direction and unit length.
    EXPECT_EQ(t[1], 2 * t[0]);
    EXPECT_TRUE(within(t[0] * t[0] + t[1] * t[1], 1, 38));
    EXPECT_TRUE(within(tangent_certificate(c, 1), 1, 38));
    vec flipped{-t[0], -t[1]};
    EXPECT_TRUE(within(tangent_certificate(c, 1, flipped), -1, 38));
}

TEST(Tangent, StationaryPointRaises)
{
    auto c = curve({"t^2", "t^2"});
    EXPECT_EQ(failure_of([&] { unit_tangent(c, 0); }), error_kind::zero_velocity);
}

TEST(Curvature, CircleOfRadiusTwo)
{
    auto c = curve({"2*cos(t)", "2*sin(t)"});
    for (rational t0 : {q(0), q(1, 3), q(-5, 2)}) {
        auto k = curvature(c, t0);
        EXPECT_TRUE(within(k.kappa, q(1, 2), 38));
        ASSERT_TRUE(k.center.has_value());
        EXPECT_TRUE(within((*k.center)[0], 0, 38));
        EXPECT_TRUE(within((*k.center)[1], 0, 38));
        EXPECT_TRUE(k.osculation_verified);
    }
}

TEST(Curvature, ParabolaAtVertex)
{
    auto k = curvature(curve({"t", "t^2"}), 0);
    EXPECT_EQ(k.kappa, 2);
    EXPECT_EQ(k.center, (vec{0, q(1, 2)}));
    EXPECT_EQ(k.radius, q(1, 2));
    EXPECT_TRUE(k.osculation_verified);
}

TEST(Curvature, ParabolaOffVertexMatchesFormula)
{
    // kappa = 2 / (1 + 4 t^2)^(3/2); at t = 3/8 the base is 25/16.
    auto k = curvature(curve({"t", "t^2"}), q(3, 8));
    EXPECT_EQ(k.kappa, rational(2) / (q(125, 64)));
}

TEST(Curvature, StraightLine)
{
    auto k = curvature(curve({"t", "3*t + 1"}), 0);
    EXPECT_EQ(k.kappa, 0);
    EXPECT_TRUE(k.straight_line);
    EXPECT_FALSE(k.center.has_value());
}

TEST(Jacobian, Examples)
{
    auto j = jacobian({parse("x^2*y"), parse("x+y")}, {"x", "y"}, {1, 2});
    EXPECT_EQ(j.matrix, (std::vector<vec>{{4, 1}, {1, 1}}));
    EXPECT_TRUE(j.residual_order_ok);
    EXPECT_EQ(jacobian({parse("x")}, {"x"}, {5}).matrix, (std::vector<vec>{{1}}));
    EXPECT_EQ(jacobian({parse("x*y")}, {"x", "y"}, {0, 0}).matrix, (std::vector<vec>{{0, 0}}));
}

TEST(Kinematics, Examples)
{
    auto fall = kinematics(parse("16*t^2"), "t", 1);
    EXPECT_EQ(fall.velocity, 32);
    EXPECT_EQ(fall.acceleration, 32);
    auto uniform = kinematics(parse("5*t"), "t", 3);
    EXPECT_EQ(uniform.velocity, 5);
    EXPECT_EQ(uniform.acceleration, 0);
    auto wave = kinematics(parse("sin(t)"), "t", 0);
    EXPECT_TRUE(within(wave.velocity, 1, 40));
    EXPECT_TRUE(within(wave.acceleration, 0, 40));
}

// y^2 = (x^3 - a b x + a^3)/d solved for the positive branch; the implicit
// slope is (3x^2 - a b)/(2 d y).
TEST(ImplicitCurve, SlopeFromExplicitBranch)
{
    struct row {
        rational a, b, d, x, y;
    };
    for (const auto &r : {row{1, 1, 1, 0, 1}, row{1, 1, 1, 1, 1}, row{1, 1, 1, 3, 5}, row{2, 3, 1, 2, 2}}) {
        real_env env{{"a", r.a}, {"b", r.b}, {"d", r.d}};
        auto y = parse("sqrt((x^3 - a*b*x + a^3)/d)");
        auto bound = parse("sqrt((x^3 - " + to_string(r.a * r.b) + "*x + " + to_string(r.a * r.a * r.a) + ")/" +
                           to_string(r.d) + ")");
        env["x"] = r.x;
        ASSERT_EQ(eval_real(y, env), r.y);
        rational slope = (3 * r.x * r.x - r.a * r.b) / (2 * r.d * r.y);
        EXPECT_EQ(derivative(bound, "x", r.x, 1), slope) << to_string(r.x);
    }
}
