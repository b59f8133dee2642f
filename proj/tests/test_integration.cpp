#include <hrw/analytic.hpp>
#include <hrw/convergence.hpp>
#include <hrw/errors.hpp>
#include <hrw/gauge.hpp>
#include <hrw/measures.hpp>
#include <hrw/parser.hpp>
#include <hrw/partition.hpp>
#include <hrw/quadrature.hpp>
#include <hrw/report.hpp>
#include <hrw/sums.hpp>

#include <gtest/gtest.h>
#include <json.hpp>

#include <cmath>

using namespace hrw;

namespace {

rational q(long p, long d = 1)
{
    rational r(p, d);
    r.canonicalize();
    return r;
}

rect box(std::initializer_list<std::pair<long, long>> axes)
{
    std::vector<interval> v;
    for (auto [lo, hi] : axes)
        v.push_back({lo, hi});
    return rect(v);
}

sum_options tagged(tag_rule r, std::uint64_t seed = 0)
{
    sum_options o;
    o.tags = {r, seed};
    return o;
}

lab_options lab(tag_rule r)
{
    lab_options o;
    o.tags = {r, 0};
    return o;
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

double d(const rational &x)
{
    return to_double(x);
}

const rational pi_ref = parse_rational("3.14159265358979323846264338327950288419716939937510");

curve_def curve(std::initializer_list<const char *> parts)
{
    curve_def c;
    for (const char *p : parts)
        c.components.push_back(parse(p));
    return c;
}

} // namespace

TEST(Partition, FromMeshRoundsCellCountUp)
{
    auto r = box({{0, 1}, {-1, 2}});
    grid g(r, partition_spec::from_mesh(r, q(1, 4)));
    EXPECT_EQ(g.cell_count(), 4u * 12u);
    EXPECT_EQ(g.mesh(), q(1, 4));
    grid h(r, partition_spec::from_mesh(r, q(2, 5)));
    EXPECT_EQ(h.breaks(0).size(), 4u);
    EXPECT_LE(h.mesh(), q(2, 5));
}

TEST(Partition, RowMajorOrder)
{
    grid g(box({{0, 1}, {0, 1}}), partition_spec::simple({2, 3}));
    std::vector<std::vector<std::size_t>> seen;
    g.for_each([&](std::uint64_t flat, const std::vector<std::size_t> &idx, const rect &) {
        EXPECT_EQ(g.unflatten(flat), idx);
        seen.push_back(idx);
    });
    ASSERT_EQ(seen.size(), 6u);
    EXPECT_EQ(seen[1], (std::vector<std::size_t>{0, 1}));
    EXPECT_EQ(seen[3], (std::vector<std::size_t>{1, 0}));
}

TEST(Partition, RefinementHalvesCells)
{
    auto r = box({{0, 1}});
    auto p = partition_spec::explicit_breakpoints({{0, q(1, 3), 1}}).refined();
    EXPECT_EQ(p.breakpoints(r)[0], (std::vector<rational>{0, q(1, 6), q(1, 3), q(2, 3), 1}));
}

TEST(Tags, RulesPickExpectedPoints)
{
    auto cell = box({{-2, -1}, {1, 3}});
    EXPECT_EQ(tag_of(cell, 0, {tag_rule::min_vertex, 0}), (point{-2, 1}));
    EXPECT_EQ(tag_of(cell, 0, {tag_rule::center, 0}), (point{q(-3, 2), 2}));
    EXPECT_EQ(tag_of(cell, 0, {tag_rule::corner_nearest_origin, 0}), (point{-1, 1}));
}

TEST(Tags, SeededRandomIsDeterministicAndInside)
{
    auto cell = box({{0, 1}, {5, 7}});
    for (std::uint64_t i = 0; i < 50; ++i) {
        auto a = tag_of(cell, i, {tag_rule::seeded_random, 42});
        EXPECT_EQ(a, tag_of(cell, i, {tag_rule::seeded_random, 42}));
        EXPECT_TRUE(cell.contains(a));
    }
    EXPECT_NE(tag_of(cell, 3, {tag_rule::seeded_random, 1}), tag_of(cell, 3, {tag_rule::seeded_random, 2}));
}

TEST(Riemann, LinearWithMinVertexTags)
{
    EXPECT_EQ(riemann_sum(parse("x"), box({{0, 1}}), partition_spec::simple({4}), tagged(tag_rule::min_vertex)),
              q(3, 8));
}

TEST(Riemann, ConstantGivesVolume)
{
    auto r = box({{-1, 2}, {0, 3}});
    auto p = partition_spec::explicit_breakpoints({{-1, q(1, 7), 2}, {0, 1, q(5, 2), 3}});
    for (auto rule : {tag_rule::min_vertex, tag_rule::center, tag_rule::seeded_random})
        EXPECT_EQ(riemann_sum(parse("7/2"), r, p, tagged(rule, 11)), q(7, 2) * r.volume());
}

TEST(Riemann, ProductWithCenterTags)
{
    EXPECT_EQ(riemann_sum(parse("x*y"), rect::unit(2), partition_spec::simple({2, 2}), tagged(tag_rule::center)),
              q(1, 4));
}

TEST(Riemann, SeededRandomIndependentOfEnumeration)
{
    auto r = box({{0, 1}, {0, 1}});
    auto p = partition_spec::simple({5, 3});
    auto tp = make_tagged(r, p, {tag_rule::seeded_random, 9});
    // Sum in reverse cell order as an independent reduction.
    rational reverse = 0;
    point_function f(parse("x^2*y + 1"), 2, default_precision);
    for (std::size_t i = tp.size(); i-- > 0;)
        reverse += f(tp.tags[i]) * tp.cells[i].volume();
    EXPECT_EQ(riemann_sum(parse("x^2*y + 1"), r, p, tagged(tag_rule::seeded_random, 9)), reverse);
}

TEST(Darboux, MonotoneLinear)
{
    auto b = darboux_bounds(parse("x"), rect::unit(1), partition_spec::simple({4}));
    EXPECT_EQ(b.lower, q(3, 8));
    EXPECT_EQ(b.upper, q(5, 8));
    EXPECT_EQ(b.nonmonotone_cells, 0u);
}

TEST(Darboux, Constant)
{
    auto r = box({{0, 2}, {1, 4}});
    auto b = darboux_bounds(parse("-3"), r, partition_spec::simple({3, 2}));
    EXPECT_EQ(b.lower, -3 * r.volume());
    EXPECT_EQ(b.upper, -3 * r.volume());
}

TEST(Darboux, ParabolaWithInteriorSample)
{
    darboux_options o;
    o.samples = 3;
    auto b = darboux_bounds(parse("x^2"), box({{-1, 1}}), partition_spec::simple({2}), o);
    EXPECT_EQ(b.lower, 0);
    EXPECT_EQ(b.upper, 2);
}

TEST(Darboux, SandwichAndRefinement)
{
    auto r = box({{-1, 1}, {0, 1}});
    for (const char *text : {"x^2 + y", "x*y - y^2", "exp(x)*y"}) {
        auto f = parse(text);
        auto p = partition_spec::simple({2, 2});
        darboux_result prev{};
        for (int level = 0; level < 3; ++level, p = p.refined()) {
            for (auto rule : {tag_rule::min_vertex, tag_rule::center, tag_rule::seeded_random}) {
                darboux_options o;
                o.include_tags = tagging{rule, 5};
                auto b = darboux_bounds(f, r, p, o);
                auto s = riemann_sum(f, r, p, tagged(rule, 5));
                EXPECT_LE(b.lower, s) << text;
                EXPECT_LE(s, b.upper) << text;
            }
            auto b = darboux_bounds(f, r, p);
            if (level > 0) {
                EXPECT_GE(b.lower, prev.lower) << text;
                EXPECT_LE(b.upper, prev.upper) << text;
            }
            prev = b;
        }
    }
}

TEST(InnerSum, DiscCellClassification)
{
    region disc{box({{-1, 1}, {-1, 1}}), parse("x^2 + y^2 - 1"), std::nullopt};
    auto r = inner_sum(parse("1"), disc, partition_spec::simple({4, 4}));
    EXPECT_EQ(r.counts.inner, 4u);
    EXPECT_EQ(r.inner_volume, 1);
    EXPECT_EQ(r.values[0], 1);
    EXPECT_EQ(r.counts.total(), 16u);
}

TEST(InnerSum, FullAndEmptyRegions)
{
    auto r = box({{0, 1}, {0, 2}});
    auto p = partition_spec::simple({3, 4});
    auto f = parse("x + y^2");
    auto full = inner_sum(f, region{r, parse("-1"), std::nullopt}, p);
    EXPECT_EQ(full.counts.inner, 12u);
    EXPECT_EQ(full.values[0], riemann_sum(f, r, p, tagged(tag_rule::min_vertex)));
    auto empty = inner_sum(f, region{r, parse("1"), std::nullopt}, p);
    EXPECT_EQ(empty.values[0], 0);
    EXPECT_EQ(empty.counts.exterior, 12u);
}

TEST(InnerSum, BoundaryVolumeShrinks)
{
    region disc{box({{-1, 1}, {-1, 1}}), parse("x^2 + y^2 - 1"), std::nullopt};
    rational prev = 5;
    for (unsigned long m : {8ul, 16ul, 32ul, 64ul}) {
        auto r = inner_sum(parse("1"), disc, partition_spec::simple({m, m}));
        EXPECT_EQ(r.counts.total(), m * m);
        EXPECT_LT(r.boundary_volume, prev);
        prev = r.boundary_volume;
    }
    EXPECT_LT(prev, q(1, 2));
}

TEST(Measure, AreaBetween)
{
    interval unit{0, 1};
    rational prev_err = 1;
    for (unsigned long m : {10ul, 100ul, 1000ul}) {
        auto a = area_between(parse("0"), parse("x^2"), unit, m);
        // Left sum of x^2: (m-1) m (2m-1) / (6 m^3).
        rational mm(static_cast<long>(m));
        EXPECT_EQ(a, (mm - 1) * mm * (2 * mm - 1) / (6 * mm * mm * mm));
        rational err = abs(a - q(1, 3));
        EXPECT_LT(err, prev_err);
        prev_err = err;
    }
    EXPECT_EQ(area_between(parse("x^3"), parse("x^3"), unit, 17), 0);
    auto pi = approx_pi(default_precision);
    auto s = area_between(parse("0"), parse("sin(x)"), interval{0, pi}, 1000);
    EXPECT_NEAR(d(s), 2.0, 1e-5);
}

TEST(Measure, AreaOrderViolation)
{
    EXPECT_EQ(failure_of([] { area_between(parse("1"), parse("x"), interval{0, 2}, 4); }),
              error_kind::order_violation);
}

TEST(Measure, CylinderAndCone)
{
    auto pi = approx_pi(default_precision);
    EXPECT_EQ(volume_of_revolution(parse("3"), interval{0, 2}, 7), pi * 9 * 2);
    EXPECT_EQ(surface_of_revolution(parse("3"), interval{0, 2}, 7), 2 * pi * 3 * 2);
    auto cone = volume_of_revolution(parse("x"), interval{0, 1}, 2000, lab(tag_rule::center));
    EXPECT_NEAR(d(cone), M_PI / 3, 1e-6);
    auto lateral = surface_of_revolution(parse("x"), interval{0, 1}, 2000, lab(tag_rule::center));
    EXPECT_NEAR(d(lateral), std::sqrt(2.0) * M_PI, 1e-6);
    EXPECT_EQ(failure_of([] { volume_of_revolution(parse("x"), interval{-1, 1}, 4); }),
              error_kind::negative_radius);
}

TEST(Measure, SegmentLength)
{
    auto c = curve({"t", "2*t"});
    auto sqrt5 = hrw::sqrt(rational(5), default_precision);
    for (unsigned long m : {1ul, 3ul, 64ul}) {
        auto r = curve_length(c, interval{0, 1}, m);
        EXPECT_LT(abs(r.polygonal - sqrt5), pow10(-38));
        EXPECT_LT(abs(r.integral - sqrt5), pow10(-38));
    }
}

TEST(Measure, ParabolaLength)
{
    auto r = curve_length(curve({"t", "t^2"}), interval{0, 1}, 512, lab(tag_rule::center));
    double want = (2 * std::sqrt(5.0) + std::asinh(2.0)) / 4;
    EXPECT_NEAR(d(r.polygonal), want, 1e-5);
    EXPECT_NEAR(d(r.integral), want, 1e-5);
}

TEST(Measure, QuarterCircleLength)
{
    auto pi = approx_pi(default_precision);
    auto r = curve_length(curve({"cos(t)", "sin(t)"}), interval{0, pi / 2}, 256);
    EXPECT_NEAR(d(r.polygonal), M_PI / 2, 1e-5);
    EXPECT_LT(abs(r.integral - pi_ref / 2), pow10(-30));
}

TEST(Measure, MassAndCentroid)
{
    region square{rect::unit(2), parse("-1"), rational(1)};
    auto uniform = mass_and_moments(parse("1"), square, partition_spec::simple({16, 16}));
    EXPECT_EQ(uniform.mass, 1);
    auto cu = uniform.centroid();
    // Min-vertex tags put each first moment at 1/2 - 1/(2m).
    EXPECT_EQ(cu, (point{q(15, 32), q(15, 32)}));

    auto ramp = mass_and_moments(parse("x"), square, partition_spec::simple({64, 64}));
    EXPECT_EQ(ramp.mass, q(63, 128));
    EXPECT_NEAR(d(ramp.centroid()[0]), 2.0 / 3.0, 0.02);
    EXPECT_EQ(failure_of([&] { mass_and_moments(parse("0"), square, partition_spec::simple({2, 2})).centroid(); }),
              error_kind::zero_mass);
}

TEST(Measure, DiscMomentImprovesWithMesh)
{
    region disc{box({{-1, 1}, {-1, 1}}), parse("x^2 + y^2 - 1"), std::nullopt};
    double prev = 1;
    for (unsigned long m : {16ul, 32ul, 64ul}) {
        auto v = moment_of_inertia(parse("1"), parse("x^2 + y^2"), disc, partition_spec::simple({m, m}));
        double err = std::abs(d(v) - M_PI / 2) / (M_PI / 2);
        EXPECT_LT(err, prev);
        prev = err;
    }
    EXPECT_LT(prev, 0.2);
}

TEST(Morley, TenRings)
{
    auto pi = approx_pi(default_precision);
    EXPECT_EQ(morley_strip_sum(1, 10, morley_edge::outer), pi / 2 * q(121, 100));
    EXPECT_EQ(morley_strip_sum(1, 10, morley_edge::inner), pi / 2 * q(81, 100));
    EXPECT_EQ(morley_strip_sum(q(3, 2), 7, morley_edge::outer), morley_closed_form(q(3, 2), 7, morley_edge::outer));
}

TEST(Morley, LargeN)
{
    auto pi = approx_pi(default_precision);
    for (auto edge : {morley_edge::outer, morley_edge::inner}) {
        auto v = morley_strip_sum(1, 1000000, edge);
        EXPECT_LT(abs(v - pi / 2) / (pi / 2), q(1, 100000));
    }
}

TEST(Work, GradientFieldOnParabola)
{
    auto w = line_integral_work({parse("y"), parse("x")}, curve({"t", "t^2"}), interval{0, 1}, 256);
    EXPECT_NEAR(d(w.chord), 1.0, 1e-4);
    EXPECT_NEAR(d(w.integrand), 1.0, 1e-4);
    EXPECT_LT(abs(w.chord - w.integrand), q(1, 10000));
}

TEST(Work, PathIndependence)
{
    // F = grad(x y); both curves run from (0,0) to (1,1).
    std::vector<expr> field{parse("y"), parse("x")};
    auto a = line_integral_work(field, curve({"t", "t^3"}), interval{0, 1}, 512);
    auto b = line_integral_work(field, curve({"sin(pi*t/2)", "t"}), interval{0, 1}, 512);
    EXPECT_NEAR(d(a.integrand), d(b.integrand), 1e-4);
}

TEST(Work, TrivialFields)
{
    auto zero = line_integral_work({parse("0"), parse("0")}, curve({"t", "t^2"}), interval{0, 1}, 9);
    EXPECT_EQ(zero.chord, 0);
    EXPECT_EQ(zero.integrand, 0);
    for (unsigned long m : {1ul, 5ul, 32ul}) {
        auto unit = line_integral_work({parse("1"), parse("0")}, curve({"t", "0"}), interval{0, 1}, m);
        EXPECT_EQ(unit.chord, 1);
        EXPECT_EQ(unit.integrand, 1);
    }
}

TEST(Stieltjes, Examples)
{
    interval unit{0, 1};
    for (unsigned long m : {1ul, 4ul, 33ul})
        EXPECT_EQ(riemann_stieltjes_sum(parse("1"), parse("x^2"), unit, partition_spec::simple({m})), 1);
    auto s = riemann_stieltjes_sum(parse("x"), parse("x^2"), unit, partition_spec::simple({1000}),
                                   tagged(tag_rule::center));
    EXPECT_NEAR(d(s), 2.0 / 3.0, 1e-6);
    EXPECT_EQ(riemann_stieltjes_sum(parse("exp(x)"), parse("4"), unit, partition_spec::simple({8})), 0);
}

TEST(Impulse, Examples)
{
    auto pi = approx_pi(default_precision);
    EXPECT_NEAR(d(impulse(parse("sin(t)"), interval{0, pi}, 500)), 2.0, 1e-4);
    EXPECT_EQ(impulse(parse("5/3"), interval{q(-1, 2), 4}, 13), q(5, 3) * q(9, 2));
    // Left sum of t on [0, 2]: 2 - 2/m.
    EXPECT_EQ(impulse(parse("t"), interval{0, 2}, 100), 2 - q(2, 100));
}

TEST(Cousin, WideGaugeGivesOneCell)
{
    auto tp = cousin_partition(gauge{parse("1")}, interval{0, 1});
    ASSERT_EQ(tp.size(), 1u);
    EXPECT_EQ(tp.cells[0], box({{0, 1}}));
}

TEST(Cousin, VariableGaugeIsFine)
{
    gauge g{parse("x/2 + 1/100")};
    for (auto mode : {gauge_mode::tag_in_cell, gauge_mode::mcshane}) {
        auto tp = cousin_partition(g, interval{0, 1}, mode);
        EXPECT_TRUE(is_delta_fine(tp, g));
        rational covered = 0;
        for (std::size_t i = 0; i < tp.size(); ++i) {
            const auto &cell = tp.cells[i].axis(0);
            rational x = tp.tags[i][0];
            rational delta = x / 2 + q(1, 100);
            EXPECT_GE(cell.lo, x - delta);
            EXPECT_LE(cell.hi, x + delta);
            if (mode == gauge_mode::tag_in_cell) {
                EXPECT_LE(cell.lo, x);
                EXPECT_LE(x, cell.hi);
            }
            covered += cell.hi - cell.lo;
        }
        EXPECT_EQ(covered, 1);
    }
}

TEST(Cousin, TinyGaugeHitsDepthCap)
{
    EXPECT_EQ(failure_of([] { cousin_partition(gauge{parse("10^(-30)")}, interval{0, 1}); }),
              error_kind::depth_exceeded);
}

TEST(GaugeSum, Examples)
{
    auto s = gauge_sum(parse("x"), interval{0, 1}, gauge{parse("1/100")});
    EXPECT_LE(abs(s - q(1, 2)), q(1, 100));
    for (const char *delta : {"1/3", "x^2 + 1/50", "1/(1 + 10*x)"})
        EXPECT_EQ(gauge_sum(parse("1"), interval{0, 1}, gauge{parse(delta)}), 1) << delta;
    auto m = gauge_sum(parse("x^2"), interval{0, 1}, gauge{parse("1/1000")}, gauge_mode::mcshane);
    EXPECT_LE(abs(m - q(1, 3)), q(1, 100));
}

TEST(Supernear, MatchedGenerator)
{
    set_functional b{"integral", {parse("x^2")}};
    std::vector<rational> meshes{q(1, 4), q(1, 8), q(1, 16), q(1, 32)};
    auto r = supernearness_probe(b, parse("x^2"), interval{0, 1}, meshes);
    ASSERT_EQ(r.rows.size(), 4u);
    for (const auto &row : r.rows)
        EXPECT_LE(row.max_deviation, 2 * row.mesh);
    EXPECT_TRUE(r.decreasing);
    EXPECT_TRUE(r.toward_zero);
}

TEST(Supernear, ConstantAndMismatched)
{
    std::vector<rational> meshes{q(1, 2), q(1, 4), q(1, 8)};
    auto c = supernearness_probe({"integral", {parse("3")}}, parse("3"), interval{0, 1}, meshes);
    for (const auto &row : c.rows)
        EXPECT_EQ(row.max_deviation, 0);
    auto bad = supernearness_probe({"integral", {parse("x^2")}}, parse("x"), interval{0, 1}, meshes);
    EXPECT_FALSE(bad.toward_zero);
    EXPECT_GT(bad.rows.back().max_deviation, q(1, 10));
    EXPECT_EQ(failure_of([&] { supernearness_probe({"volume", {parse("x")}}, parse("x"), interval{0, 1}, meshes); }),
              error_kind::unknown_functional);
}

TEST(Supernear, AreaBetween)
{
    set_functional b{"area-between", {parse("x"), parse("x^2 + 1")}};
    auto r = supernearness_probe(b, parse("x^2 + 1 - x"), interval{0, 1}, {q(1, 4), q(1, 16), q(1, 64)});
    EXPECT_TRUE(r.decreasing);
}

namespace {

convergence_report square_study()
{
    std::vector<rational> meshes;
    for (long k = 3; k <= 12; ++k)
        meshes.push_back(q(1, 1L << k));
    auto f = parse("x^2");
    auto r = rect::unit(1);
    mesh_target t = [&](const rational &h) {
        auto p = partition_spec::from_mesh(r, h);
        return std::pair{grid(r, p).mesh(), riemann_sum(f, r, p)};
    };
    return converge_study("riemann", {{"f", "x^2"}, {"region", "[0,1]"}}, meshes, t, closed_form_oracle(q(1, 3)));
}

} // namespace

TEST(Convergence, SquareRiemann)
{
    auto rep = square_study();
    ASSERT_EQ(rep.rows.size(), 10u);
    for (std::size_t i = 1; i < rep.rows.size(); ++i)
        EXPECT_LT(*rep.rows[i].error, *rep.rows[i - 1].error);
    EXPECT_LT(*rep.rows.back().error, q(1, 1000));
    EXPECT_LT(abs(rep.estimate - q(1, 3)), q(1, 1000000));
    EXPECT_EQ(rep.order, 1u);
    EXPECT_EQ(rep.label, "finite-scale emulation");
}

TEST(Convergence, ConstantHasZeroError)
{
    auto r = rect::unit(1);
    mesh_target t = [&](const rational &h) {
        auto p = partition_spec::from_mesh(r, h);
        return std::pair{grid(r, p).mesh(), riemann_sum(parse("2"), r, p)};
    };
    auto rep = converge_study("riemann", {}, {q(1, 2), q(1, 4), q(1, 8)}, t, closed_form_oracle(2));
    for (const auto &row : rep.rows)
        EXPECT_EQ(row.error, rational(0));
}

TEST(Convergence, MeshesMustDecrease)
{
    mesh_target t = [](const rational &h) { return std::pair{h, h}; };
    EXPECT_EQ(failure_of([&] { converge_study("x", {}, {q(1, 4), q(1, 2)}, t, oracle{}); }),
              error_kind::domain_error);
}

TEST(Convergence, QuadratureOracleMatchesClosedForm)
{
    auto o = quadrature_oracle(parse("exp(x)"), "x", 0, 1);
    ASSERT_TRUE(o.value.has_value());
    EXPECT_EQ(o.source, "adaptive-simpson");
    EXPECT_NEAR(d(*o.value), std::exp(1.0) - 1, 1e-10);
    auto r = adaptive_simpson([](double x) { return 1 / (1 + x * x); }, 0, 1);
    EXPECT_TRUE(r.converged);
    EXPECT_NEAR(r.value, M_PI / 4, 1e-10);
}

TEST(Convergence, DualNumbersGiveDerivatives)
{
    auto [v, dv] = eval_double_dual(parse("x^3*sin(x) + sqrt(1 + x^2)"), "x", 0.7);
    double x = 0.7;
    EXPECT_NEAR(v, x * x * x * std::sin(x) + std::sqrt(1 + x * x), 1e-14);
    EXPECT_NEAR(dv, 3 * x * x * std::sin(x) + x * x * x * std::cos(x) + x / std::sqrt(1 + x * x), 1e-13);
}

TEST(Report, JsonShape)
{
    auto rep = square_study();
    auto j = nlohmann::json::parse(render_json(rep));
    EXPECT_EQ(j["operation"], "riemann");
    EXPECT_EQ(j["label"], "finite-scale emulation");
    ASSERT_EQ(j["rows"].size(), 10u);
    EXPECT_EQ(j["rows"][0]["mesh"], "1/8");
    EXPECT_EQ(j["oracle"], "1/3");
    EXPECT_EQ(j["oracle_source"], "closed-form");
    EXPECT_TRUE(j["estimate"].is_string());
    EXPECT_TRUE(j["error"].is_string());
    EXPECT_EQ(render_json(rep), render_json(square_study()));
    auto text = render_text(rep);
    EXPECT_NE(text.find("finite-scale emulation"), std::string::npos);
}
