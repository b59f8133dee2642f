#include <hrw/analytic.hpp>
#include <hrw/errors.hpp>
#include <hrw/eval.hpp>
#include <hrw/measures.hpp>
#include <hrw/symbolic.hpp>

namespace hrw {

namespace {

// Jets for first derivatives only need a window just above 1.
field_config jet_config(unsigned precision)
{
    return field_config{rational(4), precision};
}

struct line_grid {
    grid cells;
    std::vector<point> tags;
    rational width;
};

line_grid make_line_grid(const interval &ab, unsigned long m, const tagging &t)
{
    line_grid out{grid(rect({ab}), partition_spec::simple({m})), {}, (ab.hi - ab.lo) / m};
    out.tags.reserve(m);
    out.cells.for_each([&](std::uint64_t flat, const std::vector<std::size_t> &, const rect &cell) {
        out.tags.push_back(tag_of(cell, flat, t));
    });
    return out;
}

// Breakpoints followed by tags.
std::vector<rational> sample_points(const line_grid &g)
{
    std::vector<rational> out = g.cells.breaks(0);
    for (const auto &t : g.tags) {
        out.push_back(t[0]);
    }
    return out;
}

rational eval_at(const expr &f, const std::string &var, const rational &x, unsigned precision)
{
    return eval_real(f, real_env{{var, x}}, precision);
}

} // namespace

unsigned long cells_for_mesh(const interval &ab, const rational &mesh)
{
    return partition_spec::from_mesh(rect({ab}), mesh).breakpoints(rect({ab}))[0].size() - 1;
}

rational area_between(const expr &f, const expr &g, const interval &ab, unsigned long cells, const lab_options &opts)
{
    line_grid lg = make_line_grid(ab, cells, opts.tags);
    for (const auto &x : sample_points(lg)) {
        if (eval_at(f, "x", x, opts.precision) > eval_at(g, "x", x, opts.precision)) {
            raise(error_kind::order_violation, "lower curve exceeds upper curve at x = " + to_string(x));
        }
    }
    rational total(0);
    for (const auto &t : lg.tags) {
        total += eval_at(g, "x", t[0], opts.precision) - eval_at(f, "x", t[0], opts.precision);
    }
    return total * lg.width;
}

namespace {

void require_nonnegative(const expr &f, const line_grid &lg, unsigned precision)
{
    for (const auto &x : sample_points(lg)) {
        if (sgn(eval_at(f, "x", x, precision)) < 0) {
            raise(error_kind::negative_radius, "f(" + to_string(x) + ") < 0");
        }
    }
}

} // namespace

rational volume_of_revolution(const expr &f, const interval &ab, unsigned long cells, const lab_options &opts)
{
    line_grid lg = make_line_grid(ab, cells, opts.tags);
    require_nonnegative(f, lg, opts.precision);
    rational total(0);
    for (const auto &t : lg.tags) {
        rational r = eval_at(f, "x", t[0], opts.precision);
        total += r * r;
    }
    return approx_pi(opts.precision) * total * lg.width;
}

rational surface_of_revolution(const expr &f, const interval &ab, unsigned long cells, const lab_options &opts)
{
    line_grid lg = make_line_grid(ab, cells, opts.tags);
    require_nonnegative(f, lg, opts.precision);
    const field_config cfg = jet_config(opts.precision);
    rational total(0);
    for (const auto &t : lg.tags) {
        jet j = taylor_jet(f, "x", t[0], 1, cfg);
        const rational &slope = j.coefficients[1];
        total += j.coefficients[0] * sqrt(1 + slope * slope, opts.precision);
    }
    return 2 * approx_pi(opts.precision) * total * lg.width;
}

namespace {

point curve_at(const curve_def &c, const rational &t, unsigned precision)
{
    point p;
    for (const auto &comp : c.components) {
        p.push_back(eval_at(comp, c.parameter, t, precision));
    }
    return p;
}

point curve_velocity(const curve_def &c, const rational &t, unsigned precision)
{
    const field_config cfg = jet_config(precision);
    point v;
    for (const auto &comp : c.components) {
        v.push_back(derivative(comp, c.parameter, t, 1, cfg));
    }
    return v;
}

rational norm(const point &v, unsigned precision)
{
    rational s(0);
    for (const auto &x : v) {
        s += x * x;
    }
    return sqrt(s, precision);
}

} // namespace

length_result curve_length(const curve_def &c, const interval &ab, unsigned long cells, const lab_options &opts)
{
    line_grid lg = make_line_grid(ab, cells, opts.tags);
    length_result out{rational(0), rational(0)};
    point prev;
    for (const auto &t : lg.cells.breaks(0)) {
        point here = curve_at(c, t, opts.precision);
        if (!prev.empty()) {
            point chord;
            for (std::size_t i = 0; i < here.size(); ++i) {
                chord.push_back(here[i] - prev[i]);
            }
            out.polygonal += norm(chord, opts.precision);
        }
        prev = std::move(here);
    }
    for (const auto &t : lg.tags) {
        out.integral += norm(curve_velocity(c, t[0], opts.precision), opts.precision);
    }
    out.integral *= lg.width;
    return out;
}

work_result line_integral_work(const std::vector<expr> &field, const curve_def &c, const interval &ab,
                               unsigned long cells, const lab_options &opts)
{
    if (field.size() != c.dimension()) {
        raise(error_kind::domain_error, "field and curve dimensions differ");
    }
    std::vector<point_function> components;
    for (const auto &f : field) {
        components.emplace_back(f, c.dimension(), opts.precision);
    }
    line_grid lg = make_line_grid(ab, cells, opts.tags);
    const auto &breaks = lg.cells.breaks(0);
    work_result out{rational(0), rational(0)};
    point prev = curve_at(c, breaks[0], opts.precision);
    for (std::size_t j = 0; j < lg.tags.size(); ++j) {
        const rational &t = lg.tags[j][0];
        point at_tag = curve_at(c, t, opts.precision);
        point next = curve_at(c, breaks[j + 1], opts.precision);
        point velocity = curve_velocity(c, t, opts.precision);
        for (std::size_t i = 0; i < components.size(); ++i) {
            rational fi = components[i](at_tag);
            out.chord += fi * (next[i] - prev[i]);
            out.integrand += fi * velocity[i];
        }
        prev = std::move(next);
    }
    out.integrand *= lg.width;
    return out;
}

rational impulse(const expr &force, const interval &ab, unsigned long cells, const lab_options &opts,
                 const std::string &variable)
{
    sum_options so;
    so.tags = opts.tags;
    so.precision = opts.precision;
    so.variables = {variable};
    return riemann_sum(force, rect({ab}), partition_spec::simple({cells}), so);
}

point mass_result::centroid() const
{
    if (sgn(mass) == 0) {
        raise(error_kind::zero_mass, "mass sum is zero");
    }
    point out;
    for (const auto &m : moments) {
        out.push_back(m / mass);
    }
    return out;
}

mass_result mass_and_moments(const expr &rho, const region &j, const partition_spec &p, unsigned precision)
{
    const auto vars = axis_variables(j.bounding.dimension());
    std::vector<expr> integrands{rho};
    for (const auto &v : vars) {
        integrands.push_back(expr::binary(binary_op::mul, expr::variable(v), rho));
    }
    inner_result r = inner_sums(integrands, j, p, precision);
    mass_result out;
    out.mass = r.values[0];
    out.moments.assign(r.values.begin() + 1, r.values.end());
    out.counts = r.counts;
    return out;
}

rational moment_of_inertia(const expr &rho, const expr &integrand, const region &j, const partition_spec &p,
                           unsigned precision)
{
    return inner_sum(expr::binary(binary_op::mul, rho, integrand), j, p, precision).values[0];
}

rational morley_strip_sum(const rational &a, unsigned long n, morley_edge edge, unsigned precision)
{
    if (n == 0) {
        raise(error_kind::domain_error, "Morley sums need n >= 1");
    }
    integer cubes = 0;
    for (unsigned long p = 1; p <= n; ++p) {
        integer r = edge == morley_edge::outer ? integer(p) : integer(p - 1);
        cubes += r * r * r;
    }
    rational n4 = pow(rational(integer(n)), 4);
    return 2 * approx_pi(precision) * pow(a, 4) * rational(cubes) / n4;
}

rational morley_closed_form(const rational &a, unsigned long n, morley_edge edge, unsigned precision)
{
    rational inv(1, 1);
    inv /= integer(n);
    rational factor = edge == morley_edge::outer ? rational(1 + 2 * inv + inv * inv) : rational(1 - 2 * inv + inv * inv);
    return approx_pi(precision) * pow(a, 4) / 2 * factor;
}

supernear_report supernearness_probe(const set_functional &b, const expr &f, const interval &ab,
                                     const std::vector<rational> &meshes, unsigned precision)
{
    polynomial density;
    if (b.name == "integral") {
        if (b.generators.size() != 1) {
            raise(error_kind::domain_error, "'integral' takes one generator");
        }
        density = to_polynomial(b.generators[0], b.variable);
    } else if (b.name == "area-between") {
        if (b.generators.size() != 2) {
            raise(error_kind::domain_error, "'area-between' takes a lower and an upper generator");
        }
        density = to_polynomial(b.generators[1], b.variable) - to_polynomial(b.generators[0], b.variable);
    } else {
        raise(error_kind::unknown_functional, "no exact set functional named '" + b.name + "'");
    }

    supernear_report out;
    for (const auto &mesh : meshes) {
        line_grid lg = make_line_grid(ab, cells_for_mesh(ab, mesh), {});
        const auto &breaks = lg.cells.breaks(0);
        rational worst(0);
        for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
            const rational &u = breaks[i];
            const rational &v = breaks[i + 1];
            rational mean = density.integrate(u, v) / (v - u);
            for (const auto &p : {u, rational((u + v) / 2), v}) {
                worst = std::max(worst, rational(abs(mean - eval_at(f, b.variable, p, precision))));
            }
        }
        out.rows.push_back({lg.width, worst});
    }
    out.decreasing = !out.rows.empty();
    for (std::size_t i = 1; i < out.rows.size(); ++i) {
        out.decreasing = out.decreasing && out.rows[i].max_deviation <= out.rows[i - 1].max_deviation;
    }
    if (out.decreasing && out.rows.size() > 1) {
        const auto &first = out.rows.front().max_deviation;
        const auto &last = out.rows.back().max_deviation;
        out.decreasing = last < first || sgn(last) == 0;
    }
    if (out.decreasing) {
        const auto &first = out.rows.front();
        const auto &last = out.rows.back();
        out.toward_zero = last.max_deviation / last.mesh <= 2 * first.max_deviation / first.mesh;
    }
    return out;
}

} // namespace hrw
