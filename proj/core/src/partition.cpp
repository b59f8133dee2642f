#include <hrw/errors.hpp>
#include <hrw/eval.hpp>
#include <hrw/partition.hpp>

#include <algorithm>

namespace hrw {

rect::rect(std::vector<interval> axes) : m_axes(std::move(axes))
{
    if (m_axes.empty()) {
        raise(error_kind::domain_error, "rectangle needs at least one axis");
    }
    for (const auto &a : m_axes) {
        if (!(a.lo < a.hi)) {
            raise(error_kind::domain_error, "empty axis [" + to_string(a.lo) + ", " + to_string(a.hi) + "]");
        }
    }
}

rect rect::unit(std::size_t dimension)
{
    return rect(std::vector<interval>(dimension, interval{rational(0), rational(1)}));
}

rational rect::volume() const
{
    rational v(1);
    for (const auto &a : m_axes) {
        v *= a.hi - a.lo;
    }
    return v;
}

point rect::min_vertex() const
{
    point p;
    for (const auto &a : m_axes) {
        p.push_back(a.lo);
    }
    return p;
}

point rect::center() const
{
    point p;
    for (const auto &a : m_axes) {
        p.push_back((a.lo + a.hi) / 2);
    }
    return p;
}

bool rect::contains(const point &p) const
{
    if (p.size() != m_axes.size()) {
        return false;
    }
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] < m_axes[i].lo || p[i] > m_axes[i].hi) {
            return false;
        }
    }
    return true;
}

std::vector<std::string> axis_variables(std::size_t dimension)
{
    if (dimension <= 3) {
        std::vector<std::string> names{"x", "y", "z"};
        names.resize(dimension);
        return names;
    }
    std::vector<std::string> names;
    for (std::size_t i = 1; i <= dimension; ++i) {
        names.push_back("x" + std::to_string(i));
    }
    return names;
}

partition_spec partition_spec::simple(std::vector<unsigned long> cells_per_axis)
{
    if (cells_per_axis.empty()) {
        raise(error_kind::domain_error, "partition needs at least one axis");
    }
    for (auto m : cells_per_axis) {
        if (m == 0) {
            raise(error_kind::domain_error, "simple partitions need at least one cell per axis");
        }
    }
    partition_spec p;
    p.m_cells = std::move(cells_per_axis);
    return p;
}

partition_spec partition_spec::simple_uniform(std::size_t dimension, unsigned long cells)
{
    return simple(std::vector<unsigned long>(dimension, cells));
}

partition_spec partition_spec::from_mesh(const rect &r, const rational &mesh)
{
    if (sgn(mesh) <= 0) {
        raise(error_kind::domain_error, "mesh must be positive");
    }
    std::vector<unsigned long> cells;
    for (const auto &a : r.axes()) {
        integer m = ceil((a.hi - a.lo) / mesh);
        if (!m.fits_ulong_p()) {
            raise(error_kind::domain_error, "mesh " + to_string(mesh) + " needs too many cells");
        }
        cells.push_back(m.get_ui());
    }
    return simple(std::move(cells));
}

partition_spec partition_spec::explicit_breakpoints(std::vector<std::vector<rational>> breakpoints)
{
    if (breakpoints.empty()) {
        raise(error_kind::domain_error, "partition needs at least one axis");
    }
    for (const auto &axis : breakpoints) {
        if (axis.size() < 2) {
            raise(error_kind::domain_error, "explicit axes need at least two breakpoints");
        }
        for (std::size_t i = 1; i < axis.size(); ++i) {
            if (!(axis[i - 1] < axis[i])) {
                raise(error_kind::domain_error, "breakpoints must be strictly increasing");
            }
        }
    }
    partition_spec p;
    p.m_breakpoints = std::move(breakpoints);
    return p;
}

std::size_t partition_spec::dimension() const noexcept
{
    return is_simple() ? m_cells.size() : m_breakpoints.size();
}

std::vector<std::vector<rational>> partition_spec::breakpoints(const rect &r) const
{
    if (dimension() != r.dimension()) {
        raise(error_kind::domain_error, "partition dimension does not match the rectangle");
    }
    if (!is_simple()) {
        for (std::size_t i = 0; i < r.dimension(); ++i) {
            if (m_breakpoints[i].front() != r.axis(i).lo || m_breakpoints[i].back() != r.axis(i).hi) {
                raise(error_kind::domain_error, "breakpoints must start and end at the rectangle's endpoints");
            }
        }
        return m_breakpoints;
    }
    std::vector<std::vector<rational>> out;
    for (std::size_t i = 0; i < r.dimension(); ++i) {
        const auto &a = r.axis(i);
        rational width = (a.hi - a.lo) / m_cells[i];
        std::vector<rational> axis;
        axis.reserve(m_cells[i] + 1);
        for (unsigned long k = 0; k < m_cells[i]; ++k) {
            axis.push_back(a.lo + width * k);
        }
        axis.push_back(a.hi);
        out.push_back(std::move(axis));
    }
    return out;
}

partition_spec partition_spec::refined() const
{
    if (is_simple()) {
        std::vector<unsigned long> cells = m_cells;
        for (auto &m : cells) {
            m *= 2;
        }
        return simple(std::move(cells));
    }
    std::vector<std::vector<rational>> out;
    for (const auto &axis : m_breakpoints) {
        std::vector<rational> finer;
        for (std::size_t i = 0; i + 1 < axis.size(); ++i) {
            finer.push_back(axis[i]);
            finer.push_back((axis[i] + axis[i + 1]) / 2);
        }
        finer.push_back(axis.back());
        out.push_back(std::move(finer));
    }
    return explicit_breakpoints(std::move(out));
}

std::string_view to_string(tag_rule rule)
{
    switch (rule) {
    case tag_rule::corner_nearest_origin:
        return "corner-nearest-origin";
    case tag_rule::center:
        return "center";
    case tag_rule::min_vertex:
        return "min-vertex";
    case tag_rule::seeded_random:
        return "seeded-random";
    }
    return "?";
}

std::optional<tag_rule> tag_rule_from_name(std::string_view name)
{
    for (auto r : {tag_rule::corner_nearest_origin, tag_rule::center, tag_rule::min_vertex, tag_rule::seeded_random}) {
        if (to_string(r) == name) {
            return r;
        }
    }
    return std::nullopt;
}

namespace {

std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Uniform dyadic fraction in [0, 1) with 53 bits.
rational unit_fraction(std::uint64_t bits)
{
    integer numerator;
    mpz_import(numerator.get_mpz_t(), 1, 1, sizeof(bits), 0, 0, &bits);
    numerator >>= 11;
    integer denominator = 1;
    denominator <<= 53;
    rational u(numerator, denominator);
    u.canonicalize();
    return u;
}

} // namespace

point tag_of(const rect &cell, std::uint64_t cell_index, const tagging &t)
{
    point p;
    p.reserve(cell.dimension());
    for (std::size_t i = 0; i < cell.dimension(); ++i) {
        const auto &a = cell.axis(i);
        switch (t.rule) {
        case tag_rule::corner_nearest_origin:
            p.push_back(abs(a.hi) < abs(a.lo) ? a.hi : a.lo);
            break;
        case tag_rule::center:
            p.push_back((a.lo + a.hi) / 2);
            break;
        case tag_rule::min_vertex:
            p.push_back(a.lo);
            break;
        case tag_rule::seeded_random: {
            std::uint64_t h = splitmix64(splitmix64(t.seed ^ splitmix64(cell_index)) + i);
            p.push_back(a.lo + (a.hi - a.lo) * unit_fraction(h));
            break;
        }
        }
    }
    return p;
}

grid::grid(const rect &r, const partition_spec &p) : m_breaks(p.breakpoints(r))
{
    for (const auto &axis : m_breaks) {
        m_count *= axis.size() - 1;
    }
}

rational grid::mesh() const
{
    rational widest(0);
    for (const auto &axis : m_breaks) {
        for (std::size_t i = 1; i < axis.size(); ++i) {
            widest = std::max(widest, rational(axis[i] - axis[i - 1]));
        }
    }
    return widest;
}

rect grid::cell(const std::vector<std::size_t> &index) const
{
    std::vector<interval> axes;
    axes.reserve(index.size());
    for (std::size_t i = 0; i < index.size(); ++i) {
        axes.push_back({m_breaks[i][index[i]], m_breaks[i][index[i] + 1]});
    }
    return rect(std::move(axes));
}

rect grid::cell(std::uint64_t flat) const
{
    return cell(unflatten(flat));
}

std::vector<std::size_t> grid::unflatten(std::uint64_t flat) const
{
    std::vector<std::size_t> index(m_breaks.size());
    for (std::size_t i = m_breaks.size(); i-- > 0;) {
        std::uint64_t n = m_breaks[i].size() - 1;
        index[i] = flat % n;
        flat /= n;
    }
    return index;
}

void grid::for_each(const std::function<void(std::uint64_t, const std::vector<std::size_t> &, const rect &)> &fn) const
{
    std::vector<std::size_t> index(m_breaks.size(), 0);
    for (std::uint64_t flat = 0; flat < m_count; ++flat) {
        fn(flat, index, cell(index));
        for (std::size_t i = index.size(); i-- > 0;) {
            if (++index[i] + 1 < m_breaks[i].size()) {
                break;
            }
            index[i] = 0;
        }
    }
}

tagged_partition make_tagged(const rect &r, const partition_spec &p, const tagging &t)
{
    grid g(r, p);
    tagged_partition out;
    out.rule = t.rule;
    out.cells.reserve(g.cell_count());
    out.tags.reserve(g.cell_count());
    g.for_each([&](std::uint64_t flat, const std::vector<std::size_t> &, const rect &cell) {
        out.tags.push_back(tag_of(cell, flat, t));
        out.cells.push_back(cell);
    });
    return out;
}

point_function::point_function(expr f, std::size_t dimension, unsigned precision)
    : point_function(std::move(f), axis_variables(dimension), precision)
{
}

point_function::point_function(expr f, std::vector<std::string> variables, unsigned precision)
    : m_expr(std::move(f)), m_vars(std::move(variables)), m_precision(precision)
{
    for (const auto &v : free_variables(m_expr)) {
        if (std::find(m_vars.begin(), m_vars.end(), v) == m_vars.end() && !is_named_constant(v)) {
            raise(error_kind::domain_error, "unbound variable '" + v + "'");
        }
    }
}

rational point_function::operator()(const point &p) const
{
    real_env env;
    for (std::size_t i = 0; i < m_vars.size(); ++i) {
        env.emplace(m_vars[i], p[i]);
    }
    return eval_real(m_expr, env, m_precision);
}

} // namespace hrw
