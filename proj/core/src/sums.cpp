#include <hrw/errors.hpp>
#include <hrw/eval.hpp>
#include <hrw/sums.hpp>

namespace hrw {

namespace {

point_function bind_point_function(const expr &f, std::size_t dimension, const std::vector<std::string> &variables, unsigned precision)
{
    if (variables.empty()) {
        return point_function(f, dimension, precision);
    }
    if (variables.size() != dimension) {
        raise(error_kind::domain_error, "variable list does not match the dimension");
    }
    return point_function(f, variables, precision);
}

// All points lo + (hi - lo) k / (s - 1) of a cell, plus a flag telling
// whether each is a vertex.
void sample_cell(const rect &cell, unsigned s, const std::function<void(const point &, bool)> &fn)
{
    const std::size_t n = cell.dimension();
    std::vector<unsigned> k(n, 0);
    point p(n);
    while (true) {
        bool vertex = true;
        for (std::size_t i = 0; i < n; ++i) {
            const auto &a = cell.axis(i);
            p[i] = a.lo + (a.hi - a.lo) * rational(k[i], s - 1);
            vertex = vertex && (k[i] == 0 || k[i] == s - 1);
        }
        fn(p, vertex);
        std::size_t i = n;
        while (i-- > 0) {
            if (++k[i] < s) {
                break;
            }
            k[i] = 0;
        }
        if (i == static_cast<std::size_t>(-1)) {
            return;
        }
    }
}

} // namespace

rational riemann_sum(const expr &f, const rect &r, const partition_spec &p, const sum_options &opts)
{
    point_function fn = bind_point_function(f, r.dimension(), opts.variables, opts.precision);
    grid g(r, p);
    rational total(0);
    g.for_each([&](std::uint64_t flat, const std::vector<std::size_t> &, const rect &cell) {
        total += fn(tag_of(cell, flat, opts.tags)) * cell.volume();
    });
    return total;
}

rational riemann_sum(const expr &f, const tagged_partition &tp, const sum_options &opts)
{
    if (tp.cells.empty()) {
        return rational(0);
    }
    point_function fn = bind_point_function(f, tp.cells.front().dimension(), opts.variables, opts.precision);
    rational total(0);
    for (std::size_t q = 0; q < tp.size(); ++q) {
        total += fn(tp.tags[q]) * tp.cells[q].volume();
    }
    return total;
}

darboux_result darboux_bounds(const expr &f, const rect &r, const partition_spec &p, const darboux_options &opts)
{
    if (opts.samples < 2) {
        raise(error_kind::domain_error, "Darboux sampling needs at least two points per axis");
    }
    point_function fn = bind_point_function(f, r.dimension(), opts.variables, opts.precision);
    grid g(r, p);
    darboux_result out{rational(0), rational(0), 0};
    g.for_each([&](std::uint64_t flat, const std::vector<std::size_t> &, const rect &cell) {
        std::optional<rational> lo, hi, vertex_lo, vertex_hi;
        auto visit = [&](const point &x, bool vertex) {
            rational v = fn(x);
            if (!lo || v < *lo) {
                lo = v;
            }
            if (!hi || v > *hi) {
                hi = v;
            }
            if (vertex) {
                if (!vertex_lo || v < *vertex_lo) {
                    vertex_lo = v;
                }
                if (!vertex_hi || v > *vertex_hi) {
                    vertex_hi = v;
                }
            }
        };
        sample_cell(cell, opts.samples, visit);
        if (opts.include_tags) {
            visit(tag_of(cell, flat, *opts.include_tags), false);
        }
        if (*lo != *vertex_lo || *hi != *vertex_hi) {
            ++out.nonmonotone_cells;
        }
        rational v = cell.volume();
        out.lower += *lo * v;
        out.upper += *hi * v;
    });
    return out;
}

inner_result inner_sums(const std::vector<expr> &fs, const region &j, const partition_spec &p, unsigned precision)
{
    const std::size_t n = j.bounding.dimension();
    point_function member(j.membership, n, precision);
    std::vector<point_function> integrands;
    for (const auto &f : fs) {
        integrands.emplace_back(f, n, precision);
    }
    grid g(j.bounding, p);

    // Membership of every grid vertex, evaluated once.
    std::vector<std::size_t> stride(n, 1);
    std::size_t vertex_count = 1;
    for (std::size_t i = n; i-- > 0;) {
        stride[i] = vertex_count;
        vertex_count *= g.breaks(i).size();
    }
    std::vector<signed char> inside(vertex_count, -1);
    auto vertex_inside = [&](const std::vector<std::size_t> &v) {
        std::size_t flat = 0;
        for (std::size_t i = 0; i < n; ++i) {
            flat += v[i] * stride[i];
        }
        if (inside[flat] < 0) {
            point x(n);
            for (std::size_t i = 0; i < n; ++i) {
                x[i] = g.breaks(i)[v[i]];
            }
            inside[flat] = sgn(member(x)) <= 0 ? 1 : 0;
        }
        return inside[flat] == 1;
    };

    inner_result out;
    out.values.assign(fs.size(), rational(0));
    out.inner_volume = 0;
    out.boundary_volume = 0;
    std::vector<std::size_t> corner(n);
    g.for_each([&](std::uint64_t, const std::vector<std::size_t> &index, const rect &cell) {
        std::size_t in = 0;
        const std::size_t corners = std::size_t{1} << n;
        for (std::size_t mask = 0; mask < corners; ++mask) {
            for (std::size_t i = 0; i < n; ++i) {
                corner[i] = index[i] + ((mask >> i) & 1U);
            }
            in += vertex_inside(corner) ? 1 : 0;
        }
        rational v = cell.volume();
        if (in != 0 && in != corners) {
            ++out.counts.boundary;
            out.boundary_volume += v;
            return;
        }
        bool center_in = sgn(member(cell.center())) <= 0;
        if (center_in != (in == corners)) {
            ++out.counts.boundary;
            out.boundary_volume += v;
            return;
        }
        if (!center_in) {
            ++out.counts.exterior;
            return;
        }
        ++out.counts.inner;
        out.inner_volume += v;
        point base = cell.min_vertex();
        for (std::size_t k = 0; k < integrands.size(); ++k) {
            out.values[k] += integrands[k](base) * v;
        }
    });
    return out;
}

rational riemann_stieltjes_sum(const expr &f, const expr &phi, const interval &ab, const partition_spec &p,
                               const sum_options &opts)
{
    std::vector<std::string> vars = opts.variables.empty() ? axis_variables(1) : opts.variables;
    point_function fn = bind_point_function(f, 1, vars, opts.precision);
    point_function integrator = bind_point_function(phi, 1, vars, opts.precision);
    grid g(rect({ab}), p);
    const auto &t = g.breaks(0);
    std::vector<rational> phi_at;
    phi_at.reserve(t.size());
    for (const auto &ti : t) {
        phi_at.push_back(integrator({ti}));
    }
    rational total(0);
    g.for_each([&](std::uint64_t flat, const std::vector<std::size_t> &index, const rect &cell) {
        total += fn(tag_of(cell, flat, opts.tags)) * (phi_at[index[0] + 1] - phi_at[index[0]]);
    });
    return total;
}

} // namespace hrw
