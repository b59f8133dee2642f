#include <hrw/errors.hpp>
#include <hrw/gauge.hpp>
#include <hrw/sums.hpp>

#include <stdexcept>
#include <tuple>

namespace hrw {

std::string_view to_string(gauge_mode mode)
{
    return mode == gauge_mode::mcshane ? "mcshane" : "tag-in-cell";
}

namespace {

class radius_fn
{
public:
    radius_fn(const gauge &g, unsigned precision) : m_fn(g.radius, {g.variable}, precision) {}

    rational operator()(const rational &x) const
    {
        rational d = m_fn({x});
        if (sgn(d) <= 0) {
            raise(error_kind::domain_error, "gauge is not positive at " + to_string(x));
        }
        return d;
    }

private:
    point_function m_fn;
};

bool fits(const rational &u, const rational &v, const rational &x, const rational &delta)
{
    return u >= x - delta && v <= x + delta;
}

} // namespace

tagged_partition cousin_partition(const gauge &g, const interval &ab, gauge_mode mode, const cousin_options &opts)
{
    if (!(ab.lo < ab.hi)) {
        raise(error_kind::domain_error, "empty interval");
    }
    radius_fn delta(g, opts.precision);
    tagged_partition out;
    out.tags_may_leave_cells = mode == gauge_mode::mcshane;

    std::vector<std::tuple<rational, rational, unsigned>> pending{{ab.lo, ab.hi, 0}};
    while (!pending.empty()) {
        auto [u, v, depth] = pending.back();
        pending.pop_back();

        std::vector<rational> candidates;
        if (mode == gauge_mode::mcshane && !out.tags.empty()) {
            candidates.push_back(out.tags.back()[0]);
        }
        candidates.push_back(u);
        candidates.push_back((u + v) / 2);

        bool accepted = false;
        for (const auto &x : candidates) {
            if (fits(u, v, x, delta(x))) {
                out.cells.push_back(rect({{u, v}}));
                out.tags.push_back({x});
                accepted = true;
                break;
            }
        }
        if (accepted) {
            continue;
        }
        if (depth >= opts.max_depth) {
            raise(error_kind::depth_exceeded, "no tag fits [" + to_string(u) + ", " + to_string(v) + "] after " +
                                                  std::to_string(depth) + " bisections; delta(" + to_string(u) +
                                                  ") = " + to_string(delta(u)));
        }
        rational mid = (u + v) / 2;
        pending.emplace_back(mid, v, depth + 1);
        pending.emplace_back(u, mid, depth + 1);
    }

    if (!is_delta_fine(out, g, opts.precision)) {
        throw std::logic_error("cousin_partition produced a cell outside its gauge ball");
    }
    return out;
}

bool is_delta_fine(const tagged_partition &tp, const gauge &g, unsigned precision)
{
    radius_fn delta(g, precision);
    for (std::size_t q = 0; q < tp.size(); ++q) {
        const auto &cell = tp.cells[q].axis(0);
        const rational &x = tp.tags[q][0];
        if (!fits(cell.lo, cell.hi, x, delta(x))) {
            return false;
        }
        if (!tp.tags_may_leave_cells && (x < cell.lo || x > cell.hi)) {
            return false;
        }
    }
    return true;
}

rational gauge_sum(const expr &f, const interval &ab, const gauge &g, gauge_mode mode, const cousin_options &opts,
                   std::string_view variable)
{
    tagged_partition tp = cousin_partition(g, ab, mode, opts);
    sum_options so;
    so.precision = opts.precision;
    so.variables = {std::string(variable)};
    return riemann_sum(f, tp, so);
}

} // namespace hrw
