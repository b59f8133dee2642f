#include <hrw/convergence.hpp>
#include <hrw/errors.hpp>
#include <hrw/quadrature.hpp>

#include <algorithm>
#include <cmath>

namespace hrw {

oracle closed_form_oracle(const rational &value)
{
    return {value, "closed-form", ""};
}

namespace {

oracle from_quadrature(const quadrature_result &q)
{
    if (!q.converged) {
        return {std::nullopt, "adaptive-simpson", q.diagnostics.empty() ? "quadrature failed" : q.diagnostics};
    }
    rational exact(q.value);
    rational scale = pow10(15);
    rational rounded(floor(exact * scale + rational(1, 2)), 1);
    return {rounded / scale, "adaptive-simpson", std::to_string(q.intervals) + " intervals"};
}

} // namespace

oracle quadrature_oracle(const expr &f, const std::string &variable, const rational &a, const rational &b)
{
    return from_quadrature(adaptive_simpson(f, variable, to_double(a), to_double(b)));
}

oracle quadrature_oracle(const std::function<double(double)> &f, const rational &a, const rational &b)
{
    try {
        return from_quadrature(adaptive_simpson(f, to_double(a), to_double(b)));
    } catch (const error &err) {
        return {std::nullopt, "adaptive-simpson", std::string(name(err.kind())) + ": " + err.what()};
    }
}

std::pair<rational, std::optional<unsigned>> richardson(const std::vector<convergence_row> &rows)
{
    if (rows.empty()) {
        raise(error_kind::domain_error, "no rows to extrapolate");
    }
    if (rows.size() == 1) {
        return {rows.back().value, std::nullopt};
    }
    const std::size_t k = rows.size() - 1;
    const rational &s1 = rows[k - 1].value;
    const rational &s2 = rows[k].value;
    unsigned p = 1;
    if (rows.size() >= 3) {
        const rational &s0 = rows[k - 2].value;
        rational d1 = s0 - s1;
        rational d2 = s1 - s2;
        if (sgn(d1) != 0 && sgn(d2) != 0) {
            double q = std::fabs(to_double(d1 / d2));
            double r = to_double(rows[k - 1].mesh / rows[k].mesh);
            if (q > 0 && r > 1) {
                long est = std::lround(std::log(q) / std::log(r));
                p = static_cast<unsigned>(std::clamp(est, 1L, 4L));
            }
        }
    }
    rational ratio = rows[k - 1].mesh / rows[k].mesh;
    rational rp = pow(ratio, static_cast<long>(p));
    if (rp == 1) {
        return {s2, p};
    }
    return {(rp * s2 - s1) / (rp - 1), p};
}

convergence_report converge_study(std::string operation, std::vector<std::pair<std::string, std::string>> params,
                                  const std::vector<rational> &meshes, const mesh_target &target, struct oracle o)
{
    if (meshes.empty()) {
        raise(error_kind::domain_error, "a convergence study needs at least one mesh");
    }
    for (std::size_t i = 1; i < meshes.size(); ++i) {
        if (!(meshes[i] < meshes[i - 1])) {
            raise(error_kind::domain_error, "meshes must be strictly decreasing");
        }
    }
    convergence_report out;
    out.operation = std::move(operation);
    out.params = std::move(params);
    out.oracle = std::move(o);
    for (const auto &m : meshes) {
        auto [mesh, value] = target(m);
        convergence_row row{mesh, value, std::nullopt};
        if (out.oracle.value) {
            row.error = abs(value - *out.oracle.value);
        }
        out.rows.push_back(std::move(row));
    }
    std::tie(out.estimate, out.order) = richardson(out.rows);
    if (out.oracle.value) {
        out.error = out.rows.back().error;
    } else if (!out.oracle.diagnostics.empty()) {
        out.notes.push_back("oracle unavailable: " + out.oracle.diagnostics);
    }

    if (out.oracle.value && out.rows.size() > 1) {
        bool strict = true;
        std::size_t first_bad = 0;
        for (std::size_t i = 1; i < out.rows.size(); ++i) {
            if (!(*out.rows[i].error < *out.rows[i - 1].error)) {
                strict = false;
                first_bad = i;
                break;
            }
        }
        bool all_zero = std::all_of(out.rows.begin(), out.rows.end(),
                                    [](const convergence_row &r) { return sgn(*r.error) == 0; });
        if (all_zero) {
            out.notes.push_back("error is zero at every mesh");
        } else if (strict) {
            out.notes.push_back("error strictly decreasing");
        } else {
            out.notes.push_back("error not strictly decreasing at row " + std::to_string(first_bad + 1));
        }
    }
    if (out.rows.size() > 1) {
        bool up = true, down = true;
        for (std::size_t i = 1; i < out.rows.size(); ++i) {
            up = up && out.rows[i].value >= out.rows[i - 1].value;
            down = down && out.rows[i].value <= out.rows[i - 1].value;
        }
        if (up && down) {
            out.notes.push_back("values constant");
        } else if (up) {
            out.notes.push_back("values non-decreasing");
        } else if (down) {
            out.notes.push_back("values non-increasing");
        } else {
            out.notes.push_back("values not monotone");
        }
    }
    return out;
}

} // namespace hrw
