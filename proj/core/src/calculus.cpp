#include <hrw/analytic.hpp>
#include <hrw/calculus.hpp>
#include <hrw/errors.hpp>
#include <hrw/eval.hpp>

#include <algorithm>

namespace hrw {

namespace {

hyperreal constant(const rational &c, const field_config &cfg)
{
    return hyperreal(c, cfg.window);
}

hyperreal eval_at(const expr &f, std::string_view var, const hyperreal &x, const field_config &cfg, eval_options opts = {})
{
    hyper_env env;
    env.emplace(std::string(var), x);
    return eval_hyper(f, env, cfg, opts);
}

rational finite_st(const hyperreal &x, const char *what)
{
    auto s = st(x);
    if (!s.is_finite()) {
        raise(error_kind::domain_error, std::string(what) + " is not limited");
    }
    return s.value();
}

rational dot(const vec &a, const vec &b)
{
    rational acc(0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        acc += a[i] * b[i];
    }
    return acc;
}

std::vector<jet> component_jets(const curve_def &c, const rational &t0, unsigned order, const field_config &cfg)
{
    if (c.dimension() < 2) {
        raise(error_kind::domain_error, "curves need at least two components");
    }
    std::vector<jet> out;
    out.reserve(c.dimension());
    for (const auto &comp : c.components) {
        out.push_back(taylor_jet(comp, c.parameter, t0, order, cfg));
    }
    return out;
}

vec velocity_of(const std::vector<jet> &jets)
{
    vec v;
    for (const auto &j : jets) {
        v.push_back(j.coefficients[1]);
    }
    return v;
}

} // namespace

jet taylor_jet(const expr &f, std::string_view var, const rational &x0, unsigned order, const field_config &cfg)
{
    if (!(rational(order) < cfg.window)) {
        raise(error_kind::domain_error, "jet order " + std::to_string(order) + " does not fit the window");
    }
    hyperreal r = eval_at(f, var, constant(x0, cfg) + epsilon(rational(1), cfg.window), cfg, {.require_smooth = true});
    if (!is_limited(r)) {
        raise(error_kind::domain_error, "function is unbounded near " + to_string(x0));
    }
    for (const auto &t : r.terms()) {
        if (t.exponent > order) {
            break;
        }
        if (!is_integer(t.exponent)) {
            raise(error_kind::non_smooth_at_point,
                  "expansion at " + to_string(x0) + " has fractional order " + to_string(t.exponent));
        }
    }
    jet out{x0, {}};
    out.coefficients.reserve(order + 1);
    for (unsigned k = 0; k <= order; ++k) {
        out.coefficients.push_back(r.coefficient(rational(k)));
    }
    return out;
}

rational derivative(const expr &f, std::string_view var, const rational &x0, unsigned n, const field_config &cfg)
{
    jet j = taylor_jet(f, var, x0, n, cfg);
    return j.coefficients[n] * rational(factorial(n));
}

hyperreal nth_increment(const expr &f, std::string_view var, const rational &c, const hyperreal &h, unsigned n,
                        const field_config &cfg)
{
    hyperreal sum(cfg.window);
    for (unsigned k = 0; k <= n; ++k) {
        rational weight = binomial(rational(n), k);
        if (k % 2 == 1) {
            weight = -weight;
        }
        hyperreal x = constant(c, cfg) + h * rational(n - k);
        sum = sum + eval_at(f, var, x, cfg) * weight;
    }
    return sum;
}

std::string_view to_string(limit_method m)
{
    return m == limit_method::field_evaluation ? "field-evaluation" : "numeric-fallback";
}

namespace {

limit_result numeric_sequence_limit(const expr &s, std::string_view var, const field_config &cfg,
                                    const sequence_fallback &fb, std::string diagnostics)
{
    limit_result out;
    out.method = limit_method::numeric_fallback;
    std::vector<rational> values;
    std::string stop;
    for (unsigned k = fb.k_min; k <= fb.k_max; ++k) {
        integer n;
        mpz_ui_pow_ui(n.get_mpz_t(), 2, k);
        real_env env;
        env.emplace(std::string(var), rational(n));
        try {
            values.push_back(eval_real(s, env, cfg.precision));
        } catch (const error &err) {
            stop = "evaluation stopped at n=2^" + std::to_string(k) + ": " + std::string(name(err.kind())) + ": " + err.what();
            break;
        }
    }
    out.diagnostics = std::move(diagnostics);
    if (!stop.empty()) {
        out.diagnostics += "; " + stop;
    }
    if (values.size() < 2) {
        out.diagnostics += "; too few samples";
        return out;
    }
    // The tail is the second half of the samples.
    std::size_t tail = values.size() / 2;
    bool increasing = true;
    bool decreasing = true;
    for (std::size_t i = tail + 1; i < values.size(); ++i) {
        increasing = increasing && values[i] > values[i - 1];
        decreasing = decreasing && values[i] < values[i - 1];
    }
    const rational &last = values.back();
    if (increasing && last > fb.divergence_bound) {
        out.value = extended_real::pos_infinity();
        return out;
    }
    if (decreasing && last < -fb.divergence_bound) {
        out.value = extended_real::neg_infinity();
        return out;
    }
    // Cauchy on the last three successive differences.
    std::size_t checks = std::min<std::size_t>(3, values.size() - 1);
    bool cauchy = stop.empty() || values.size() >= 4;
    for (std::size_t i = values.size() - checks; i < values.size(); ++i) {
        cauchy = cauchy && abs(values[i] - values[i - 1]) < fb.cauchy_tolerance;
    }
    if (cauchy) {
        out.value = extended_real(last);
        return out;
    }
    out.diagnostics += "; samples are neither Cauchy nor divergent";
    return out;
}

} // namespace

limit_result seq_limit(const expr &s, std::string_view var, const field_config &cfg, const sequence_fallback &fallback)
{
    try {
        hyperreal v = eval_at(s, var, epsilon(rational(-1), cfg.window), cfg);
        limit_result out;
        out.method = limit_method::field_evaluation;
        out.value = st(v);
        return out;
    } catch (const error &err) {
        if (err.kind() == error_kind::transcendental_on_unlimited) {
            return numeric_sequence_limit(s, var, cfg, fallback,
                                          "field evaluation left the computable fragment: " + std::string(err.what()));
        }
        limit_result out;
        out.method = limit_method::field_evaluation;
        out.diagnostics = std::string(name(err.kind())) + ": " + err.what();
        return out;
    }
}

std::vector<hyperreal> right_probes(const field_config &cfg)
{
    return {epsilon(rational(1), cfg.window), epsilon(rational(2), cfg.window),
            hyperreal::monomial(rational(3, 2), rational(1), cfg.window)};
}

std::vector<hyperreal> left_probes(const field_config &cfg)
{
    auto out = right_probes(cfg);
    for (auto &h : out) {
        h = -h;
    }
    return out;
}

namespace {

// Common standard part of f over the probes, or empty.
std::optional<extended_real> side_value(const expr &f, const std::vector<std::string> &vars, const vec &p,
                                        const std::vector<std::vector<hyperreal>> &offsets, const field_config &cfg,
                                        std::string &diag, const char *side)
{
    std::optional<extended_real> value;
    for (const auto &offset : offsets) {
        hyper_env env;
        for (std::size_t i = 0; i < vars.size(); ++i) {
            env.emplace(vars[i], constant(p[i], cfg) + offset[i]);
        }
        try {
            extended_real s = st(eval_hyper(f, env, cfg));
            if (value && !(*value == s)) {
                diag += std::string(side) + " probes disagree; ";
                return std::nullopt;
            }
            value = s;
        } catch (const error &err) {
            diag += std::string(side) + ": " + std::string(name(err.kind())) + ": " + err.what() + "; ";
            return std::nullopt;
        }
    }
    return value;
}

limit_result combine_sides(std::optional<extended_real> left, std::optional<extended_real> right, std::string diag)
{
    limit_result out;
    out.method = limit_method::field_evaluation;
    out.left = std::move(left);
    out.right = std::move(right);
    if (out.left && out.right && *out.left == *out.right) {
        out.value = *out.left;
    }
    out.diagnostics = std::move(diag);
    return out;
}

} // namespace

limit_result fn_limit(const expr &f, std::string_view var, const rational &p, const field_config &cfg)
{
    std::vector<std::string> vars{std::string(var)};
    std::vector<std::vector<hyperreal>> right, left;
    for (auto &h : right_probes(cfg)) {
        right.push_back({h});
    }
    for (auto &h : left_probes(cfg)) {
        left.push_back({h});
    }
    std::string diag;
    auto l = side_value(f, vars, {p}, left, cfg, diag, "left");
    auto r = side_value(f, vars, {p}, right, cfg, diag, "right");
    return combine_sides(std::move(l), std::move(r), std::move(diag));
}

limit_result fn_limit(const expr &f, const std::vector<std::string> &vars, const vec &p, const field_config &cfg)
{
    if (vars.size() != p.size()) {
        raise(error_kind::domain_error, "point dimension does not match the variable list");
    }
    // "Right" collects the positive coordinate and diagonal directions,
    // "left" their negatives.
    std::vector<std::vector<hyperreal>> right, left;
    for (const auto &h : right_probes(cfg)) {
        for (std::size_t j = 0; j <= vars.size(); ++j) {
            std::vector<hyperreal> offset(vars.size(), hyperreal(cfg.window));
            for (std::size_t i = 0; i < vars.size(); ++i) {
                if (j == vars.size() || i == j) {
                    offset[i] = h;
                }
            }
            std::vector<hyperreal> negated;
            for (const auto &o : offset) {
                negated.push_back(-o);
            }
            right.push_back(std::move(offset));
            left.push_back(std::move(negated));
        }
    }
    std::string diag;
    auto l = side_value(f, vars, p, left, cfg, diag, "negative directions");
    auto r = side_value(f, vars, p, right, cfg, diag, "positive directions");
    auto out = combine_sides(std::move(l), std::move(r), std::move(diag));
    out.directional_only = true;
    return out;
}

bool continuity_check(const expr &f, std::string_view var, const rational &p, const field_config &cfg)
{
    rational at_p;
    try {
        hyperreal v = eval_at(f, var, constant(p, cfg), cfg);
        at_p = finite_st(v, "value");
    } catch (const error &err) {
        throw error(error_kind::domain_error, "function undefined at " + to_string(p) + ": " + err.what());
    }
    auto probes = right_probes(cfg);
    for (auto &h : left_probes(cfg)) {
        probes.push_back(h);
    }
    for (const auto &h : probes) {
        try {
            extended_real s = st(eval_at(f, var, constant(p, cfg) + h, cfg));
            if (!(s == extended_real(at_p))) {
                return false;
            }
        } catch (const error &) {
            return false;
        }
    }
    return true;
}

vec unit_tangent(const curve_def &c, const rational &t0, const field_config &cfg)
{
    vec v = velocity_of(component_jets(c, t0, 1, cfg));
    rational speed2 = dot(v, v);
    if (sgn(speed2) == 0) {
        raise(error_kind::zero_velocity, "c'(" + to_string(t0) + ") = 0");
    }
    rational speed = sqrt(speed2, cfg.precision);
    for (auto &x : v) {
        x /= speed;
    }
    return v;
}

rational tangent_certificate(const curve_def &c, const rational &t0, const vec &direction, const field_config &cfg)
{
    if (direction.size() != c.dimension()) {
        raise(error_kind::domain_error, "direction dimension does not match the curve");
    }
    hyperreal t = constant(t0, cfg);
    hyperreal probe = t + epsilon(rational(1), cfg.window);
    hyperreal along(cfg.window);
    hyperreal length2(cfg.window);
    for (std::size_t i = 0; i < c.dimension(); ++i) {
        hyperreal chord = eval_at(c.components[i], c.parameter, probe, cfg) - eval_at(c.components[i], c.parameter, t, cfg);
        along = along + chord * direction[i];
        length2 = length2 + chord * chord;
    }
    if (length2.is_zero()) {
        raise(error_kind::zero_velocity, "curve is stationary near " + to_string(t0));
    }
    return finite_st(along / nth_root(length2, 2, cfg.precision), "certificate");
}

rational tangent_certificate(const curve_def &c, const rational &t0, const field_config &cfg)
{
    return tangent_certificate(c, t0, unit_tangent(c, t0, cfg), cfg);
}

curvature_result curvature(const curve_def &c, const rational &t0, const field_config &cfg)
{
    if (c.dimension() != 2 && c.dimension() != 3) {
        raise(error_kind::domain_error, "curvature is available for plane and space curves only");
    }
    auto jets = component_jets(c, t0, 2, cfg);
    vec point, v, a;
    for (const auto &j : jets) {
        point.push_back(j.coefficients[0]);
        v.push_back(j.coefficients[1]);
        a.push_back(j.coefficients[2] * 2);
    }
    rational speed2 = dot(v, v);
    if (sgn(speed2) == 0) {
        raise(error_kind::zero_velocity, "c'(" + to_string(t0) + ") = 0");
    }
    const unsigned d = cfg.precision;
    rational speed = sqrt(speed2, d);
    rational cross_norm;
    if (c.dimension() == 2) {
        cross_norm = abs(v[0] * a[1] - v[1] * a[0]);
    } else {
        vec cross{v[1] * a[2] - v[2] * a[1], v[2] * a[0] - v[0] * a[2], v[0] * a[1] - v[1] * a[0]};
        cross_norm = sqrt(dot(cross, cross), d);
    }
    curvature_result out;
    out.kappa = cross_norm / (speed2 * speed);
    if (sgn(out.kappa) == 0) {
        out.straight_line = true;
        return out;
    }
    // Component of the acceleration orthogonal to the velocity.
    rational along = dot(a, v) / speed2;
    vec w;
    for (std::size_t i = 0; i < a.size(); ++i) {
        w.push_back(a[i] - along * v[i]);
    }
    rational w_norm = sqrt(dot(w, w), d);
    for (auto &x : w) {
        x /= w_norm;
    }
    out.unit_normal = w;
    rational radius = 1 / out.kappa;
    vec center;
    for (std::size_t i = 0; i < point.size(); ++i) {
        center.push_back(point[i] + radius * out.unit_normal[i]);
    }
    out.center = center;
    out.radius = radius;

    // |c(t) - center|^2 - R^2 must vanish to second order at t0.
    hyperreal probe = constant(t0, cfg) + epsilon(rational(1), cfg.window);
    hyperreal gap = -constant(radius * radius, cfg);
    for (std::size_t i = 0; i < c.dimension(); ++i) {
        hyperreal diff = eval_at(c.components[i], c.parameter, probe, cfg) - constant(center[i], cfg);
        gap = gap + diff * diff;
    }
    rational tolerance = pow10(-static_cast<long>(d) + 6) * (1 + radius * radius);
    out.osculation_verified = true;
    for (long k = 0; k <= 2; ++k) {
        out.osculation_verified = out.osculation_verified && abs(gap.coefficient(rational(k))) < tolerance;
    }
    return out;
}

jacobian_result jacobian(const std::vector<expr> &f, const std::vector<std::string> &vars, const vec &point,
                         const field_config &cfg)
{
    if (vars.size() != point.size()) {
        raise(error_kind::domain_error, "point dimension does not match the variable list");
    }
    const std::size_t n = vars.size();
    const eval_options smooth{.require_smooth = true};
    auto eval_offset = [&](const expr &fi, const std::vector<hyperreal> &offset) {
        hyper_env env;
        for (std::size_t j = 0; j < n; ++j) {
            env.emplace(vars[j], constant(point[j], cfg) + offset[j]);
        }
        return eval_hyper(fi, env, cfg, smooth);
    };
    const hyperreal zero(cfg.window);
    const hyperreal eps = epsilon(rational(1), cfg.window);
    std::vector<hyperreal> at_c;
    for (const auto &fi : f) {
        at_c.push_back(eval_offset(fi, std::vector<hyperreal>(n, zero)));
    }

    jacobian_result out;
    for (std::size_t i = 0; i < f.size(); ++i) {
        vec row;
        for (std::size_t j = 0; j < n; ++j) {
            std::vector<hyperreal> offset(n, zero);
            offset[j] = eps;
            row.push_back(finite_st((eval_offset(f[i], offset) - at_c[i]) / eps, "partial derivative"));
        }
        out.matrix.push_back(std::move(row));
    }

    std::vector<std::vector<hyperreal>> probes;
    probes.emplace_back(n, eps);
    std::vector<hyperreal> alternating;
    for (std::size_t j = 0; j < n; ++j) {
        alternating.push_back(j % 2 == 0 ? eps : -eps);
    }
    probes.push_back(std::move(alternating));
    std::vector<hyperreal> second_order(n, zero);
    second_order[0] = epsilon(rational(2), cfg.window);
    probes.push_back(std::move(second_order));

    out.residual_order_ok = true;
    for (const auto &b : probes) {
        hyperreal b_norm2(cfg.window);
        for (const auto &bj : b) {
            b_norm2 = b_norm2 + bj * bj;
        }
        hyperreal r_norm2(cfg.window);
        for (std::size_t i = 0; i < f.size(); ++i) {
            hyperreal r = eval_offset(f[i], b) - at_c[i];
            for (std::size_t j = 0; j < n; ++j) {
                r = r - b[j] * out.matrix[i][j];
            }
            r_norm2 = r_norm2 + r * r;
        }
        if (!r_norm2.is_zero()) {
            hyperreal b_norm = nth_root(b_norm2, 2, cfg.precision);
            hyperreal r_norm = nth_root(r_norm2, 2, cfg.precision);
            out.residual_order_ok = out.residual_order_ok && in_order_ideal(r_norm, b_norm);
        }
    }
    return out;
}

kinematics_result kinematics(const expr &position, std::string_view var, const rational &t0, const field_config &cfg)
{
    jet j = taylor_jet(position, var, t0, 2, cfg);
    return {j.coefficients[1], j.coefficients[2] * 2};
}

} // namespace hrw
