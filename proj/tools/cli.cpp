#include "cli.hpp"

#include <hrw/analytic.hpp>
#include <hrw/calculus.hpp>
#include <hrw/convergence.hpp>
#include <hrw/errors.hpp>
#include <hrw/eval.hpp>
#include <hrw/gauge.hpp>
#include <hrw/measures.hpp>
#include <hrw/parser.hpp>
#include <hrw/quadrature.hpp>
#include <hrw/report.hpp>
#include <hrw/sums.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdlib>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>

namespace hrw::cli {

namespace {

using json = nlohmann::ordered_json;

class usage_error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

struct globals {
    std::string window = "16";
    std::string precision;
    std::string mesh;
    std::string meshes;
    std::string tags = "min-vertex";
    bool tags_given = false;
    std::uint64_t seed = 0;
    std::string format = "text";
};

// Settings resolved from the global flags and the environment.
struct settings {
    field_config cfg;
    tagging tags;
    bool tags_given = false;
    std::optional<rational> mesh;
    std::vector<rational> meshes;
    bool json = false;

    unsigned precision() const
    {
        return cfg.precision;
    }
};

struct outcome {
    explicit outcome(std::string op) : operation(std::move(op)) {}

    std::string operation;
    json params = json::object();
    json result = json::object();
    std::string text;
    std::optional<convergence_report> report;
};

// ---------------------------------------------------------------- parsing

std::vector<std::string> split(const std::string &s, char sep)
{
    std::vector<std::string> out;
    std::string current;
    int depth = 0;
    for (char c : s) {
        if (c == '(') {
            ++depth;
        } else if (c == ')') {
            --depth;
        }
        if (c == sep && depth == 0) {
            out.push_back(current);
            current.clear();
        } else {
            current.push_back(c);
        }
    }
    out.push_back(current);
    return out;
}

std::string trim(const std::string &s)
{
    auto b = s.find_first_not_of(" \t");
    auto e = s.find_last_not_of(" \t");
    return b == std::string::npos ? "" : s.substr(b, e - b + 1);
}

expr parse_expr(const std::string &text)
{
    return parse(text);
}

// Exact rational, or a closed constant expression such as pi/2 evaluated
// to the working precision.
rational parse_scalar(const std::string &text, unsigned precision)
{
    try {
        return parse_rational(trim(text));
    } catch (const error &) {
    }
    expr e = parse(text);
    for (const auto &v : free_variables(e)) {
        if (!is_named_constant(v)) {
            throw parse_error(0, "a number", "variable '" + v + "'");
        }
    }
    return eval_real(e, {}, precision);
}

std::vector<rational> parse_scalars(const std::string &text, unsigned precision)
{
    std::vector<rational> out;
    for (const auto &part : split(text, ',')) {
        out.push_back(parse_scalar(part, precision));
    }
    return out;
}

interval parse_interval(const std::string &text, unsigned precision)
{
    auto ends = parse_scalars(text, precision);
    if (ends.size() != 2) {
        throw usage_error("an interval is written 'a,b'");
    }
    if (!(ends[0] < ends[1])) {
        throw usage_error("interval '" + text + "' is empty");
    }
    return {ends[0], ends[1]};
}

rect parse_box(const std::string &text, unsigned precision)
{
    std::vector<interval> axes;
    for (const auto &axis : split(text, ';')) {
        axes.push_back(parse_interval(axis, precision));
    }
    return rect(std::move(axes));
}

std::vector<expr> parse_exprs(const std::string &text)
{
    std::vector<expr> out;
    std::size_t offset = 0;
    for (const auto &part : split(text, ';')) {
        try {
            out.push_back(parse(part));
        } catch (const parse_error &e) {
            throw parse_error(offset + e.position().value_or(0), e.expected(), e.found());
        }
        offset += part.size() + 1;
    }
    return out;
}

std::string sole_variable(const std::set<std::string> &vars, const std::string &fallback)
{
    std::vector<std::string> free;
    for (const auto &v : vars) {
        if (!is_named_constant(v)) {
            free.push_back(v);
        }
    }
    if (free.size() == 1) {
        return free.front();
    }
    if (free.empty()) {
        return fallback;
    }
    throw usage_error("several free variables; bind them as name=value or pass --var");
}

// "2" binds the single free variable; "x=1,y=2" binds by name.
std::vector<std::pair<std::string, rational>> parse_bindings(const std::string &text, const std::set<std::string> &vars,
                                                             const std::string &fallback, unsigned precision)
{
    std::vector<std::pair<std::string, rational>> out;
    if (text.empty()) {
        return out;
    }
    if (text.find('=') == std::string::npos) {
        out.emplace_back(sole_variable(vars, fallback), parse_scalar(text, precision));
        return out;
    }
    for (const auto &part : split(text, ',')) {
        auto eq = part.find('=');
        if (eq == std::string::npos) {
            throw usage_error("binding '" + part + "' is not name=value");
        }
        out.emplace_back(trim(part.substr(0, eq)), parse_scalar(part.substr(eq + 1), precision));
    }
    return out;
}

unsigned long parse_count(const std::string &text, const char *what)
{
    try {
        std::size_t used = 0;
        unsigned long v = std::stoul(text, &used);
        if (used == text.size() && v >= 1) {
            return v;
        }
    } catch (const std::exception &) {
    }
    throw usage_error(std::string(what) + " must be a positive integer");
}

// ---------------------------------------------------------------- output

std::string fmt(const rational &q, unsigned digits)
{
    if (q.get_den() == 1 || q.get_den().get_str().size() <= 12) {
        return to_string(q);
    }
    return to_decimal(q, digits);
}

std::string fmt(const extended_real &x, unsigned digits)
{
    return x.is_finite() ? fmt(x.value(), digits) : to_string(x);
}

std::string fmt(const std::vector<rational> &v, unsigned digits)
{
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        s += (i ? ", " : "") + fmt(v[i], digits);
    }
    return s + ")";
}

json jrat(const rational &q)
{
    return to_string(q);
}

json jext(const std::optional<extended_real> &x)
{
    return x ? json(to_string(*x)) : json(nullptr);
}

json jvec(const std::vector<rational> &v)
{
    json a = json::array();
    for (const auto &x : v) {
        a.push_back(to_string(x));
    }
    return a;
}

// ---------------------------------------------------------------- commands

struct inputs {
    std::string expression;
    std::string at;
    std::string near;
    std::vector<std::string> infinite;
    std::string var;
    unsigned order = 1;
    bool order_given = false;
    std::string curve;
    std::string parameter = "t";
    std::string map;
    std::string vars;
    std::string method = "riemann";
    std::string box;
    std::string phi;
    std::string gauge;
    unsigned samples = 5;
    std::string kind;
    std::string lower, upper, f, field, force, rho, region, integrand;
    std::string radius = "1";
    std::string n;
    std::string edge = "outer";
    std::string oracle;
    std::string path;
    std::string functional = "integral";
    std::string generator;
};

hyper_env hyper_bindings(const inputs &in, const expr &e, const settings &s)
{
    hyper_env env;
    auto vars = free_variables(e);
    for (const auto &[name, value] : parse_bindings(in.at, vars, "x", s.precision())) {
        env.insert_or_assign(name, hyperreal(value, s.cfg.window));
    }
    for (const auto &[name, value] : parse_bindings(in.near, vars, "x", s.precision())) {
        env.insert_or_assign(name, hyperreal(value, s.cfg.window) + epsilon(rational(1), s.cfg.window));
    }
    for (const auto &name : in.infinite) {
        env.insert_or_assign(name, epsilon(rational(-1), s.cfg.window));
    }
    return env;
}

outcome cmd_eval(const inputs &in, const settings &s)
{
    expr e = parse_expr(in.expression);
    real_env env;
    for (const auto &[name, value] : parse_bindings(in.at, free_variables(e), "x", s.precision())) {
        env.insert_or_assign(name, value);
    }
    rational v = eval_real(e, env, s.precision());
    outcome o{"eval"};
    o.params = {{"expression", in.expression}, {"at", in.at}};
    o.result = {{"value", jrat(v)}, {"decimal", to_decimal(v, s.precision())}};
    o.text = fmt(v, s.precision());
    return o;
}

outcome cmd_st(const inputs &in, const settings &s, bool classify_only)
{
    expr e = parse_expr(in.expression);
    hyperreal h = eval_hyper(e, hyper_bindings(in, e, s), s.cfg);
    outcome o{classify_only ? "classify" : "st"};
    o.params = {{"expression", in.expression}, {"at", in.at}, {"near", in.near}, {"infinite", in.infinite}};
    o.result = {{"series", to_string(h)}, {"class", std::string(to_string(classify(h)))}, {"st", to_string(st(h))}};
    o.text = classify_only ? std::string(to_string(classify(h))) : fmt(st(h), s.precision());
    return o;
}

json limit_json(const limit_result &r)
{
    return {{"value", jext(r.value)},
            {"left", jext(r.left)},
            {"right", jext(r.right)},
            {"method", std::string(to_string(r.method))},
            {"directional_only", r.directional_only},
            {"diagnostics", r.diagnostics}};
}

outcome cmd_limit_seq(const inputs &in, const settings &s)
{
    expr e = parse_expr(in.expression);
    std::string var = in.var.empty() ? sole_variable(free_variables(e), "n") : in.var;
    limit_result r = seq_limit(e, var, s.cfg);
    outcome o{"limit-seq"};
    o.params = {{"expression", in.expression}, {"var", var}};
    o.result = limit_json(r);
    o.text = (r.value ? fmt(*r.value, s.precision()) : std::string("no limit")) + " (method: " +
             std::string(to_string(r.method)) + ")";
    return o;
}

outcome cmd_limit_fn(const inputs &in, const settings &s)
{
    expr e = parse_expr(in.expression);
    auto bindings = parse_bindings(in.at, free_variables(e), "x", s.precision());
    if (bindings.empty()) {
        throw usage_error("limit-fn needs --at");
    }
    limit_result r;
    if (bindings.size() == 1) {
        r = fn_limit(e, bindings[0].first, bindings[0].second, s.cfg);
    } else {
        std::vector<std::string> vars;
        vec point;
        for (const auto &[name, value] : bindings) {
            vars.push_back(name);
            point.push_back(value);
        }
        r = fn_limit(e, vars, point, s.cfg);
    }
    outcome o{"limit-fn"};
    o.params = {{"expression", in.expression}, {"at", in.at}};
    o.result = limit_json(r);
    auto side = [&](const std::optional<extended_real> &x) { return x ? fmt(*x, s.precision()) : "undefined"; };
    o.text = r.value ? fmt(*r.value, s.precision())
                     : "does not exist (left: " + side(r.left) + ", right: " + side(r.right) + ")";
    if (r.directional_only) {
        o.text += " (directional probes)";
    }
    return o;
}

std::pair<std::string, rational> single_point(const inputs &in, const expr &e, const settings &s)
{
    auto vars = free_variables(e);
    auto bindings = parse_bindings(in.at, vars, in.var.empty() ? "x" : in.var, s.precision());
    if (bindings.size() != 1) {
        throw usage_error("expected one point, e.g. --at 2");
    }
    if (!in.var.empty() && in.at.find('=') == std::string::npos) {
        bindings[0].first = in.var;
    }
    return bindings[0];
}

outcome cmd_diff(const inputs &in, const settings &s)
{
    expr e = parse_expr(in.expression);
    auto [var, x0] = single_point(in, e, s);
    rational d = derivative(e, var, x0, in.order, s.cfg);
    outcome o{"diff"};
    o.params = {{"expression", in.expression}, {"var", var}, {"at", to_string(x0)}, {"order", in.order}};
    o.result = {{"value", jrat(d)}};
    o.text = fmt(d, s.precision());
    return o;
}

outcome cmd_jet(const inputs &in, const settings &s)
{
    expr e = parse_expr(in.expression);
    auto [var, x0] = single_point(in, e, s);
    unsigned order = in.order_given ? in.order : 4;
    jet j = taylor_jet(e, var, x0, order, s.cfg);
    outcome o{"jet"};
    o.params = {{"expression", in.expression}, {"var", var}, {"at", to_string(x0)}, {"order", order}};
    o.result = {{"coefficients", jvec(j.coefficients)}};
    for (std::size_t k = 0; k < j.coefficients.size(); ++k) {
        o.text += "a" + std::to_string(k) + " = " + fmt(j.coefficients[k], s.precision()) + "\n";
    }
    o.text.pop_back();
    return o;
}

outcome cmd_increment(const inputs &in, const settings &s)
{
    expr e = parse_expr(in.expression);
    auto [var, c] = single_point(in, e, s);
    hyperreal h = epsilon(rational(1), s.cfg.window);
    hyperreal inc = nth_increment(e, var, c, h, in.order, s.cfg);
    extended_real ratio = st(inc / pow(h, static_cast<long>(in.order)));
    outcome o{"increment"};
    o.params = {{"expression", in.expression}, {"var", var}, {"at", to_string(c)}, {"order", in.order}};
    o.result = {{"increment", to_string(inc)}, {"ratio_st", to_string(ratio)}};
    o.text = "increment = " + to_string(inc) + "\nst(increment / eps^" + std::to_string(in.order) +
             ") = " + fmt(ratio, s.precision());
    return o;
}

curve_def make_curve(const inputs &in)
{
    if (in.curve.empty()) {
        throw usage_error("--curve is required, components separated by ';'");
    }
    return curve_def{parse_exprs(in.curve), in.parameter};
}

rational curve_point(const inputs &in, const curve_def &c, const settings &s)
{
    std::set<std::string> vars{c.parameter};
    auto bindings = parse_bindings(in.at, vars, c.parameter, s.precision());
    if (bindings.size() != 1) {
        throw usage_error("expected one parameter value, e.g. --at 0");
    }
    return bindings[0].second;
}

outcome cmd_tangent(const inputs &in, const settings &s)
{
    curve_def c = make_curve(in);
    rational t0 = curve_point(in, c, s);
    vec t = unit_tangent(c, t0, s.cfg);
    rational cert = tangent_certificate(c, t0, t, s.cfg);
    outcome o{"tangent"};
    o.params = {{"curve", in.curve}, {"parameter", c.parameter}, {"at", to_string(t0)}};
    o.result = {{"unit_tangent", jvec(t)}, {"certificate", jrat(cert)}};
    o.text = "tangent = " + fmt(t, s.precision()) + "\ncertificate = " + fmt(cert, s.precision());
    return o;
}

outcome cmd_curvature(const inputs &in, const settings &s)
{
    curve_def c = make_curve(in);
    rational t0 = curve_point(in, c, s);
    curvature_result r = curvature(c, t0, s.cfg);
    outcome o{"curvature"};
    o.params = {{"curve", in.curve}, {"parameter", c.parameter}, {"at", to_string(t0)}};
    o.result = {{"kappa", jrat(r.kappa)},
                {"straight_line", r.straight_line},
                {"unit_normal", r.straight_line ? json(nullptr) : jvec(r.unit_normal)},
                {"center", r.center ? jvec(*r.center) : json(nullptr)},
                {"radius", r.radius ? jrat(*r.radius) : json(nullptr)},
                {"osculation_verified", r.osculation_verified}};
    o.text = "kappa = " + fmt(r.kappa, s.precision());
    if (r.straight_line) {
        o.text += "\nstraight line";
    } else {
        o.text += "\nnormal = " + fmt(r.unit_normal, s.precision()) + "\ncenter = " + fmt(*r.center, s.precision()) +
                  "\nradius = " + fmt(*r.radius, s.precision()) +
                  "\nosculation = " + (r.osculation_verified ? "verified" : "not verified");
    }
    return o;
}

outcome cmd_jacobian(const inputs &in, const settings &s)
{
    if (in.map.empty()) {
        throw usage_error("--map is required, components separated by ';'");
    }
    std::vector<expr> f = parse_exprs(in.map);
    std::vector<std::string> vars;
    vec point;
    if (in.at.find('=') != std::string::npos) {
        std::set<std::string> none;
        for (const auto &[name, value] : parse_bindings(in.at, none, "x", s.precision())) {
            vars.push_back(name);
            point.push_back(value);
        }
    } else {
        if (in.vars.empty()) {
            throw usage_error("pass --vars x,y or bind the point as --at x=1,y=2");
        }
        for (const auto &v : split(in.vars, ',')) {
            vars.push_back(trim(v));
        }
        point = parse_scalars(in.at, s.precision());
        if (point.size() != vars.size()) {
            throw usage_error("--at has " + std::to_string(point.size()) + " coordinates for " +
                              std::to_string(vars.size()) + " variables");
        }
    }
    jacobian_result r = jacobian(f, vars, point, s.cfg);
    outcome o{"jacobian"};
    o.params = {{"map", in.map}, {"vars", vars}, {"at", jvec(point)}};
    json rows = json::array();
    for (const auto &row : r.matrix) {
        rows.push_back(jvec(row));
        o.text += fmt(row, s.precision()) + "\n";
    }
    o.result = {{"matrix", rows}, {"residual_order_ok", r.residual_order_ok}};
    o.text += std::string("residual in o(|b|): ") + (r.residual_order_ok ? "yes" : "no");
    return o;
}

outcome cmd_kinematics(const inputs &in, const settings &s)
{
    expr e = parse_expr(in.expression);
    inputs local = in;
    if (local.var.empty()) {
        local.var = sole_variable(free_variables(e), "t");
    }
    auto [var, t0] = single_point(local, e, s);
    kinematics_result r = kinematics(e, var, t0, s.cfg);
    outcome o{"kinematics"};
    o.params = {{"position", in.expression}, {"var", var}, {"at", to_string(t0)}};
    o.result = {{"velocity", jrat(r.velocity)}, {"acceleration", jrat(r.acceleration)}};
    o.text = "velocity = " + fmt(r.velocity, s.precision()) + "\nacceleration = " + fmt(r.acceleration, s.precision());
    return o;
}

// ---------------------------------------------------------------- sums

rect require_box(const inputs &in, const settings &s, const char *fallback = nullptr)
{
    if (in.box.empty()) {
        if (fallback) {
            return parse_box(fallback, s.precision());
        }
        throw usage_error("--box (or --interval) is required, e.g. --box 0,1");
    }
    return parse_box(in.box, s.precision());
}

interval require_interval(const inputs &in, const settings &s)
{
    rect r = require_box(in, s);
    if (r.dimension() != 1) {
        throw usage_error("this operation needs a one-dimensional interval");
    }
    return r.axis(0);
}

rational single_mesh(const settings &s)
{
    if (!s.meshes.empty()) {
        throw usage_error("this operation takes a single --mesh");
    }
    return s.mesh.value_or(rational(1, 64));
}

// Either one value at --mesh, or a convergence report over --meshes.
bool studying(const settings &s)
{
    if (s.mesh && !s.meshes.empty()) {
        throw usage_error("--mesh and --meshes are exclusive");
    }
    return !s.meshes.empty();
}

oracle resolve_oracle(const inputs &in, const settings &s, const std::function<oracle()> &fallback)
{
    if (!in.oracle.empty()) {
        return closed_form_oracle(parse_scalar(in.oracle, s.precision()));
    }
    return fallback ? fallback() : oracle{};
}

outcome study(std::string operation, json params, const settings &s, const mesh_target &target, oracle o)
{
    std::vector<std::pair<std::string, std::string>> flat;
    for (auto it = params.begin(); it != params.end(); ++it) {
        flat.emplace_back(it.key(), it->is_string() ? it->get<std::string>() : it->dump());
    }
    outcome out{operation};
    out.report = converge_study(std::move(operation), std::move(flat), s.meshes, target, std::move(o));
    return out;
}

outcome scalar_result(std::string operation, json params, const std::string &key, const rational &v, const rational &mesh,
                      const settings &s)
{
    outcome o{std::move(operation)};
    params["mesh"] = to_string(mesh);
    o.params = std::move(params);
    o.result = {{key, jrat(v)}};
    o.text = fmt(v, s.precision());
    return o;
}

outcome cmd_integrate(const inputs &in, const settings &s)
{
    expr f = parse_expr(in.expression);
    sum_options so{s.tags, s.precision(), {}};
    json params = {{"method", in.method}, {"f", in.expression}, {"box", in.box}};

    if (in.method == "riemann") {
        rect r = require_box(in, s);
        params["tags"] = std::string(to_string(s.tags.rule));
        auto target = [&](const rational &mesh) {
            auto p = partition_spec::from_mesh(r, mesh);
            return std::pair{grid(r, p).mesh(), riemann_sum(f, r, p, so)};
        };
        if (studying(s)) {
            auto fallback = [&]() -> oracle {
                if (r.dimension() != 1) {
                    return {};
                }
                return quadrature_oracle(f, "x", r.axis(0).lo, r.axis(0).hi);
            };
            return study("integrate riemann", params, s, target, resolve_oracle(in, s, fallback));
        }
        auto [mesh, v] = target(single_mesh(s));
        return scalar_result("integrate riemann", params, "value", v, mesh, s);
    }
    if (in.method == "stieltjes") {
        if (in.phi.empty()) {
            throw usage_error("stieltjes needs --phi");
        }
        expr phi = parse_expr(in.phi);
        interval ab = require_interval(in, s);
        params["phi"] = in.phi;
        params["tags"] = std::string(to_string(s.tags.rule));
        auto target = [&](const rational &mesh) {
            unsigned long m = cells_for_mesh(ab, mesh);
            return std::pair{(ab.hi - ab.lo) / m, riemann_stieltjes_sum(f, phi, ab, partition_spec::simple({m}), so)};
        };
        if (studying(s)) {
            auto fallback = [&]() {
                return quadrature_oracle(
                    [&](double x) {
                        return eval_double(f, {{"x", x}}) * eval_double_dual(phi, "x", x).second;
                    },
                    ab.lo, ab.hi);
            };
            return study("integrate stieltjes", params, s, target, resolve_oracle(in, s, fallback));
        }
        auto [mesh, v] = target(single_mesh(s));
        return scalar_result("integrate stieltjes", params, "value", v, mesh, s);
    }
    if (in.method == "darboux") {
        rect r = require_box(in, s);
        rational mesh = single_mesh(s);
        darboux_options d;
        d.samples = in.samples;
        d.precision = s.precision();
        if (s.tags_given) {
            d.include_tags = s.tags;
        }
        auto p = partition_spec::from_mesh(r, mesh);
        darboux_result res = darboux_bounds(f, r, p, d);
        outcome o{"integrate darboux"};
        params["mesh"] = to_string(grid(r, p).mesh());
        params["samples"] = in.samples;
        o.params = params;
        o.result = {{"lower", jrat(res.lower)}, {"upper", jrat(res.upper)}, {"nonmonotone_cells", res.nonmonotone_cells}};
        o.text = "lower = " + fmt(res.lower, s.precision()) + "\nupper = " + fmt(res.upper, s.precision());
        if (res.nonmonotone_cells) {
            o.text += "\nnon-monotone cells (bounds estimated): " + std::to_string(res.nonmonotone_cells);
        }
        return o;
    }
    if (in.method == "gauge" || in.method == "mcshane") {
        if (in.gauge.empty()) {
            throw usage_error(in.method + " needs --gauge DELTA(x)");
        }
        if (s.mesh || !s.meshes.empty()) {
            throw usage_error("gauge sums build their own partition; drop --mesh/--meshes");
        }
        interval ab = require_interval(in, s);
        gauge g{parse_expr(in.gauge), "x"};
        gauge_mode mode = in.method == "mcshane" ? gauge_mode::mcshane : gauge_mode::tag_in_cell;
        cousin_options co;
        co.precision = s.precision();
        tagged_partition tp = cousin_partition(g, ab, mode, co);
        sum_options gso;
        gso.precision = s.precision();
        gso.variables = {"x"};
        rational v = riemann_sum(f, tp, gso);
        rational widest(0);
        for (const auto &c : tp.cells) {
            widest = std::max(widest, rational(c.axis(0).hi - c.axis(0).lo));
        }
        outcome o{"integrate " + in.method};
        params["gauge"] = in.gauge;
        o.params = params;
        o.result = {{"value", jrat(v)}, {"cells", tp.size()}, {"widest_cell", jrat(widest)}};
        o.text = fmt(v, s.precision()) + "\ncells = " + std::to_string(tp.size());
        return o;
    }
    throw usage_error("unknown --method '" + in.method + "' (riemann|darboux|stieltjes|gauge|mcshane)");
}

std::size_t region_dimension(const std::vector<const std::string *> &texts)
{
    std::size_t dim = 2;
    for (const auto *t : texts) {
        if (t->empty()) {
            continue;
        }
        auto vars = free_variables(parse(*t));
        if (vars.count("z")) {
            dim = 3;
        }
    }
    return dim;
}

outcome cmd_measure(const inputs &in, const settings &s)
{
    const std::string &kind = in.kind;
    lab_options lo{s.tags, s.precision()};
    json params = {{"kind", kind}};

    auto one_d = [&](const std::string &operation, const std::function<rational(const interval &, unsigned long)> &value,
                     const std::function<double(double)> &integrand, const interval &ab) {
        params["interval"] = in.box;
        params["tags"] = std::string(to_string(lo.tags.rule));
        auto target = [&](const rational &mesh) {
            unsigned long m = cells_for_mesh(ab, mesh);
            return std::pair{(ab.hi - ab.lo) / m, value(ab, m)};
        };
        if (studying(s)) {
            auto fallback = [&]() { return quadrature_oracle(integrand, ab.lo, ab.hi); };
            return study(operation, params, s, target, resolve_oracle(in, s, fallback));
        }
        auto [mesh, v] = target(single_mesh(s));
        return scalar_result(operation, params, "value", v, mesh, s);
    };
    auto need = [&](const std::string &value, const char *flag) {
        if (value.empty()) {
            throw usage_error("measure " + kind + " needs " + flag);
        }
        return parse_expr(value);
    };

    if (kind == "area") {
        expr f = in.lower.empty() ? expr::constant(rational(0)) : parse_expr(in.lower);
        expr g = need(in.upper, "--upper");
        params["lower"] = in.lower.empty() ? "0" : in.lower;
        params["upper"] = in.upper;
        return one_d(
            "measure area", [&](const interval &ab, unsigned long m) { return area_between(f, g, ab, m, lo); },
            [&](double x) { return eval_double(g, {{"x", x}}) - eval_double(f, {{"x", x}}); }, require_interval(in, s));
    }
    if (kind == "volume-rev" || kind == "surface-rev") {
        expr f = need(in.f, "--f");
        params["f"] = in.f;
        if (kind == "volume-rev") {
            return one_d(
                "measure volume-rev",
                [&](const interval &ab, unsigned long m) { return volume_of_revolution(f, ab, m, lo); },
                [&](double x) {
                    double r = eval_double(f, {{"x", x}});
                    return M_PI * r * r;
                },
                require_interval(in, s));
        }
        return one_d(
            "measure surface-rev",
            [&](const interval &ab, unsigned long m) { return surface_of_revolution(f, ab, m, lo); },
            [&](double x) {
                auto [r, slope] = eval_double_dual(f, "x", x);
                return 2 * M_PI * r * std::sqrt(1 + slope * slope);
            },
            require_interval(in, s));
    }
    if (kind == "length") {
        curve_def c = make_curve(in);
        std::string path = in.path.empty() ? "integral" : in.path;
        if (path != "integral" && path != "polygonal") {
            throw usage_error("--path is integral or polygonal");
        }
        params["curve"] = in.curve;
        params["path"] = path;
        interval ab = require_interval(in, s);
        if (!studying(s)) {
            rational mesh = single_mesh(s);
            unsigned long m = cells_for_mesh(ab, mesh);
            length_result r = curve_length(c, ab, m, lo);
            outcome o{"measure length"};
            params.erase("path");
            params["interval"] = in.box;
            params["mesh"] = to_string((ab.hi - ab.lo) / m);
            o.params = params;
            o.result = {{"polygonal", jrat(r.polygonal)}, {"integral", jrat(r.integral)}};
            o.text = "polygonal = " + fmt(r.polygonal, s.precision()) + "\nintegral = " + fmt(r.integral, s.precision());
            return o;
        }
        return one_d(
            "measure length",
            [&](const interval &ab2, unsigned long m) {
                length_result r = curve_length(c, ab2, m, lo);
                return path == "integral" ? r.integral : r.polygonal;
            },
            [&](double t) {
                double sum = 0;
                for (const auto &comp : c.components) {
                    double d = eval_double_dual(comp, c.parameter, t).second;
                    sum += d * d;
                }
                return std::sqrt(sum);
            },
            ab);
    }
    if (kind == "work") {
        curve_def c = make_curve(in);
        if (in.field.empty()) {
            throw usage_error("measure work needs --field");
        }
        std::vector<expr> field = parse_exprs(in.field);
        if (!s.tags_given) {
            lo.tags = {tag_rule::center, 0};
        }
        std::string path = in.path.empty() ? "integrand" : in.path;
        if (path != "integrand" && path != "chord") {
            throw usage_error("--path is integrand or chord");
        }
        params["field"] = in.field;
        params["curve"] = in.curve;
        interval ab = require_interval(in, s);
        if (!studying(s)) {
            rational mesh = single_mesh(s);
            unsigned long m = cells_for_mesh(ab, mesh);
            work_result r = line_integral_work(field, c, ab, m, lo);
            outcome o{"measure work"};
            params["interval"] = in.box;
            params["tags"] = std::string(to_string(lo.tags.rule));
            params["mesh"] = to_string((ab.hi - ab.lo) / m);
            o.params = params;
            o.result = {{"chord", jrat(r.chord)}, {"integrand", jrat(r.integrand)}};
            o.text = "chord = " + fmt(r.chord, s.precision()) + "\nintegrand = " + fmt(r.integrand, s.precision());
            return o;
        }
        params["path"] = path;
        const auto axes = axis_variables(c.dimension());
        return one_d(
            "measure work",
            [&](const interval &ab2, unsigned long m) {
                work_result r = line_integral_work(field, c, ab2, m, lo);
                return path == "integrand" ? r.integrand : r.chord;
            },
            [&](double t) {
                std::map<std::string, double, std::less<>> at;
                std::vector<double> velocity;
                for (std::size_t i = 0; i < c.dimension(); ++i) {
                    auto [value, d] = eval_double_dual(c.components[i], c.parameter, t);
                    at[axes[i]] = value;
                    velocity.push_back(d);
                }
                double sum = 0;
                for (std::size_t i = 0; i < field.size(); ++i) {
                    sum += eval_double(field[i], double_env(at.begin(), at.end())) * velocity[i];
                }
                return sum;
            },
            ab);
    }
    if (kind == "impulse") {
        expr force = need(in.force, "--force");
        params["force"] = in.force;
        return one_d(
            "measure impulse", [&](const interval &ab, unsigned long m) { return impulse(force, ab, m, lo, "t"); },
            [&](double t) { return eval_double(force, {{"t", t}}); }, require_interval(in, s));
    }
    if (kind == "mass" || kind == "com" || kind == "moment") {
        std::string rho_text = in.rho.empty() ? "1" : in.rho;
        std::string region_text = in.region.empty() ? "0" : in.region;
        expr rho = parse_expr(rho_text);
        std::size_t dim = region_dimension({&rho_text, &region_text, &in.integrand});
        std::string fallback_box = dim == 3 ? "-1,1;-1,1;-1,1" : "-1,1;-1,1";
        rect box = require_box(in, s, fallback_box.c_str());
        region j{box, parse_expr(region_text), std::nullopt};
        params["rho"] = rho_text;
        params["region"] = region_text;
        params["box"] = in.box.empty() ? fallback_box : in.box;
        std::optional<expr> integrand;
        if (kind == "moment") {
            integrand = need(in.integrand, "--integrand");
            params["integrand"] = in.integrand;
        }
        auto target = [&](const rational &mesh) {
            auto p = partition_spec::from_mesh(box, mesh);
            rational v = kind == "moment" ? moment_of_inertia(rho, *integrand, j, p, s.precision())
                                          : mass_and_moments(rho, j, p, s.precision()).mass;
            return std::pair{grid(box, p).mesh(), v};
        };
        if (studying(s)) {
            if (kind == "com") {
                throw usage_error("measure com reports a single mesh; use measure mass for a study");
            }
            return study("measure " + kind, params, s, target, resolve_oracle(in, s, nullptr));
        }
        rational mesh = single_mesh(s);
        auto p = partition_spec::from_mesh(box, mesh);
        params["mesh"] = to_string(grid(box, p).mesh());
        outcome o{"measure " + kind};
        o.params = params;
        if (kind == "moment") {
            rational v = moment_of_inertia(rho, *integrand, j, p, s.precision());
            o.result = {{"value", jrat(v)}};
            o.text = fmt(v, s.precision());
            return o;
        }
        mass_result r = mass_and_moments(rho, j, p, s.precision());
        json counts = {{"inner", r.counts.inner}, {"boundary", r.counts.boundary}, {"exterior", r.counts.exterior}};
        o.result = {{"mass", jrat(r.mass)}, {"moments", jvec(r.moments)}, {"cells", counts}};
        o.text = "mass = " + fmt(r.mass, s.precision());
        if (kind == "com") {
            point c = r.centroid();
            o.result["centroid"] = jvec(c);
            o.text += "\ncentroid = " + fmt(c, s.precision());
        } else {
            o.text += "\nmoments = " + fmt(r.moments, s.precision());
        }
        return o;
    }
    if (kind == "morley") {
        rational a = parse_scalar(in.radius, s.precision());
        morley_edge edge;
        if (in.edge == "outer") {
            edge = morley_edge::outer;
        } else if (in.edge == "inner") {
            edge = morley_edge::inner;
        } else {
            throw usage_error("--edge is outer or inner");
        }
        params["radius"] = to_string(a);
        params["edge"] = in.edge;
        if (studying(s)) {
            // Mesh 1/n selects n rings.
            auto target = [&](const rational &mesh) {
                unsigned long n = ceil(1 / mesh).get_ui();
                return std::pair{rational(1, n), morley_strip_sum(a, n, edge, s.precision())};
            };
            oracle o = resolve_oracle(in, s, [&] {
                return closed_form_oracle(approx_pi(s.precision()) * pow(a, 4) / 2);
            });
            return study("measure morley", params, s, target, o);
        }
        unsigned long n = parse_count(in.n.empty() ? "10" : in.n, "--n");
        rational v = morley_strip_sum(a, n, edge, s.precision());
        rational closed = morley_closed_form(a, n, edge, s.precision());
        outcome o{"measure morley"};
        params["n"] = n;
        o.params = params;
        o.result = {{"value", jrat(v)}, {"closed_form", jrat(closed)}, {"matches_closed_form", v == closed}};
        o.text = fmt(v, s.precision()) + "\nclosed form " + (v == closed ? "matches" : "differs");
        return o;
    }
    throw usage_error("unknown measure '" + kind +
                      "' (area|volume-rev|surface-rev|length|mass|com|moment|work|impulse|morley)");
}

std::vector<rational> default_meshes()
{
    std::vector<rational> out;
    for (int k = 3; k <= 12; ++k) {
        out.push_back(pow(rational(1, 2), k));
    }
    return out;
}

outcome cmd_converge(const inputs &in, settings s)
{
    if (s.mesh) {
        throw usage_error("converge takes --meshes");
    }
    if (s.meshes.empty()) {
        s.meshes = default_meshes();
    }
    inputs local = in;
    local.method = "riemann";
    outcome o = cmd_integrate(local, s);
    return o;
}

outcome cmd_supernear(const inputs &in, const settings &s)
{
    if (in.generator.empty() || in.f.empty()) {
        throw usage_error("probe-supernear needs --generator and --f");
    }
    set_functional b{in.functional, parse_exprs(in.generator), "x"};
    expr f = parse_expr(in.f);
    interval ab = require_interval(in, s);
    if (s.mesh) {
        throw usage_error("probe-supernear takes --meshes");
    }
    std::vector<rational> meshes = s.meshes.empty() ? default_meshes() : s.meshes;
    supernear_report r = supernearness_probe(b, f, ab, meshes, s.precision());
    outcome o{"probe-supernear"};
    o.params = {{"functional", in.functional}, {"generator", in.generator}, {"f", in.f}, {"interval", in.box}};
    json rows = json::array();
    for (const auto &row : r.rows) {
        rows.push_back({{"mesh", jrat(row.mesh)}, {"max_deviation", jrat(row.max_deviation)}});
        o.text += to_string(row.mesh) + "  " + to_decimal(row.max_deviation, 16) + "\n";
    }
    o.result = {{"rows", rows}, {"decreasing", r.decreasing}, {"toward_zero", r.toward_zero}};
    o.text += std::string("trend: ") + (r.toward_zero  ? "decreasing toward 0"
                                        : r.decreasing ? "decreasing, not toward 0"
                                                       : "not decreasing");
    return o;
}

// ---------------------------------------------------------------- driver

settings resolve(const globals &g)
{
    settings s;
    s.cfg.window = parse_rational(g.window);
    if (!g.precision.empty()) {
        s.cfg.precision = static_cast<unsigned>(parse_count(g.precision, "--precision"));
    } else if (const char *env = std::getenv("HRW_PRECISION"); env && *env) {
        s.cfg.precision = static_cast<unsigned>(parse_count(env, "HRW_PRECISION"));
    }
    s.cfg.validate();
    auto rule = tag_rule_from_name(g.tags);
    if (!rule) {
        throw usage_error("unknown tag rule '" + g.tags + "'");
    }
    s.tags = {*rule, g.seed};
    s.tags_given = g.tags_given;
    if (!g.mesh.empty()) {
        s.mesh = parse_scalar(g.mesh, s.cfg.precision);
        if (sgn(*s.mesh) <= 0) {
            throw usage_error("--mesh must be positive");
        }
    }
    if (!g.meshes.empty()) {
        s.meshes = parse_scalars(g.meshes, s.cfg.precision);
        for (const auto &m : s.meshes) {
            if (sgn(m) <= 0) {
                throw usage_error("meshes must be positive");
            }
        }
    }
    if (g.format != "text" && g.format != "json") {
        throw usage_error("--format is text or json");
    }
    s.json = g.format == "json";
    return s;
}

void emit(const outcome &o, const settings &s, std::ostream &out)
{
    if (o.report) {
        out << (s.json ? render_json(*o.report) : render_text(*o.report));
        return;
    }
    if (s.json) {
        json doc = {{"operation", o.operation}, {"params", o.params}, {"result", o.result}};
        out << doc.dump(2) << '\n';
        return;
    }
    out << o.text << '\n';
}

std::string one_line(std::string s)
{
    for (auto &c : s) {
        if (c == '\n' || c == '\r') {
            c = ' ';
        }
    }
    return s;
}

} // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err)
{
    CLI::App app{"Exact finite-scale calculus on a truncated hyperreal field", "hrw"};
    app.require_subcommand(1);
    app.fallthrough();
    globals g;
    inputs in;

    app.add_option("--window", g.window, "Series truncation window W (rational > 0)");
    app.add_option("--precision", g.precision, "Decimal digits d of transcendental approximations");
    app.add_option("--mesh", g.mesh, "Cell width of the partition");
    app.add_option("--meshes", g.meshes, "Comma-separated decreasing cell widths for a convergence study");
    auto *tags = app.add_option("--tags", g.tags, "corner-nearest-origin|center|min-vertex|seeded-random");
    app.add_option("--seed", g.seed, "Seed for seeded-random tags");
    app.add_option("--format", g.format, "text|json");

    std::function<outcome(const settings &)> action;
    auto expression = [&](CLI::App *sub) { sub->add_option("expression", in.expression, "Expression")->required(); };
    auto point_opts = [&](CLI::App *sub) {
        sub->add_option("--at", in.at, "Point: a value for the single variable, or name=value,...");
        sub->add_option("--var", in.var, "Variable name");
    };

    auto *eval = app.add_subcommand("eval", "Exact rational evaluation");
    expression(eval);
    eval->add_option("--at", in.at, "Bindings name=value,...");
    eval->callback([&] { action = [&](const settings &s) { return cmd_eval(in, s); }; });

    for (const char *name : {"st", "classify"}) {
        auto *sub = app.add_subcommand(name, std::string(name) == "st" ? "Standard part in the series field"
                                                                       : "Classify a field value");
        expression(sub);
        sub->add_option("--at", in.at, "Standard bindings name=value,...");
        sub->add_option("--near", in.near, "Bindings to value + eps");
        sub->add_option("--infinite", in.infinite, "Variables bound to 1/eps");
        bool classify_only = std::string(name) == "classify";
        sub->callback([&, classify_only] {
            action = [&, classify_only](const settings &s) { return cmd_st(in, s, classify_only); };
        });
    }

    auto *lseq = app.add_subcommand("limit-seq", "Limit of a sequence as n grows without bound");
    expression(lseq);
    lseq->add_option("--var", in.var, "Index variable (default n)");
    lseq->callback([&] { action = [&](const settings &s) { return cmd_limit_seq(in, s); }; });

    auto *lfn = app.add_subcommand("limit-fn", "Limit of a function at a point");
    expression(lfn);
    lfn->add_option("--at", in.at, "Point")->required();
    lfn->callback([&] { action = [&](const settings &s) { return cmd_limit_fn(in, s); }; });

    auto *diff = app.add_subcommand("diff", "n-th derivative at a point");
    expression(diff);
    point_opts(diff);
    diff->add_option("--order", in.order, "Derivative order (default 1)");
    diff->callback([&] { action = [&](const settings &s) { return cmd_diff(in, s); }; });

    auto *jet_cmd = app.add_subcommand("jet", "Taylor coefficients at a point");
    expression(jet_cmd);
    point_opts(jet_cmd);
    auto *jet_order = jet_cmd->add_option("--order", in.order, "Highest coefficient (default 4)");
    jet_cmd->callback([&, jet_order] {
        in.order_given = jet_order->count() > 0;
        action = [&](const settings &s) { return cmd_jet(in, s); };
    });

    auto *inc = app.add_subcommand("increment", "n-th order increment with an infinitesimal step");
    expression(inc);
    point_opts(inc);
    inc->add_option("--order", in.order, "Order n (default 1)");
    inc->callback([&] { action = [&](const settings &s) { return cmd_increment(in, s); }; });

    auto curve_opts = [&](CLI::App *sub) {
        sub->add_option("--curve", in.curve, "Components separated by ';'")->required();
        sub->add_option("--param", in.parameter, "Curve parameter (default t)");
        sub->add_option("--at", in.at, "Parameter value")->required();
    };
    auto *tan = app.add_subcommand("tangent", "Unit tangent and its certificate");
    curve_opts(tan);
    tan->callback([&] { action = [&](const settings &s) { return cmd_tangent(in, s); }; });
    auto *curv = app.add_subcommand("curvature", "Curvature and osculating circle");
    curve_opts(curv);
    curv->callback([&] { action = [&](const settings &s) { return cmd_curvature(in, s); }; });

    auto *jac = app.add_subcommand("jacobian", "Jacobian matrix and residual order check");
    jac->add_option("--map", in.map, "Components separated by ';'")->required();
    jac->add_option("--vars", in.vars, "Comma-separated variables");
    jac->add_option("--at", in.at, "Point")->required();
    jac->callback([&] { action = [&](const settings &s) { return cmd_jacobian(in, s); }; });

    auto *kin = app.add_subcommand("kinematics", "Velocity and acceleration of a position function");
    expression(kin);
    point_opts(kin);
    kin->callback([&] { action = [&](const settings &s) { return cmd_kinematics(in, s); }; });

    auto *integ = app.add_subcommand("integrate", "Riemann, Darboux, Stieltjes and gauge sums");
    expression(integ);
    integ->add_option("--method", in.method, "riemann|darboux|stieltjes|gauge|mcshane");
    integ->add_option("--box,--interval", in.box, "a,b or a1,b1;a2,b2;...");
    integ->add_option("--phi", in.phi, "Integrator for stieltjes");
    integ->add_option("--gauge", in.gauge, "Gauge delta(x) for gauge and mcshane");
    integ->add_option("--samples", in.samples, "Darboux grid points per axis (default 5)");
    integ->add_option("--oracle", in.oracle, "Closed-form reference value");
    integ->callback([&] { action = [&](const settings &s) { return cmd_integrate(in, s); }; });

    auto *meas = app.add_subcommand("measure", "Areas, volumes, lengths, masses, work, impulse, Morley sums");
    meas->add_option("kind", in.kind, "area|volume-rev|surface-rev|length|mass|com|moment|work|impulse|morley")
        ->required();
    meas->add_option("--box,--interval", in.box, "a,b or a1,b1;a2,b2;...");
    meas->add_option("--lower", in.lower, "Lower curve f(x) for area (default 0)");
    meas->add_option("--upper", in.upper, "Upper curve g(x) for area");
    meas->add_option("--f", in.f, "Profile f(x) for solids of revolution");
    meas->add_option("--curve", in.curve, "Curve components separated by ';'");
    meas->add_option("--param", in.parameter, "Curve parameter (default t)");
    meas->add_option("--field", in.field, "Force field components separated by ';'");
    meas->add_option("--force", in.force, "Force F(t) for impulse");
    meas->add_option("--rho", in.rho, "Density (default 1)");
    meas->add_option("--region", in.region, "Membership expression, region is where it is <= 0");
    meas->add_option("--integrand", in.integrand, "Moment integrand, e.g. x^2+y^2");
    meas->add_option("--radius", in.radius, "Morley disc radius a (default 1)");
    meas->add_option("--n", in.n, "Morley ring count (default 10)");
    meas->add_option("--edge", in.edge, "Morley edge rule: outer|inner");
    meas->add_option("--path", in.path, "Quantity studied over --meshes: length integral|polygonal, work integrand|chord");
    meas->add_option("--oracle", in.oracle, "Closed-form reference value");
    meas->callback([&] { action = [&](const settings &s) { return cmd_measure(in, s); }; });

    auto *conv = app.add_subcommand("converge", "Convergence study of a Riemann sum");
    expression(conv);
    conv->add_option("--box,--interval", in.box, "a,b or a1,b1;a2,b2;...")->required();
    conv->add_option("--oracle", in.oracle, "Closed-form reference value");
    conv->callback([&] { action = [&](const settings &s) { return cmd_converge(in, s); }; });

    auto *sn = app.add_subcommand("probe-supernear", "Supernearness of an exact set functional to f");
    sn->add_option("--functional", in.functional, "integral|area-between");
    sn->add_option("--generator", in.generator, "Polynomial generator(s), ';'-separated")->required();
    sn->add_option("--f", in.f, "Candidate density f(x)")->required();
    sn->add_option("--box,--interval", in.box, "a,b")->required();
    sn->callback([&] { action = [&](const settings &s) { return cmd_supernear(in, s); }; });

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
        g.tags_given = tags->count() > 0;
        settings s = resolve(g);
        emit(action(s), s, out);
        return 0;
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError &e) {
        err << "error: UsageError: " << one_line(e.what()) << '\n';
        return 2;
    } catch (const usage_error &e) {
        err << "error: UsageError: " << one_line(e.what()) << '\n';
        return 2;
    } catch (const error &e) {
        err << "error: " << name(e.kind()) << ": " << one_line(e.what());
        if (e.position() && e.kind() != error_kind::parse_error) {
            err << " (at offset " << *e.position() << ")";
        }
        err << '\n';
        return e.kind() == error_kind::parse_error ? 2 : 1;
    } catch (const std::exception &e) {
        err << "error: InternalError: " << one_line(e.what()) << '\n';
        return 1;
    }
}

} // namespace hrw::cli
