#include <hrw/errors.hpp>
#include <hrw/eval.hpp>
#include <hrw/quadrature.hpp>

#include <cmath>
#include <variant>
#include <vector>

namespace hrw {

namespace {

struct panel {
    double a, b;
    double fa, fm, fb;
    double whole;
    double tolerance;
};

double simpson(double a, double b, double fa, double fm, double fb)
{
    return (b - a) / 6 * (fa + 4 * fm + fb);
}

} // namespace

quadrature_result adaptive_simpson(const std::function<double(double)> &f, double a, double b, double tolerance,
                                   std::size_t max_intervals)
{
    quadrature_result out;
    if (!(a < b)) {
        out.diagnostics = "empty interval";
        return out;
    }
    double fa = f(a), fb = f(b), fm = f((a + b) / 2);
    std::vector<panel> stack{{a, b, fa, fm, fb, simpson(a, b, fa, fm, fb), tolerance}};
    double total = 0;
    while (!stack.empty()) {
        panel p = stack.back();
        stack.pop_back();
        ++out.intervals;
        if (out.intervals > max_intervals) {
            out.diagnostics = "interval cap " + std::to_string(max_intervals) + " reached";
            return out;
        }
        double m = (p.a + p.b) / 2;
        double flm = f((p.a + m) / 2), frm = f((m + p.b) / 2);
        double left = simpson(p.a, m, p.fa, flm, p.fm);
        double right = simpson(m, p.b, p.fm, frm, p.fb);
        double delta = left + right - p.whole;
        if (!std::isfinite(delta)) {
            out.diagnostics = "non-finite integrand near " + std::to_string(m);
            return out;
        }
        if (std::fabs(delta) <= 15 * p.tolerance || p.b - p.a < 1e-15) {
            total += left + right + delta / 15;
            continue;
        }
        stack.push_back({m, p.b, p.fm, frm, p.fb, right, p.tolerance / 2});
        stack.push_back({p.a, m, p.fa, flm, p.fm, left, p.tolerance / 2});
    }
    out.value = total;
    out.converged = true;
    return out;
}

quadrature_result adaptive_simpson(const expr &f, const std::string &variable, double a, double b, double tolerance,
                                   std::size_t max_intervals)
{
    auto fn = [&](double x) {
        double_env env{{variable, x}};
        return eval_double(f, env);
    };
    try {
        return adaptive_simpson(fn, a, b, tolerance, max_intervals);
    } catch (const error &err) {
        quadrature_result out;
        out.diagnostics = std::string(name(err.kind())) + ": " + err.what();
        return out;
    }
}

} // namespace hrw

namespace hrw {

namespace {

struct dual {
    double v;
    double d;
};

class dual_evaluator
{
public:
    dual_evaluator(const std::string &variable, double x, const std::map<std::string, double, std::less<>> &others)
        : m_variable(variable), m_x(x), m_others(others)
    {
    }

    dual eval(const expr &e) const
    {
        return std::visit([&](const auto &n) { return visit(n); }, e.get().data);
    }

private:
    dual visit(const constant_node &n) const
    {
        return {to_double(n.value), 0};
    }

    dual visit(const variable_node &n) const
    {
        if (n.name == m_variable) {
            return {m_x, 1};
        }
        if (auto it = m_others.find(n.name); it != m_others.end()) {
            return {it->second, 0};
        }
        if (n.name == "pi") {
            return {M_PI, 0};
        }
        if (n.name == "e") {
            return {M_E, 0};
        }
        raise(error_kind::domain_error, "unbound variable '" + n.name + "'");
    }

    dual visit(const negate_node &n) const
    {
        dual c = eval(n.child);
        return {-c.v, -c.d};
    }

    dual visit(const binary_node &n) const
    {
        dual a = eval(n.left);
        dual b = eval(n.right);
        switch (n.op) {
        case binary_op::add:
            return {a.v + b.v, a.d + b.d};
        case binary_op::sub:
            return {a.v - b.v, a.d - b.d};
        case binary_op::mul:
            return {a.v * b.v, a.d * b.v + a.v * b.d};
        case binary_op::div:
            return {a.v / b.v, (a.d * b.v - a.v * b.d) / (b.v * b.v)};
        case binary_op::pow: {
            double value = std::pow(a.v, b.v);
            if (b.d == 0) {
                return {value, a.d == 0 ? 0 : b.v * std::pow(a.v, b.v - 1) * a.d};
            }
            return {value, value * (b.d * std::log(a.v) + b.v * a.d / a.v)};
        }
        }
        return {NAN, NAN};
    }

    dual visit(const call_node &n) const
    {
        dual x = eval(n.args.back());
        switch (n.fn) {
        case function::sin:
            return {std::sin(x.v), std::cos(x.v) * x.d};
        case function::cos:
            return {std::cos(x.v), -std::sin(x.v) * x.d};
        case function::tan: {
            double t = std::tan(x.v);
            return {t, (1 + t * t) * x.d};
        }
        case function::exp: {
            double v = std::exp(x.v);
            return {v, v * x.d};
        }
        case function::ln:
            return {std::log(x.v), x.d / x.v};
        case function::sqrt: {
            double v = std::sqrt(x.v);
            return {v, x.d / (2 * v)};
        }
        case function::root: {
            double k = eval(n.args[0]).v;
            double v = std::pow(x.v, 1 / k);
            return {v, v / (k * x.v) * x.d};
        }
        case function::abs:
            return {std::fabs(x.v), x.v < 0 ? -x.d : x.d};
        }
        return {NAN, NAN};
    }

    const std::string &m_variable;
    double m_x;
    const std::map<std::string, double, std::less<>> &m_others;
};

} // namespace

std::pair<double, double> eval_double_dual(const expr &f, const std::string &variable, double x,
                                           const std::map<std::string, double, std::less<>> &others)
{
    dual r = dual_evaluator(variable, x, others).eval(f);
    return {r.v, r.d};
}

} // namespace hrw
