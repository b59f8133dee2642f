#include <hrw/errors.hpp>
#include <hrw/eval.hpp>

#include <cmath>

namespace hrw {

namespace {

template <typename... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <typename... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// Runs `fn`, attaching the node offset to escaping errors.
template <typename Fn>
auto at_node(const expr &e, Fn &&fn) -> decltype(fn())
{
    try {
        return fn();
    } catch (const parse_error &) {
        throw;
    } catch (const error &err) {
        if (err.position()) {
            throw;
        }
        throw err.with_position(e.position());
    }
}

unsigned long root_degree(const rational &n)
{
    if (!is_integer(n) || n < 2 || !n.get_num().fits_ulong_p()) {
        raise(error_kind::domain_error, "root degree must be an integer >= 2, got " + to_string(n));
    }
    return n.get_num().get_ui();
}

class hyper_evaluator
{
public:
    hyper_evaluator(const hyper_env &env, const field_config &cfg, eval_options opts)
        : m_env(env), m_cfg(cfg), m_opts(opts)
    {
    }

    hyperreal eval(const expr &e) const
    {
        return at_node(e, [&] { return std::visit([&](const auto &n) { return visit(n); }, e.get().data); });
    }

private:
    hyperreal constant(const rational &c) const
    {
        return hyperreal(c, m_cfg.window);
    }

    hyperreal visit(const constant_node &n) const
    {
        return constant(n.value);
    }

    hyperreal visit(const variable_node &n) const
    {
        if (auto it = m_env.find(n.name); it != m_env.end()) {
            return it->second;
        }
        if (n.name == "pi") {
            return constant(approx_pi(m_cfg.precision));
        }
        if (n.name == "e") {
            return constant(approx_e(m_cfg.precision));
        }
        raise(error_kind::domain_error, "unbound variable '" + n.name + "'");
    }

    hyperreal visit(const negate_node &n) const
    {
        return -eval(n.child);
    }

    hyperreal visit(const binary_node &n) const
    {
        if (n.op == binary_op::pow) {
            return power(n);
        }
        hyperreal l = eval(n.left);
        hyperreal r = eval(n.right);
        switch (n.op) {
            case binary_op::add:
                return l + r;
            case binary_op::sub:
                return l - r;
            case binary_op::mul:
                return l * r;
            case binary_op::div:
                if (r.is_zero()) {
                    raise(error_kind::division_by_zero, "division by zero");
                }
                return l / r;
            case binary_op::pow:
                break;
        }
        return l;
    }

    hyperreal power(const binary_node &n) const
    {
        hyperreal base = eval(n.left);
        if (auto c = constant_value(n.right)) {
            const rational &q = *c;
            if (is_integer(q)) {
                if (base.is_standard()) {
                    return constant(integer_power(base.coefficient(rational(0)), q.get_num(), m_cfg.precision));
                }
                return pow(base, q.get_num().get_si());
            }
            // p/q as the p-th power of the q-th root.
            return pow(nth_root(base, q.get_den().get_ui(), m_cfg.precision), q.get_num().get_si());
        }
        hyperreal exponent = eval(n.right);
        if (base.is_standard() && exponent.is_standard()) {
            rational b = base.coefficient(rational(0));
            return constant(approx_pow(b, exponent.coefficient(rational(0)), m_cfg.precision));
        }
        // A negative base has no logarithm, but with an unlimited exponent the
        // sign is as undecidable as exp of an unlimited argument.
        if (!is_limited(exponent) && compare(base, hyperreal(m_cfg.window)) < 0) {
            raise(error_kind::transcendental_on_unlimited, "negative base raised to an unlimited power");
        }
        hyperreal log = apply_analytic(analytic_fn::ln, base, m_cfg);
        return apply_analytic(analytic_fn::exp, exponent * log, m_cfg);
    }

    hyperreal visit(const call_node &n) const
    {
        switch (n.fn) {
            case function::sin:
                return apply_analytic(analytic_fn::sin, eval(n.args[0]), m_cfg);
            case function::cos:
                return apply_analytic(analytic_fn::cos, eval(n.args[0]), m_cfg);
            case function::tan:
                return apply_analytic(analytic_fn::tan, eval(n.args[0]), m_cfg);
            case function::exp:
                return apply_analytic(analytic_fn::exp, eval(n.args[0]), m_cfg);
            case function::ln:
                return apply_analytic(analytic_fn::ln, eval(n.args[0]), m_cfg);
            case function::sqrt:
                return nth_root(eval(n.args[0]), 2, m_cfg.precision);
            case function::root: {
                hyperreal degree = eval(n.args[0]);
                if (!is_limited(degree)) {
                    raise(error_kind::transcendental_on_unlimited, "root of infinite degree");
                }
                if (!degree.is_standard()) {
                    raise(error_kind::domain_error, "root degree must be a standard integer");
                }
                return nth_root(eval(n.args[1]), root_degree(degree.coefficient(rational(0))), m_cfg.precision);
            }
            case function::abs: {
                hyperreal x = eval(n.args[0]);
                if (m_opts.require_smooth && is_limited(x) && sgn(st(x).value()) == 0) {
                    raise(error_kind::non_smooth_at_point, "abs is not differentiable where its argument is 0");
                }
                return compare(x, hyperreal(m_cfg.window)) < 0 ? -x : x;
            }
        }
        raise(error_kind::unsupported_node, "unknown function");
    }

    const hyper_env &m_env;
    const field_config &m_cfg;
    eval_options m_opts;
};

class real_evaluator
{
public:
    real_evaluator(const real_env &env, unsigned precision) : m_env(env), m_precision(precision) {}

    rational eval(const expr &e) const
    {
        return at_node(e, [&] { return std::visit([&](const auto &n) { return visit(n); }, e.get().data); });
    }

private:
    rational visit(const constant_node &n) const
    {
        return n.value;
    }

    rational visit(const variable_node &n) const
    {
        if (auto it = m_env.find(n.name); it != m_env.end()) {
            return it->second;
        }
        if (n.name == "pi") {
            return approx_pi(m_precision);
        }
        if (n.name == "e") {
            return approx_e(m_precision);
        }
        raise(error_kind::domain_error, "unbound variable '" + n.name + "'");
    }

    rational visit(const negate_node &n) const
    {
        return -eval(n.child);
    }

    rational visit(const binary_node &n) const
    {
        if (n.op == binary_op::pow) {
            return power(n);
        }
        rational l = eval(n.left);
        rational r = eval(n.right);
        switch (n.op) {
            case binary_op::add:
                return l + r;
            case binary_op::sub:
                return l - r;
            case binary_op::mul:
                return l * r;
            case binary_op::div:
                if (sgn(r) == 0) {
                    raise(error_kind::division_by_zero, "division by zero");
                }
                return l / r;
            case binary_op::pow:
                break;
        }
        return l;
    }

    rational power(const binary_node &n) const
    {
        rational base = eval(n.left);
        if (auto c = constant_value(n.right)) {
            const rational &q = *c;
            if (is_integer(q)) {
                return integer_power(base, q.get_num(), m_precision);
            }
            if (sgn(base) < 0) {
                raise(error_kind::domain_error, "fractional power of negative value " + to_string(base));
            }
            return pow(root(base, q.get_den().get_ui(), m_precision), q.get_num().get_si());
        }
        rational exponent = eval(n.right);
        return approx_pow(base, exponent, m_precision);
    }

    rational visit(const call_node &n) const
    {
        switch (n.fn) {
            case function::sin:
                return approx_sin(eval(n.args[0]), m_precision);
            case function::cos:
                return approx_cos(eval(n.args[0]), m_precision);
            case function::tan: {
                rational x = eval(n.args[0]);
                if (cmp(abs(approx_cos(x, m_precision)), pow10(-static_cast<long>(m_precision))) < 0) {
                    raise(error_kind::domain_error, "tan undefined near " + to_string(x));
                }
                return approx_tan(x, m_precision);
            }
            case function::exp:
                return approx_exp(eval(n.args[0]), m_precision);
            case function::ln:
                return approx_ln(eval(n.args[0]), m_precision);
            case function::sqrt:
                return root(eval(n.args[0]), 2, m_precision);
            case function::root: {
                unsigned long degree = root_degree(eval(n.args[0]));
                return root(eval(n.args[1]), degree, m_precision);
            }
            case function::abs:
                return abs(eval(n.args[0]));
        }
        raise(error_kind::unsupported_node, "unknown function");
    }

    const real_env &m_env;
    unsigned m_precision;
};

double eval_double_impl(const expr &e, const double_env &env)
{
    return std::visit(overloaded{
                          [](const constant_node &n) { return to_double(n.value); },
                          [&](const variable_node &n) {
                              if (auto it = env.find(n.name); it != env.end()) {
                                  return it->second;
                              }
                              if (n.name == "pi") {
                                  return M_PI;
                              }
                              if (n.name == "e") {
                                  return M_E;
                              }
                              raise(error_kind::domain_error, "unbound variable '" + n.name + "'");
                          },
                          [&](const negate_node &n) { return -eval_double_impl(n.child, env); },
                          [&](const binary_node &n) {
                              double l = eval_double_impl(n.left, env);
                              double r = eval_double_impl(n.right, env);
                              switch (n.op) {
                                  case binary_op::add:
                                      return l + r;
                                  case binary_op::sub:
                                      return l - r;
                                  case binary_op::mul:
                                      return l * r;
                                  case binary_op::div:
                                      return l / r;
                                  case binary_op::pow:
                                      return std::pow(l, r);
                              }
                              return l;
                          },
                          [&](const call_node &n) {
                              double x = eval_double_impl(n.args.back(), env);
                              switch (n.fn) {
                                  case function::sin:
                                      return std::sin(x);
                                  case function::cos:
                                      return std::cos(x);
                                  case function::tan:
                                      return std::tan(x);
                                  case function::exp:
                                      return std::exp(x);
                                  case function::ln:
                                      return std::log(x);
                                  case function::sqrt:
                                      return std::sqrt(x);
                                  case function::root:
                                      return std::pow(x, 1.0 / eval_double_impl(n.args[0], env));
                                  case function::abs:
                                      return std::fabs(x);
                              }
                              return x;
                          },
                      },
                      e.get().data);
}

} // namespace

hyperreal eval_hyper(const expr &e, const hyper_env &env, const field_config &cfg, eval_options opts)
{
    return hyper_evaluator(env, cfg, opts).eval(e);
}

rational eval_real(const expr &e, const real_env &env, unsigned precision)
{
    return real_evaluator(env, precision).eval(e);
}

double eval_double(const expr &e, const double_env &env)
{
    return eval_double_impl(e, env);
}

} // namespace hrw
