#include <hrw/errors.hpp>
#include <hrw/symbolic.hpp>

#include <optional>
#include <string>

namespace hrw {

namespace {

std::optional<rational> as_constant(const expr &e)
{
    if (const auto *c = std::get_if<constant_node>(&e.get().data)) {
        return c->value;
    }
    if (const auto *n = std::get_if<negate_node>(&e.get().data)) {
        if (const auto *c = std::get_if<constant_node>(&n->child.get().data)) {
            return rational(-c->value);
        }
    }
    return std::nullopt;
}

expr make_negate(const expr &a)
{
    if (auto c = as_constant(a)) {
        return expr::constant(-*c);
    }
    if (const auto *n = std::get_if<negate_node>(&a.get().data)) {
        return n->child;
    }
    return expr::negate(a);
}

expr make_add(const expr &a, const expr &b)
{
    auto ca = as_constant(a);
    auto cb = as_constant(b);
    if (ca && cb) {
        return expr::constant(*ca + *cb);
    }
    if (ca && sgn(*ca) == 0) {
        return b;
    }
    if (cb && sgn(*cb) == 0) {
        return a;
    }
    if (const auto *n = std::get_if<negate_node>(&b.get().data)) {
        return expr::binary(binary_op::sub, a, n->child);
    }
    return expr::binary(binary_op::add, a, b);
}

expr make_sub(const expr &a, const expr &b)
{
    auto ca = as_constant(a);
    auto cb = as_constant(b);
    if (ca && cb) {
        return expr::constant(*ca - *cb);
    }
    if (cb && sgn(*cb) == 0) {
        return a;
    }
    if (ca && sgn(*ca) == 0) {
        return make_negate(b);
    }
    if (a == b) {
        return expr::constant(rational(0));
    }
    return expr::binary(binary_op::sub, a, b);
}

expr make_mul(const expr &a, const expr &b)
{
    auto ca = as_constant(a);
    auto cb = as_constant(b);
    if (ca && cb) {
        return expr::constant(*ca * *cb);
    }
    if ((ca && sgn(*ca) == 0) || (cb && sgn(*cb) == 0)) {
        return expr::constant(rational(0));
    }
    if (ca && *ca == 1) {
        return b;
    }
    if (cb && *cb == 1) {
        return a;
    }
    if (ca && *ca == -1) {
        return make_negate(b);
    }
    if (cb && *cb == -1) {
        return make_negate(a);
    }
    if (cb) {
        // Constants first.
        return make_mul(b, a);
    }
    if (const auto *n = std::get_if<negate_node>(&a.get().data)) {
        if (!ca) {
            return make_negate(make_mul(n->child, b));
        }
    }
    if (const auto *n = std::get_if<negate_node>(&b.get().data)) {
        return make_negate(make_mul(a, n->child));
    }
    if (const auto *bin = std::get_if<binary_node>(&b.get().data); ca && bin && bin->op == binary_op::mul) {
        if (auto inner = as_constant(bin->left)) {
            return make_mul(expr::constant(*ca * *inner), bin->right);
        }
    }
    return expr::binary(binary_op::mul, a, b);
}

expr make_div(const expr &a, const expr &b)
{
    auto ca = as_constant(a);
    auto cb = as_constant(b);
    if (ca && sgn(*ca) == 0) {
        return expr::constant(rational(0));
    }
    if (cb && sgn(*cb) != 0) {
        if (ca) {
            return expr::constant(*ca / *cb);
        }
        if (*cb == 1) {
            return a;
        }
    }
    return expr::binary(binary_op::div, a, b);
}

expr make_pow(const expr &a, const expr &b)
{
    auto cb = as_constant(b);
    if (cb && *cb == 1) {
        return a;
    }
    if (cb && sgn(*cb) == 0) {
        return expr::constant(rational(1));
    }
    auto ca = as_constant(a);
    if (ca && cb && is_integer(*cb) && abs(*cb) <= 64 && !(sgn(*ca) == 0 && sgn(*cb) < 0)) {
        return expr::constant(pow(*ca, cb->get_num().get_si()));
    }
    return expr::binary(binary_op::pow, a, b);
}

expr rebuild(const expr &e)
{
    return std::visit(
        [&](const auto &n) -> expr {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, constant_node> || std::is_same_v<T, variable_node>) {
                return e;
            } else if constexpr (std::is_same_v<T, negate_node>) {
                return make_negate(rebuild(n.child));
            } else if constexpr (std::is_same_v<T, binary_node>) {
                expr l = rebuild(n.left);
                expr r = rebuild(n.right);
                switch (n.op) {
                    case binary_op::add:
                        return make_add(l, r);
                    case binary_op::sub:
                        return make_sub(l, r);
                    case binary_op::mul:
                        return make_mul(l, r);
                    case binary_op::div:
                        return make_div(l, r);
                    case binary_op::pow:
                        return make_pow(l, r);
                }
                return e;
            } else {
                std::vector<expr> args;
                for (const auto &a : n.args) {
                    args.push_back(rebuild(a));
                }
                return expr::call(n.fn, std::move(args), e.position());
            }
        },
        e.get().data);
}

expr derive(const expr &e, std::string_view var)
{
    return std::visit(
        [&](const auto &n) -> expr {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, constant_node>) {
                return expr::constant(rational(0));
            } else if constexpr (std::is_same_v<T, variable_node>) {
                return expr::constant(rational(n.name == var ? 1 : 0));
            } else if constexpr (std::is_same_v<T, negate_node>) {
                return make_negate(derive(n.child, var));
            } else if constexpr (std::is_same_v<T, binary_node>) {
                switch (n.op) {
                    case binary_op::add:
                        return make_add(derive(n.left, var), derive(n.right, var));
                    case binary_op::sub:
                        return make_sub(derive(n.left, var), derive(n.right, var));
                    case binary_op::mul:
                        return make_add(make_mul(derive(n.left, var), n.right), make_mul(n.left, derive(n.right, var)));
                    case binary_op::div:
                        return make_div(make_sub(make_mul(derive(n.left, var), n.right), make_mul(n.left, derive(n.right, var))),
                                        make_pow(n.right, expr::constant(rational(2))));
                    case binary_op::pow: {
                        auto k = constant_value(n.right);
                        if (!k || !is_integer(*k)) {
                            throw error(error_kind::unsupported_node, "symbolic derivative needs an integer constant exponent",
                                        e.position());
                        }
                        return make_mul(make_mul(expr::constant(*k), make_pow(n.left, expr::constant(*k - 1))),
                                        derive(n.left, var));
                    }
                }
                return e;
            } else {
                throw error(error_kind::unsupported_node,
                            "symbolic derivative does not support " + std::string(name(n.fn)) + "()", e.position());
            }
        },
        e.get().data);
}

} // namespace

expr symbolic_derivative(const expr &e, std::string_view var)
{
    return simplify(derive(e, var));
}

expr simplify(const expr &e)
{
    return rebuild(e);
}

polynomial::polynomial(std::vector<rational> coefficients) : m_coeffs(std::move(coefficients))
{
    trim();
}

void polynomial::trim()
{
    while (!m_coeffs.empty() && sgn(m_coeffs.back()) == 0) {
        m_coeffs.pop_back();
    }
}

rational polynomial::operator()(const rational &x) const
{
    rational acc(0);
    for (auto it = m_coeffs.rbegin(); it != m_coeffs.rend(); ++it) {
        acc = acc * x + *it;
    }
    return acc;
}

polynomial polynomial::derivative() const
{
    std::vector<rational> out;
    for (std::size_t i = 1; i < m_coeffs.size(); ++i) {
        out.push_back(m_coeffs[i] * static_cast<long>(i));
    }
    return polynomial(std::move(out));
}

polynomial polynomial::antiderivative() const
{
    std::vector<rational> out{rational(0)};
    for (std::size_t i = 0; i < m_coeffs.size(); ++i) {
        out.push_back(m_coeffs[i] / static_cast<long>(i + 1));
    }
    return polynomial(std::move(out));
}

rational polynomial::integrate(const rational &a, const rational &b) const
{
    polynomial F = antiderivative();
    return F(b) - F(a);
}

polynomial operator+(const polynomial &p, const polynomial &q)
{
    std::vector<rational> out(std::max(p.m_coeffs.size(), q.m_coeffs.size()));
    for (std::size_t i = 0; i < p.m_coeffs.size(); ++i) {
        out[i] += p.m_coeffs[i];
    }
    for (std::size_t i = 0; i < q.m_coeffs.size(); ++i) {
        out[i] += q.m_coeffs[i];
    }
    return polynomial(std::move(out));
}

polynomial operator-(const polynomial &p, const polynomial &q)
{
    return p + q * polynomial({rational(-1)});
}

polynomial operator*(const polynomial &p, const polynomial &q)
{
    if (p.m_coeffs.empty() || q.m_coeffs.empty()) {
        return polynomial();
    }
    std::vector<rational> out(p.m_coeffs.size() + q.m_coeffs.size() - 1);
    for (std::size_t i = 0; i < p.m_coeffs.size(); ++i) {
        for (std::size_t j = 0; j < q.m_coeffs.size(); ++j) {
            out[i + j] += p.m_coeffs[i] * q.m_coeffs[j];
        }
    }
    return polynomial(std::move(out));
}

polynomial to_polynomial(const expr &e, std::string_view var)
{
    return std::visit(
        [&](const auto &n) -> polynomial {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, constant_node>) {
                return polynomial({n.value});
            } else if constexpr (std::is_same_v<T, variable_node>) {
                if (n.name != var) {
                    throw error(error_kind::unsupported_node, "'" + n.name + "' is not the polynomial variable",
                                e.position());
                }
                return polynomial({rational(0), rational(1)});
            } else if constexpr (std::is_same_v<T, negate_node>) {
                return polynomial({rational(-1)}) * to_polynomial(n.child, var);
            } else if constexpr (std::is_same_v<T, binary_node>) {
                polynomial l = to_polynomial(n.left, var);
                switch (n.op) {
                    case binary_op::add:
                        return l + to_polynomial(n.right, var);
                    case binary_op::sub:
                        return l - to_polynomial(n.right, var);
                    case binary_op::mul:
                        return l * to_polynomial(n.right, var);
                    case binary_op::div: {
                        auto c = constant_value(n.right);
                        if (!c || sgn(*c) == 0) {
                            throw error(error_kind::unsupported_node, "division by a non-constant", e.position());
                        }
                        return l * polynomial({rational(1 / *c)});
                    }
                    case binary_op::pow: {
                        auto k = constant_value(n.right);
                        if (!k || !is_integer(*k) || sgn(*k) < 0 || *k > 64) {
                            throw error(error_kind::unsupported_node, "polynomial powers must be small non-negative integers",
                                        e.position());
                        }
                        polynomial out({rational(1)});
                        for (long i = 0; i < k->get_num().get_si(); ++i) {
                            out = out * l;
                        }
                        return out;
                    }
                }
                return l;
            } else {
                throw error(error_kind::unsupported_node, std::string(name(n.fn)) + "() is not polynomial", e.position());
            }
        },
        e.get().data);
}

} // namespace hrw
