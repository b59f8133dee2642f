#include <hrw/errors.hpp>
#include <hrw/expr.hpp>

#include <array>
#include <utility>

namespace hrw {

namespace {

constexpr std::array<std::pair<function, std::string_view>, 8> function_names{{
    {function::sin, "sin"},
    {function::cos, "cos"},
    {function::tan, "tan"},
    {function::exp, "exp"},
    {function::ln, "ln"},
    {function::sqrt, "sqrt"},
    {function::root, "root"},
    {function::abs, "abs"},
}};

template <typename... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <typename... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

} // namespace

std::string_view name(function fn)
{
    for (const auto &[f, n] : function_names) {
        if (f == fn) {
            return n;
        }
    }
    return "?";
}

std::optional<function> function_from_name(std::string_view name)
{
    for (const auto &[f, n] : function_names) {
        if (n == name) {
            return f;
        }
    }
    return std::nullopt;
}

std::size_t arity(function fn)
{
    return fn == function::root ? 2 : 1;
}

expr::expr() : m_node(std::make_shared<const node>(node{constant_node{rational(0)}, 0})) {}

expr expr::constant(const rational &value, std::size_t pos)
{
    if (sgn(value) < 0) {
        return negate(constant(-value, pos), pos);
    }
    return expr(std::make_shared<const node>(node{constant_node{value}, pos}));
}

expr expr::variable(std::string name, std::size_t pos)
{
    return expr(std::make_shared<const node>(node{variable_node{std::move(name)}, pos}));
}

expr expr::negate(expr child, std::size_t pos)
{
    return expr(std::make_shared<const node>(node{negate_node{std::move(child)}, pos}));
}

expr expr::binary(binary_op op, expr left, expr right, std::size_t pos)
{
    return expr(std::make_shared<const node>(node{binary_node{op, std::move(left), std::move(right)}, pos}));
}

expr expr::call(function fn, std::vector<expr> args, std::size_t pos)
{
    return expr(std::make_shared<const node>(node{call_node{fn, std::move(args)}, pos}));
}

std::size_t expr::position() const noexcept
{
    return m_node->position;
}

bool operator==(const expr &a, const expr &b)
{
    if (a.m_node == b.m_node) {
        return true;
    }
    const auto &x = a.m_node->data;
    const auto &y = b.m_node->data;
    if (x.index() != y.index()) {
        return false;
    }
    return std::visit(
        overloaded{
            [&](const constant_node &n) { return n.value == std::get<constant_node>(y).value; },
            [&](const variable_node &n) { return n.name == std::get<variable_node>(y).name; },
            [&](const negate_node &n) { return n.child == std::get<negate_node>(y).child; },
            [&](const binary_node &n) {
                const auto &m = std::get<binary_node>(y);
                return n.op == m.op && n.left == m.left && n.right == m.right;
            },
            [&](const call_node &n) {
                const auto &m = std::get<call_node>(y);
                return n.fn == m.fn && n.args == m.args;
            },
        },
        x);
}

namespace {

// Binding strength used for parenthesisation.
enum precedence : int { additive = 1, multiplicative = 2, unary = 3, power = 4, atom = 5 };

int precedence_of(const expr &e)
{
    return std::visit(overloaded{
                          [](const constant_node &n) { return is_integer(n.value) ? int(atom) : int(multiplicative); },
                          [](const variable_node &) { return int(atom); },
                          [](const negate_node &) { return int(unary); },
                          [](const binary_node &n) {
                              switch (n.op) {
                                  case binary_op::add:
                                  case binary_op::sub:
                                      return int(additive);
                                  case binary_op::mul:
                                  case binary_op::div:
                                      return int(multiplicative);
                                  case binary_op::pow:
                                      return int(power);
                              }
                              return int(atom);
                          },
                          [](const call_node &) { return int(atom); },
                      },
                      e.get().data);
}

std::string wrap(const expr &e, bool parens)
{
    std::string s = render(e);
    return parens ? "(" + s + ")" : s;
}

char op_char(binary_op op)
{
    switch (op) {
        case binary_op::add:
            return '+';
        case binary_op::sub:
            return '-';
        case binary_op::mul:
            return '*';
        case binary_op::div:
            return '/';
        case binary_op::pow:
            return '^';
    }
    return '?';
}

} // namespace

std::string render(const expr &e)
{
    return std::visit(overloaded{
                          [](const constant_node &n) { return to_string(n.value); },
                          [](const variable_node &n) { return n.name; },
                          [](const negate_node &n) { return "-" + wrap(n.child, precedence_of(n.child) < unary); },
                          [](const binary_node &n) {
                              int p = precedence_of(expr::binary(n.op, n.left, n.right));
                              int lp = precedence_of(n.left);
                              int rp = precedence_of(n.right);
                              std::string out;
                              if (n.op == binary_op::pow) {
                                  // Base is a primary; the exponent parses at unary level.
                                  out = wrap(n.left, lp < atom) + "^" + wrap(n.right, rp < unary);
                              } else {
                                  out = wrap(n.left, lp < p) + op_char(n.op) + wrap(n.right, rp <= p);
                              }
                              return out;
                          },
                          [](const call_node &n) {
                              std::string out(name(n.fn));
                              out += "(";
                              for (std::size_t i = 0; i < n.args.size(); ++i) {
                                  if (i > 0) {
                                      out += ", ";
                                  }
                                  out += render(n.args[i]);
                              }
                              return out + ")";
                          },
                      },
                      e.get().data);
}

namespace {

void collect_variables(const expr &e, std::set<std::string> &out)
{
    std::visit(overloaded{
                   [](const constant_node &) {},
                   [&](const variable_node &n) { out.insert(n.name); },
                   [&](const negate_node &n) { collect_variables(n.child, out); },
                   [&](const binary_node &n) {
                       collect_variables(n.left, out);
                       collect_variables(n.right, out);
                   },
                   [&](const call_node &n) {
                       for (const auto &a : n.args) {
                           collect_variables(a, out);
                       }
                   },
               },
               e.get().data);
}

} // namespace

std::set<std::string> free_variables(const expr &e)
{
    std::set<std::string> out;
    collect_variables(e, out);
    return out;
}

std::optional<rational> constant_value(const expr &e)
{
    return std::visit(overloaded{
                          [](const constant_node &n) -> std::optional<rational> { return n.value; },
                          [](const variable_node &) -> std::optional<rational> { return std::nullopt; },
                          [](const negate_node &n) -> std::optional<rational> {
                              auto v = constant_value(n.child);
                              if (!v) {
                                  return std::nullopt;
                              }
                              return rational(-*v);
                          },
                          [](const binary_node &n) -> std::optional<rational> {
                              auto l = constant_value(n.left);
                              if (!l) {
                                  return std::nullopt;
                              }
                              auto r = constant_value(n.right);
                              if (!r) {
                                  return std::nullopt;
                              }
                              switch (n.op) {
                                  case binary_op::add:
                                      return rational(*l + *r);
                                  case binary_op::sub:
                                      return rational(*l - *r);
                                  case binary_op::mul:
                                      return rational(*l * *r);
                                  case binary_op::div:
                                      if (sgn(*r) == 0) {
                                          return std::nullopt;
                                      }
                                      return rational(*l / *r);
                                  case binary_op::pow:
                                      if (!is_integer(*r) || !r->get_num().fits_slong_p() || abs(*r) > 4096) {
                                          return std::nullopt;
                                      }
                                      if (sgn(*l) == 0 && sgn(*r) < 0) {
                                          return std::nullopt;
                                      }
                                      return pow(*l, r->get_num().get_si());
                              }
                              return std::nullopt;
                          },
                          [](const call_node &) -> std::optional<rational> { return std::nullopt; },
                      },
                      e.get().data);
}

} // namespace hrw
