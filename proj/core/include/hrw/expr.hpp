#pragma once

// Immutable AST of the expression language. Nodes are shared, so copies of
// an expr are cheap and safe to hand to concurrent evaluators.

#include <hrw/rational.hpp>

#include <cstddef>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace hrw {

enum class binary_op { add, sub, mul, div, pow };
enum class function { sin, cos, tan, exp, ln, sqrt, root, abs };

std::string_view name(function fn);
std::optional<function> function_from_name(std::string_view name);
std::size_t arity(function fn);

struct node;

class expr
{
public:
    // The constant 0.
    expr();

    // Negative values are stored as a negation of their magnitude so that
    // every constant node is non-negative.
    static expr constant(const rational &value, std::size_t pos = 0);
    static expr variable(std::string name, std::size_t pos = 0);
    static expr negate(expr child, std::size_t pos = 0);
    static expr binary(binary_op op, expr left, expr right, std::size_t pos = 0);
    static expr call(function fn, std::vector<expr> args, std::size_t pos = 0);

    const node &get() const noexcept
    {
        return *m_node;
    }
    // Character offset of the node in the source text.
    std::size_t position() const noexcept;

    // Structural equality; source positions are ignored.
    friend bool operator==(const expr &a, const expr &b);

private:
    explicit expr(std::shared_ptr<const node> n) : m_node(std::move(n)) {}

    std::shared_ptr<const node> m_node;
};

struct constant_node {
    rational value;
};
struct variable_node {
    std::string name;
};
struct negate_node {
    expr child;
};
struct binary_node {
    binary_op op;
    expr left;
    expr right;
};
struct call_node {
    function fn;
    std::vector<expr> args;
};

struct node {
    std::variant<constant_node, variable_node, negate_node, binary_node, call_node> data;
    std::size_t position = 0;
};

// Minimal-parenthesis rendering that reparses to the same tree.
std::string render(const expr &e);

std::set<std::string> free_variables(const expr &e);

// Value of a subtree built only from constants, negation, + - * / and
// integer powers; empty otherwise.
std::optional<rational> constant_value(const expr &e);

// Named constants resolved when not bound by the caller.
inline bool is_named_constant(std::string_view name)
{
    return name == "pi" || name == "e";
}

// `name(params) = body`.
struct function_def {
    std::string name;
    std::vector<std::string> params;
    expr body;
};

} // namespace hrw
