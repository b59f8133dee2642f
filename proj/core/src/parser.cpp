#include <hrw/errors.hpp>
#include <hrw/parser.hpp>

#include <cctype>

namespace hrw {

namespace {

std::string describe(const token &t)
{
    switch (t.kind) {
        case token_kind::end:
            return "end of input";
        case token_kind::number:
            return "number '" + t.text + "'";
        case token_kind::identifier:
            return "identifier '" + t.text + "'";
        default:
            return "'" + t.text + "'";
    }
}

class parser
{
public:
    explicit parser(std::string_view input) : m_tokens(tokenize(input)) {}

    expr parse_all()
    {
        expr e = parse_additive();
        if (peek().kind != token_kind::end) {
            throw parse_error(peek().position, "operator or end of input", describe(peek()));
        }
        return e;
    }

private:
    const token &peek() const
    {
        return m_tokens[m_pos];
    }
    const token &advance()
    {
        return m_tokens[m_pos++];
    }
    bool at_op(char c) const
    {
        return peek().kind == token_kind::op && peek().text[0] == c;
    }

    expr parse_additive()
    {
        expr left = parse_multiplicative();
        while (at_op('+') || at_op('-')) {
            const token &t = advance();
            expr right = parse_multiplicative();
            left = expr::binary(t.text[0] == '+' ? binary_op::add : binary_op::sub, left, right, t.position);
        }
        return left;
    }

    expr parse_multiplicative()
    {
        expr left = parse_unary();
        while (at_op('*') || at_op('/')) {
            const token &t = advance();
            expr right = parse_unary();
            if (t.text[0] == '/') {
                const auto *l = std::get_if<constant_node>(&left.get().data);
                const auto *r = std::get_if<constant_node>(&right.get().data);
                if (l && r && sgn(r->value) != 0) {
                    left = expr::constant(l->value / r->value, left.position());
                    continue;
                }
            }
            left = expr::binary(t.text[0] == '*' ? binary_op::mul : binary_op::div, left, right, t.position);
        }
        return left;
    }

    expr parse_unary()
    {
        if (at_op('-')) {
            const token &t = advance();
            return expr::negate(parse_unary(), t.position);
        }
        return parse_power();
    }

    expr parse_power()
    {
        expr base = parse_primary();
        if (at_op('^')) {
            const token &t = advance();
            expr exponent = parse_unary();
            return expr::binary(binary_op::pow, base, exponent, t.position);
        }
        return base;
    }

    expr parse_primary()
    {
        const token &t = peek();
        switch (t.kind) {
            case token_kind::number: {
                advance();
                return expr::constant(parse_rational(t.text), t.position);
            }
            case token_kind::identifier: {
                advance();
                if (peek().kind == token_kind::lparen) {
                    return parse_call(t);
                }
                return expr::variable(t.text, t.position);
            }
            case token_kind::lparen: {
                advance();
                expr inner = parse_additive();
                expect(token_kind::rparen, "')'");
                return inner;
            }
            default:
                throw parse_error(t.position, "operand", describe(t));
        }
    }

    expr parse_call(const token &name_token)
    {
        auto fn = function_from_name(name_token.text);
        if (!fn) {
            throw parse_error(name_token.position, "known function", describe(name_token));
        }
        advance(); // '('
        std::vector<expr> args;
        args.push_back(parse_additive());
        while (peek().kind == token_kind::comma) {
            advance();
            args.push_back(parse_additive());
        }
        const token &close = peek();
        expect(token_kind::rparen, "')'");
        if (args.size() != arity(*fn)) {
            throw parse_error(close.position, std::to_string(arity(*fn)) + " argument(s) to " + name_token.text,
                              std::to_string(args.size()));
        }
        if (*fn == function::root) {
            // A constant degree must be an integer >= 2; other degrees are
            // checked when evaluated.
            if (auto n = constant_value(args[0]); n && (!is_integer(*n) || *n < 2)) {
                throw parse_error(args[0].position(), "integer root degree >= 2", to_string(*n));
            }
        }
        return expr::call(*fn, std::move(args), name_token.position);
    }

    void expect(token_kind kind, const char *what)
    {
        if (peek().kind != kind) {
            throw parse_error(peek().position, what, describe(peek()));
        }
        advance();
    }

    std::vector<token> m_tokens;
    std::size_t m_pos = 0;
};

} // namespace

std::vector<token> tokenize(std::string_view input)
{
    std::vector<token> out;
    std::size_t i = 0;
    while (i < input.size()) {
        unsigned char c = static_cast<unsigned char>(input[i]);
        if (std::isspace(c)) {
            ++i;
            continue;
        }
        std::size_t start = i;
        if (std::isdigit(c) || (c == '.' && i + 1 < input.size() && std::isdigit(static_cast<unsigned char>(input[i + 1])))) {
            while (i < input.size() && std::isdigit(static_cast<unsigned char>(input[i]))) {
                ++i;
            }
            if (i < input.size() && input[i] == '.') {
                ++i;
                if (i >= input.size() || !std::isdigit(static_cast<unsigned char>(input[i]))) {
                    throw parse_error(i, "digit after decimal point",
                                      i >= input.size() ? "end of input" : "'" + std::string(1, input[i]) + "'");
                }
                while (i < input.size() && std::isdigit(static_cast<unsigned char>(input[i]))) {
                    ++i;
                }
            }
            std::string text(input.substr(start, i - start));
            if (text.front() == '.') {
                text.insert(0, "0");
            }
            out.push_back({token_kind::number, text, start});
            continue;
        }
        if (std::isalpha(c) || c == '_') {
            while (i < input.size() && (std::isalnum(static_cast<unsigned char>(input[i])) || input[i] == '_')) {
                ++i;
            }
            out.push_back({token_kind::identifier, std::string(input.substr(start, i - start)), start});
            continue;
        }
        switch (c) {
            case '+':
            case '-':
            case '*':
            case '/':
            case '^':
                out.push_back({token_kind::op, std::string(1, static_cast<char>(c)), start});
                break;
            case '(':
                out.push_back({token_kind::lparen, "(", start});
                break;
            case ')':
                out.push_back({token_kind::rparen, ")", start});
                break;
            case ',':
                out.push_back({token_kind::comma, ",", start});
                break;
            default:
                throw parse_error(start, "token", "'" + std::string(1, static_cast<char>(c)) + "'");
        }
        ++i;
    }
    out.push_back({token_kind::end, "", input.size()});
    return out;
}

expr parse(std::string_view input)
{
    return parser(input).parse_all();
}

std::vector<function_def> parse_function_file(std::string_view text)
{
    std::vector<function_def> out;
    std::size_t line_start = 0;
    while (line_start <= text.size()) {
        std::size_t line_end = text.find('\n', line_start);
        if (line_end == std::string_view::npos) {
            line_end = text.size();
        }
        std::string_view line = text.substr(line_start, line_end - line_start);
        if (auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        bool blank = true;
        for (char c : line) {
            if (!std::isspace(static_cast<unsigned char>(c))) {
                blank = false;
                break;
            }
        }
        if (!blank) {
            auto eq = line.find('=');
            if (eq == std::string_view::npos) {
                throw parse_error(line_start + line.size(), "'='", "end of line");
            }
            auto head = tokenize(line.substr(0, eq));
            std::size_t k = 0;
            auto fail = [&](const char *what) {
                throw parse_error(line_start + head[k].position, what, describe(head[k]));
            };
            function_def def;
            if (head[k].kind != token_kind::identifier) {
                fail("function name");
            }
            def.name = head[k++].text;
            if (head[k].kind != token_kind::lparen) {
                fail("'('");
            }
            ++k;
            while (head[k].kind == token_kind::identifier) {
                def.params.push_back(head[k++].text);
                if (head[k].kind == token_kind::comma) {
                    ++k;
                    if (head[k].kind != token_kind::identifier) {
                        fail("parameter name");
                    }
                }
            }
            if (head[k].kind != token_kind::rparen) {
                fail("')'");
            }
            ++k;
            if (head[k].kind != token_kind::end) {
                fail("'='");
            }
            try {
                def.body = parse(line.substr(eq + 1));
            } catch (const parse_error &err) {
                throw parse_error(line_start + eq + 1 + err.position().value_or(0), err.expected(), err.found());
            }
            for (const auto &v : free_variables(def.body)) {
                bool bound = is_named_constant(v);
                for (const auto &p : def.params) {
                    bound = bound || p == v;
                }
                if (!bound) {
                    throw parse_error(line_start + eq + 1, "parameter or named constant", "free variable '" + v + "'");
                }
            }
            out.push_back(std::move(def));
        }
        if (line_end == text.size()) {
            break;
        }
        line_start = line_end + 1;
    }
    return out;
}

} // namespace hrw
