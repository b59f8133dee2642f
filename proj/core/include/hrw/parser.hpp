#pragma once

// Tokenizer and precedence-climbing parser for the expression language.
//
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := '-' unary | power
//   power   := primary ('^' unary)?          right associative
//   primary := number | identifier | identifier '(' args ')' | '(' expr ')'
//
// Decimal literals are exact rationals and a quotient of two literal
// constants folds into a single constant, so "0.25" and "1/4" both parse to
// the constant 1/4.

#include <hrw/expr.hpp>

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace hrw {

enum class token_kind { number, identifier, op, lparen, rparen, comma, end };

struct token {
    token_kind kind;
    std::string text;
    std::size_t position;
};

std::vector<token> tokenize(std::string_view input);

expr parse(std::string_view input);

// One `name(params) = body` per line; '#' starts a comment. Throws
// parse_error with offsets relative to the whole text.
std::vector<function_def> parse_function_file(std::string_view text);

} // namespace hrw
