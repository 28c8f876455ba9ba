#pragma once

// Expression syntax for summands (grammar in docs/grammar.md).

#include "telecert/algebra/rational.hpp"

#include <string>
#include <vector>

namespace telecert {

enum class ExprKind { Integer, Symbol, Neg, Add, Sub, Mul, Div, Pow, Call };

struct Expr {
    ExprKind kind = ExprKind::Integer;
    Integer value;                 // Integer
    std::string name;              // Symbol, Call
    std::vector<Expr> args;        // operands or call arguments

    bool operator==(const Expr& o) const
    {
        return kind == o.kind && value == o.value && name == o.name && args == o.args;
    }
    bool operator!=(const Expr& o) const { return !(*this == o); }

    static Expr integer(Integer v);
    static Expr symbol(std::string s);
    static Expr call(std::string f, std::vector<Expr> args);
    static Expr unary(ExprKind k, Expr a);
    static Expr binary(ExprKind k, Expr a, Expr b);
};

// Known functions and their arities.
int function_arity(const std::string& name);

// Throws SyntaxError(line, col, expected).
Expr parse_expr(const std::string& text);
// Comma-separated list at top level: "1/k,1/k^2".
std::vector<Expr> parse_expr_list(const std::string& text);

// Minimal-parenthesis rendering; parse_expr(print_expr(e)) == e.
std::string print_expr(const Expr& e);

bool mentions(const Expr& e, const std::string& symbol);

}  // namespace telecert
