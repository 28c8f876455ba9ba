#include "telecert/frontend/expr.hpp"

#include "telecert/errors.hpp"

#include <cctype>
#include <map>

namespace telecert {

Expr Expr::integer(Integer v)
{
    Expr e;
    e.kind = ExprKind::Integer;
    e.value = std::move(v);
    return e;
}

Expr Expr::symbol(std::string s)
{
    Expr e;
    e.kind = ExprKind::Symbol;
    e.name = std::move(s);
    return e;
}

Expr Expr::call(std::string f, std::vector<Expr> args)
{
    Expr e;
    e.kind = ExprKind::Call;
    e.name = std::move(f);
    e.args = std::move(args);
    return e;
}

Expr Expr::unary(ExprKind k, Expr a)
{
    Expr e;
    e.kind = k;
    e.args.push_back(std::move(a));
    return e;
}

Expr Expr::binary(ExprKind k, Expr a, Expr b)
{
    Expr e;
    e.kind = k;
    e.args.push_back(std::move(a));
    e.args.push_back(std::move(b));
    return e;
}

int function_arity(const std::string& name)
{
    static const std::map<std::string, int> arity{
        {"factorial", 1}, {"binom", 2},   {"pochhammer", 2}, {"H", 2},
        {"qpow", 1},      {"geometric", 1}, {"sum", 2},      {"product", 2},
    };
    auto it = arity.find(name);
    return it == arity.end() ? -1 : it->second;
}

namespace {

enum class Tok { Int, Ident, Op, End };

struct Token {
    Tok kind = Tok::End;
    std::string text;
    int line = 1;
    int col = 1;
};

class Lexer {
public:
    explicit Lexer(const std::string& s) : s_(s) {}

    Token next()
    {
        skip_space();
        Token t;
        t.line = line_;
        t.col = col_;
        if (i_ >= s_.size())
            return t;
        char c = s_[i_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            t.kind = Tok::Int;
            while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_])))
                t.text += take();
        } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            t.kind = Tok::Ident;
            while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_'))
                t.text += take();
        } else if (std::string("+-*/^(),").find(c) != std::string::npos) {
            t.kind = Tok::Op;
            t.text = take();
        } else {
            throw SyntaxError(line_, col_, "operand or operator");
        }
        return t;
    }

private:
    char take()
    {
        char c = s_[i_++];
        if (c == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        return c;
    }

    void skip_space()
    {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_])))
            take();
    }

    const std::string& s_;
    std::size_t i_ = 0;
    int line_ = 1;
    int col_ = 1;
};

class Parser {
public:
    explicit Parser(const std::string& s) : lex_(s) { cur_ = lex_.next(); }

    Expr parse_all()
    {
        Expr e = expr();
        if (cur_.kind != Tok::End)
            fail("operator or end of input");
        return e;
    }

    std::vector<Expr> parse_list()
    {
        std::vector<Expr> out{expr()};
        while (is_op(",")) {
            advance();
            out.push_back(expr());
        }
        if (cur_.kind != Tok::End)
            fail("',' or end of input");
        return out;
    }

private:
    [[noreturn]] void fail(const std::string& expected) { throw SyntaxError(cur_.line, cur_.col, expected); }

    bool is_op(const char* op) const { return cur_.kind == Tok::Op && cur_.text == op; }

    void advance() { cur_ = lex_.next(); }

    void expect(const char* op)
    {
        if (!is_op(op))
            fail(std::string("'") + op + "'");
        advance();
    }

    Expr expr()
    {
        Expr e = term();
        while (is_op("+") || is_op("-")) {
            ExprKind k = cur_.text == "+" ? ExprKind::Add : ExprKind::Sub;
            advance();
            e = Expr::binary(k, std::move(e), term());
        }
        return e;
    }

    Expr term()
    {
        Expr e = unary();
        while (is_op("*") || is_op("/")) {
            ExprKind k = cur_.text == "*" ? ExprKind::Mul : ExprKind::Div;
            advance();
            e = Expr::binary(k, std::move(e), unary());
        }
        return e;
    }

    Expr unary()
    {
        if (is_op("-")) {
            advance();
            return Expr::unary(ExprKind::Neg, unary());
        }
        return power();
    }

    Expr power()
    {
        Expr base = primary();
        if (!is_op("^"))
            return base;
        advance();
        return Expr::binary(ExprKind::Pow, std::move(base), exponent());
    }

    // Integer literal, optionally negated, or an identifier.
    Expr exponent()
    {
        bool paren = is_op("(");
        if (paren)
            advance();
        bool neg = is_op("-");
        if (neg)
            advance();
        Expr e;
        if (cur_.kind == Tok::Int) {
            e = Expr::integer(Integer(cur_.text));
            advance();
        } else if (cur_.kind == Tok::Ident && !neg) {
            e = Expr::symbol(cur_.text);
            advance();
        } else {
            fail("integer exponent or summation variable");
        }
        if (neg)
            e = Expr::unary(ExprKind::Neg, std::move(e));
        if (paren)
            expect(")");
        return e;
    }

    Expr primary()
    {
        if (cur_.kind == Tok::Int) {
            Expr e = Expr::integer(Integer(cur_.text));
            advance();
            return e;
        }
        if (is_op("(")) {
            advance();
            Expr e = expr();
            expect(")");
            return e;
        }
        if (cur_.kind != Tok::Ident)
            fail("expression");
        Token id = cur_;
        advance();
        if (!is_op("("))
            return Expr::symbol(id.text);
        int arity = function_arity(id.text);
        if (arity < 0)
            throw SyntaxError(id.line, id.col, "known function name");
        advance();
        std::vector<Expr> args;
        if (!is_op(")")) {
            args.push_back(expr());
            while (is_op(",")) {
                advance();
                args.push_back(expr());
            }
        }
        if (static_cast<int>(args.size()) != arity) {
            if (static_cast<int>(args.size()) < arity)
                fail("','");
            throw SyntaxError(id.line, id.col, std::to_string(arity) + " argument(s) for " + id.text);
        }
        expect(")");
        return Expr::call(id.text, std::move(args));
    }

    Lexer lex_;
    Token cur_;
};

int precedence(const Expr& e)
{
    switch (e.kind) {
    case ExprKind::Add:
    case ExprKind::Sub:
        return 1;
    case ExprKind::Mul:
    case ExprKind::Div:
        return 2;
    case ExprKind::Neg:
        return 3;
    case ExprKind::Pow:
        return 4;
    default:
        return 5;
    }
}

std::string print_at(const Expr& e, int min_prec)
{
    std::string s;
    switch (e.kind) {
    case ExprKind::Integer:
        s = e.value.get_str();
        break;
    case ExprKind::Symbol:
        s = e.name;
        break;
    case ExprKind::Neg:
        s = "-" + print_at(e.args[0], 3);
        break;
    case ExprKind::Add:
        s = print_at(e.args[0], 1) + " + " + print_at(e.args[1], 2);
        break;
    case ExprKind::Sub:
        s = print_at(e.args[0], 1) + " - " + print_at(e.args[1], 2);
        break;
    case ExprKind::Mul:
        s = print_at(e.args[0], 2) + "*" + print_at(e.args[1], 3);
        break;
    case ExprKind::Div:
        s = print_at(e.args[0], 2) + "/" + print_at(e.args[1], 3);
        break;
    case ExprKind::Pow: {
        const Expr& x = e.args[1];
        std::string ex = x.kind == ExprKind::Neg ? "(-" + print_at(x.args[0], 5) + ")" : print_at(x, 5);
        s = print_at(e.args[0], 5) + "^" + ex;
        break;
    }
    case ExprKind::Call:
        s = e.name + "(";
        for (std::size_t i = 0; i < e.args.size(); ++i)
            s += (i ? "," : "") + print_at(e.args[i], 0);
        s += ")";
        break;
    }
    return precedence(e) < min_prec ? "(" + s + ")" : s;
}

}  // namespace

Expr parse_expr(const std::string& text) { return Parser(text).parse_all(); }

std::vector<Expr> parse_expr_list(const std::string& text) { return Parser(text).parse_list(); }

std::string print_expr(const Expr& e) { return print_at(e, 0); }

bool mentions(const Expr& e, const std::string& symbol)
{
    if (e.kind == ExprKind::Symbol)
        return e.name == symbol;
    for (const auto& a : e.args)
        if (mentions(a, symbol))
            return true;
    return false;
}

}  // namespace telecert
