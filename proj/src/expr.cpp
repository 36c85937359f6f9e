#include "balrep/expr.hpp"

#include "balrep/errors.hpp"

#include <cctype>

namespace balrep {

namespace {

ExprPtr make_int(BigInt v) {
    auto e = std::make_shared<Expr>();
    e->kind = Expr::Kind::Int;
    e->value = std::move(v);
    return e;
}

ExprPtr make_unary(Expr::Kind k, ExprPtr arg) {
    auto e = std::make_shared<Expr>();
    e->kind = k;
    e->lhs = std::move(arg);
    return e;
}

ExprPtr make_binary(Expr::Kind k, ExprPtr l, ExprPtr r) {
    auto e = std::make_shared<Expr>();
    e->kind = k;
    e->lhs = std::move(l);
    e->rhs = std::move(r);
    return e;
}

class Parser {
  public:
    explicit Parser(const std::string& s) : s_(s) {}

    ExprPtr parse() {
        ExprPtr e = expr();
        skip_ws();
        if (pos_ != s_.size()) throw SyntaxError(pos_, "end of input");
        return e;
    }

  private:
    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    char peek() {
        skip_ws();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }

    bool consume(char c) {
        if (peek() == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    ExprPtr expr() {
        ExprPtr e = term();
        while (true) {
            if (consume('+'))
                e = make_binary(Expr::Kind::Add, e, term());
            else if (consume('-'))
                e = make_binary(Expr::Kind::Sub, e, term());
            else
                return e;
        }
    }

    ExprPtr term() {
        ExprPtr e = factor();
        while (true) {
            if (consume('*'))
                e = make_binary(Expr::Kind::Mul, e, factor());
            else if (consume('/'))
                e = make_binary(Expr::Kind::Div, e, factor());
            else
                return e;
        }
    }

    ExprPtr factor() {
        char c = peek();
        if (std::isdigit(static_cast<unsigned char>(c))) return integer();
        if (c == '(') {
            ++pos_;
            ExprPtr e = expr();
            expect(')');
            return e;
        }
        if (try_keyword("sqrt")) return make_unary(Expr::Kind::Sqrt, parenthesized());
        if (try_keyword("log")) return make_unary(Expr::Kind::Log, parenthesized());
        throw SyntaxError(pos_, "integer, 'sqrt', 'log' or '('");
    }

    ExprPtr parenthesized() {
        expect('(');
        ExprPtr e = expr();
        expect(')');
        return e;
    }

    void expect(char c) {
        if (!consume(c)) throw SyntaxError(pos_, std::string("'") + c + "'");
    }

    bool try_keyword(const char* kw) {
        skip_ws();
        std::size_t n = std::string(kw).size();
        if (s_.compare(pos_, n, kw) == 0) {
            pos_ += n;
            return true;
        }
        return false;
    }

    ExprPtr integer() {
        std::string digits;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            digits += s_[pos_];
            ++pos_;
        }
        return make_int(BigInt(digits));
    }

    const std::string& s_;
    std::size_t pos_ = 0;
};

}  // namespace

bool expr_equal(const ExprPtr& a, const ExprPtr& b) {
    if (!a || !b) return a == b;
    if (a->kind != b->kind) return false;
    if (a->kind == Expr::Kind::Int) return a->value == b->value;
    return expr_equal(a->lhs, b->lhs) && expr_equal(a->rhs, b->rhs);
}

ExprPtr parse_expr(const std::string& s) { return Parser(s).parse(); }

std::string print_expr(const ExprPtr& e) {
    switch (e->kind) {
        case Expr::Kind::Int: return e->value.str();
        case Expr::Kind::Sqrt: return "sqrt(" + print_expr(e->lhs) + ")";
        case Expr::Kind::Log: return "log(" + print_expr(e->lhs) + ")";
        case Expr::Kind::Add: return "(" + print_expr(e->lhs) + "+" + print_expr(e->rhs) + ")";
        case Expr::Kind::Sub: return "(" + print_expr(e->lhs) + "-" + print_expr(e->rhs) + ")";
        case Expr::Kind::Mul: return "(" + print_expr(e->lhs) + "*" + print_expr(e->rhs) + ")";
        case Expr::Kind::Div: return "(" + print_expr(e->lhs) + "/" + print_expr(e->rhs) + ")";
    }
    throw Error("print_expr: bad node");
}

FixedReal eval_expr(const ExprPtr& e, long scale) {
    switch (e->kind) {
        case Expr::Kind::Int: return FixedReal::exact(e->value, scale);
        case Expr::Kind::Sqrt: {
            FixedReal v = eval_expr(e->lhs, scale + 5);
            if (v.lower_ulp() < 0)
                throw DomainError(print_expr(e->lhs), "not certified nonnegative under sqrt");
            return sqrt_fixed(v, scale);
        }
        case Expr::Kind::Log: {
            FixedReal v = eval_expr(e->lhs, scale + 5);
            if (!v.certainly_positive())
                throw DomainError(print_expr(e->lhs), "not certified positive under log");
            return ln(v, scale);
        }
        case Expr::Kind::Add:
            return add_at(eval_expr(e->lhs, scale + 5), eval_expr(e->rhs, scale + 5), scale);
        case Expr::Kind::Sub:
            return sub_at(eval_expr(e->lhs, scale + 5), eval_expr(e->rhs, scale + 5), scale);
        case Expr::Kind::Mul:
            return mul_at(eval_expr(e->lhs, scale + 5), eval_expr(e->rhs, scale + 5), scale);
        case Expr::Kind::Div: {
            FixedReal den = eval_expr(e->rhs, scale + 5);
            if (!den.certainly_nonzero())
                throw DomainError(print_expr(e->rhs), "divisor not certified nonzero");
            return div_at(eval_expr(e->lhs, scale + 5), den, scale);
        }
    }
    throw Error("eval_expr: bad node");
}

QuadraticAlgebraic eval_quadratic(const ExprPtr& e) {
    switch (e->kind) {
        case Expr::Kind::Int: return QuadraticAlgebraic::rational(e->value);
        case Expr::Kind::Log:
            throw DomainError(print_expr(e), "log is not algebraic");
        case Expr::Kind::Sqrt: {
            QuadraticAlgebraic v = eval_quadratic(e->lhs);
            if (!v.is_rational() || v.a < 0)
                throw DomainError(print_expr(e), "sqrt argument must be a nonnegative rational");
            // sqrt(a/c) = sqrt(ac)/c; representable when ac = u^2 or 2 u^2.
            BigInt m = v.a * v.c;
            BigInt u = isqrt(m);
            if (u * u == m) return QuadraticAlgebraic(u, 0, v.c);
            if (m % 2 == 0) {
                BigInt u2 = isqrt(m / 2);
                if (2 * u2 * u2 == m) return QuadraticAlgebraic(0, u2, v.c);
            }
            throw DomainError(print_expr(e), "square root not in Q(sqrt(2))");
        }
        case Expr::Kind::Add: return eval_quadratic(e->lhs) + eval_quadratic(e->rhs);
        case Expr::Kind::Sub: return eval_quadratic(e->lhs) - eval_quadratic(e->rhs);
        case Expr::Kind::Mul: return eval_quadratic(e->lhs) * eval_quadratic(e->rhs);
        case Expr::Kind::Div: {
            QuadraticAlgebraic den = eval_quadratic(e->rhs);
            if (den.a == 0 && den.b == 0)
                throw DomainError(print_expr(e->rhs), "division by zero");
            return eval_quadratic(e->lhs) / den;
        }
    }
    throw Error("eval_quadratic: bad node");
}

}  // namespace balrep
