#pragma once

#include "balrep/bigint.hpp"
#include "balrep/fixedreal.hpp"
#include "balrep/linearforms.hpp"

#include <memory>
#include <string>

namespace balrep {

// Parse tree for the CLI input mini-language:
//   expr   := term (("+"|"-") term)*
//   term   := factor (("*"|"/") factor)*
//   factor := integer | "sqrt" "(" expr ")" | "log" "(" expr ")" | "(" expr ")"
struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
    enum class Kind { Int, Sqrt, Log, Add, Sub, Mul, Div };
    Kind kind;
    BigInt value;  // Kind::Int
    ExprPtr lhs;   // unary operand for Sqrt/Log
    ExprPtr rhs;
};

bool expr_equal(const ExprPtr& a, const ExprPtr& b);

// Throws SyntaxError carrying the byte offset and the expected token set.
ExprPtr parse_expr(const std::string& s);

// Fully parenthesized rendering; parse(print(t)) reproduces t.
std::string print_expr(const ExprPtr& e);

// Certified evaluation. Subexpressions under log must be certified positive
// and under sqrt certified nonnegative; DomainError names the offender.
FixedReal eval_expr(const ExprPtr& e, long scale);

// Exact evaluation in Q(sqrt 2) for height computations. log nodes and
// square roots outside the field raise DomainError.
QuadraticAlgebraic eval_quadratic(const ExprPtr& e);

}  // namespace balrep
