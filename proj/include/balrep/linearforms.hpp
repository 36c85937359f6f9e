#pragma once

#include "balrep/bigint.hpp"
#include "balrep/fixedreal.hpp"

#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace balrep {

// (a + b*sqrt(2)) / c in lowest terms, c >= 1.
struct QuadraticAlgebraic {
    BigInt a;
    BigInt b;
    BigInt c;

    QuadraticAlgebraic(BigInt a, BigInt b, BigInt c);
    static QuadraticAlgebraic rational(BigInt a, BigInt c = 1);

    bool is_rational() const { return b == 0; }
    QuadraticAlgebraic conjugate() const { return QuadraticAlgebraic(a, -b, c); }
    FixedReal to_fixed(long scale) const;
    std::string to_string() const;

    QuadraticAlgebraic operator+(const QuadraticAlgebraic&) const;
    QuadraticAlgebraic operator-(const QuadraticAlgebraic&) const;
    QuadraticAlgebraic operator*(const QuadraticAlgebraic&) const;
    QuadraticAlgebraic operator/(const QuadraticAlgebraic&) const;
};

// log max(|a|, b) for a/b in lowest terms, b >= 1.
FixedReal height_rational(const BigInt& a, const BigInt& b, long scale);

// Exact logarithmic height via the minimal primitive polynomial over Z.
FixedReal height_quadratic(const QuadraticAlgebraic& x, long scale);

// Expression tree for composing height upper bounds:
//   h(x +- y) <= h(x) + h(y) + log 2
//   h(x */ y) <= h(x) + h(y)
//   h(x^k)     = |k| h(x)
class HeightExpr {
  public:
    static HeightExpr leaf(QuadraticAlgebraic v);
    static HeightExpr add(HeightExpr lhs, HeightExpr rhs);  // covers subtraction
    static HeightExpr mul(HeightExpr lhs, HeightExpr rhs);  // covers division
    static HeightExpr pow(HeightExpr base, long exponent);

    FixedReal bound(long scale) const;

  private:
    enum class Kind { Leaf, AddSub, MulDiv, Pow };
    HeightExpr() = default;
    Kind kind_ = Kind::Leaf;
    std::shared_ptr<QuadraticAlgebraic> value_;
    std::shared_ptr<HeightExpr> lhs_, rhs_;
    long exponent_ = 1;
};

FixedReal height_bound(const HeightExpr& e, long scale);

// Data of the lower-bound theorem for a product of l powers minus one over a
// field of the given degree. Each A[j] must dominate
// max(degree * h(gamma_j), |log gamma_j|, 0.16); D bounds the exponents.
struct MatveevInstance {
    int log_count = 0;  // l
    int field_degree = 0;
    std::vector<FixedReal> A;
    BigInt D;
};

// 1.4 * 30^(l+3) * l^4.5 * d^2 (1 + log d)(1 + log D) A_1...A_l; the linear
// form's log-magnitude is bounded below by the negative of this.
FixedReal matveev_bound(const MatveevInstance& inst, long scale);

// Same product without the (1 + log D) factor, for D left symbolic.
FixedReal matveev_prefactor(int log_count, int field_degree,
                            const std::vector<FixedReal>& A, long scale);

// RHS evaluator for the exponent-bound solver: k, scale -> certified value.
using KBoundRhs = std::function<FixedReal(const BigInt& k, long scale)>;

// Least K with lhs_slope*k - lhs_offset > rhs(k) for every k >= K, for an
// increasing concave rhs. Exponential search then bisection on the certified
// predicate [slope*k - offset > rhs(k) and slope > rhs(k+1) - rhs(k)].
BigInt solve_k_bound(const KBoundRhs& rhs, const FixedReal& lhs_slope,
                     const FixedReal& lhs_offset, long scale, int max_doublings = 4,
                     unsigned max_doubling_steps = 140);

}  // namespace balrep
