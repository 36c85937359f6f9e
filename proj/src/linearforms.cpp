#include "balrep/linearforms.hpp"

#include "balrep/errors.hpp"

#include <utility>

namespace balrep {

namespace {

BigInt gcd3(const BigInt& a, const BigInt& b, const BigInt& c) {
    return gcd(gcd(abs(a), abs(b)), abs(c));
}

// max(0, x) on the interval.
FixedReal plus_part(const FixedReal& x) {
    if (x.lower_ulp() >= 0) return x;
    if (x.upper_ulp() <= 0) return FixedReal::exact(0, x.scale());
    BigInt hi = x.upper_ulp();
    BigInt m = hi / 2;
    return FixedReal::with_error(m, x.scale(), std::max(m, hi - m));
}

}  // namespace

QuadraticAlgebraic::QuadraticAlgebraic(BigInt a_, BigInt b_, BigInt c_)
    : a(std::move(a_)), b(std::move(b_)), c(std::move(c_)) {
    if (c == 0) throw Error("QuadraticAlgebraic: zero denominator");
    if (c < 0) {
        a = -a;
        b = -b;
        c = -c;
    }
    BigInt g = gcd3(a, b, c);
    if (g > 1) {
        a /= g;
        b /= g;
        c /= g;
    }
}

QuadraticAlgebraic QuadraticAlgebraic::rational(BigInt a, BigInt c) {
    return QuadraticAlgebraic(std::move(a), 0, std::move(c));
}

FixedReal QuadraticAlgebraic::to_fixed(long scale) const {
    FixedReal num = add_at(FixedReal::exact(a), mul_bigint(sqrt2(scale), b), scale);
    return div_at(num, FixedReal::exact(c), scale);
}

std::string QuadraticAlgebraic::to_string() const {
    std::string s = "(" + a.str();
    if (b != 0) s += (b > 0 ? "+" : "") + b.str() + "*sqrt(2)";
    s += ")/" + c.str();
    return s;
}

QuadraticAlgebraic QuadraticAlgebraic::operator+(const QuadraticAlgebraic& o) const {
    return QuadraticAlgebraic(a * o.c + o.a * c, b * o.c + o.b * c, c * o.c);
}

QuadraticAlgebraic QuadraticAlgebraic::operator-(const QuadraticAlgebraic& o) const {
    return QuadraticAlgebraic(a * o.c - o.a * c, b * o.c - o.b * c, c * o.c);
}

QuadraticAlgebraic QuadraticAlgebraic::operator*(const QuadraticAlgebraic& o) const {
    return QuadraticAlgebraic(a * o.a + 2 * b * o.b, a * o.b + b * o.a, c * o.c);
}

QuadraticAlgebraic QuadraticAlgebraic::operator/(const QuadraticAlgebraic& o) const {
    // 1/((a + b sqrt2)/c) = c (a - b sqrt2) / (a^2 - 2 b^2)
    BigInt norm = o.a * o.a - 2 * o.b * o.b;
    if (norm == 0) throw Error("QuadraticAlgebraic: division by zero");
    QuadraticAlgebraic inv(o.c * o.a, -o.c * o.b, norm);
    return *this * inv;
}

FixedReal height_rational(const BigInt& a, const BigInt& b, long scale) {
    if (b < 1) throw NotLowestTerms("height_rational: denominator must be >= 1");
    if (gcd(abs(a), b) != 1) throw NotLowestTerms("height_rational: gcd(a,b) != 1");
    BigInt m = std::max(abs(a), b);
    if (m == 0) throw Error("height_rational: zero has no height here");
    return ln_rational(m, 1, scale);
}

FixedReal height_quadratic(const QuadraticAlgebraic& x, long scale) {
    if (x.is_rational()) {
        if (x.a == 0) return FixedReal::exact(0, scale);
        return height_rational(x.a, x.c, scale);
    }
    // Minimal polynomial: primitive part of c^2 X^2 - 2ac X + (a^2 - 2b^2).
    BigInt c0 = x.c * x.c;
    BigInt c1 = -2 * x.a * x.c;
    BigInt c2 = x.a * x.a - 2 * x.b * x.b;
    BigInt g = gcd3(c0, c1, c2);
    BigInt lead = c0 / g;
    long s = scale + 10;
    for (int attempt = 0;; ++attempt) {
        FixedReal conj1 = x.to_fixed(s).abs_interval();
        FixedReal conj2 = x.conjugate().to_fixed(s).abs_interval();
        if (conj1.certainly_positive() && conj2.certainly_positive()) {
            FixedReal h = ln_rational(lead, 1, s);
            h = add_at(h, plus_part(ln(conj1, s)), s);
            h = add_at(h, plus_part(ln(conj2, s)), s);
            return div_at(h, FixedReal::exact(2), scale);
        }
        if (attempt >= 4)
            throw PrecisionInsufficient("height_quadratic: conjugate too close to zero");
        s *= 2;
    }
}

HeightExpr HeightExpr::leaf(QuadraticAlgebraic v) {
    HeightExpr e;
    e.kind_ = Kind::Leaf;
    e.value_ = std::make_shared<QuadraticAlgebraic>(std::move(v));
    return e;
}

HeightExpr HeightExpr::add(HeightExpr lhs, HeightExpr rhs) {
    HeightExpr e;
    e.kind_ = Kind::AddSub;
    e.lhs_ = std::make_shared<HeightExpr>(std::move(lhs));
    e.rhs_ = std::make_shared<HeightExpr>(std::move(rhs));
    return e;
}

HeightExpr HeightExpr::mul(HeightExpr lhs, HeightExpr rhs) {
    HeightExpr e;
    e.kind_ = Kind::MulDiv;
    e.lhs_ = std::make_shared<HeightExpr>(std::move(lhs));
    e.rhs_ = std::make_shared<HeightExpr>(std::move(rhs));
    return e;
}

HeightExpr HeightExpr::pow(HeightExpr base, long exponent) {
    HeightExpr e;
    e.kind_ = Kind::Pow;
    e.lhs_ = std::make_shared<HeightExpr>(std::move(base));
    e.exponent_ = exponent;
    return e;
}

FixedReal HeightExpr::bound(long scale) const {
    switch (kind_) {
        case Kind::Leaf:
            return height_quadratic(*value_, scale);
        case Kind::AddSub:
            return add_at(add_at(lhs_->bound(scale), rhs_->bound(scale), scale),
                          ln2(scale), scale);
        case Kind::MulDiv:
            return add_at(lhs_->bound(scale), rhs_->bound(scale), scale);
        case Kind::Pow: {
            long k = exponent_ < 0 ? -exponent_ : exponent_;
            return mul_bigint(lhs_->bound(scale), BigInt(k));
        }
    }
    throw Error("HeightExpr: bad node");
}

FixedReal height_bound(const HeightExpr& e, long scale) { return e.bound(scale); }

FixedReal matveev_prefactor(int log_count, int field_degree,
                            const std::vector<FixedReal>& A, long scale) {
    if (log_count < 1 || field_degree < 1 ||
        A.size() != static_cast<std::size_t>(log_count))
        throw InvalidInstance("matveev: bad instance shape");
    for (const FixedReal& a : A)
        if (!a.certainly_positive())
            throw InvalidInstance("matveev: A value not certified positive");
    BigInt thirty = 1;
    for (int i = 0; i < log_count + 3; ++i) thirty *= 30;
    BigInt l4 = BigInt(log_count);
    l4 = l4 * l4 * l4 * l4;
    // l^4.5 = l^4 * sqrt(l)
    FixedReal product = mul_bigint(sqrt_nat(log_count, scale), l4 * thirty);
    product = mul_at(product, FixedReal::parse("1.4"), scale);
    product = mul_bigint(product, BigInt(field_degree) * field_degree);
    FixedReal one_log_d =
        add_at(FixedReal::exact(1), ln_rational(field_degree, 1, scale), scale);
    product = mul_at(product, one_log_d, scale);
    for (const FixedReal& a : A) product = mul_at(product, a, scale);
    return product;
}

FixedReal matveev_bound(const MatveevInstance& inst, long scale) {
    if (inst.D < 1) throw InvalidInstance("matveev: D must be >= 1");
    FixedReal pre = matveev_prefactor(inst.log_count, inst.field_degree, inst.A, scale);
    FixedReal one_log_D = add_at(FixedReal::exact(1), ln_rational(inst.D, 1, scale), scale);
    return mul_at(pre, one_log_D, scale);
}

namespace {

bool k_bound_pred(const KBoundRhs& rhs, const FixedReal& slope, const FixedReal& offset,
                  const BigInt& k, long scale, int max_doublings) {
    Ordering grow = compare_with_retry(
        [&](long s) { return sub_at(mul_bigint(slope.rescaled(s), k), offset, s); },
        [&](long s) { return rhs(k, s); }, scale, max_doublings);
    if (grow != Ordering::CertGreater) return false;
    // Increments of a concave rhs only shrink, so slope > rhs(k+1) - rhs(k)
    // here keeps the gap growing for every later k.
    Ordering incr = compare_with_retry(
        [&](long s) { return slope.rescaled(s); },
        [&](long s) { return sub_at(rhs(k + 1, s), rhs(k, s), s); }, scale,
        max_doublings);
    return incr == Ordering::CertGreater;
}

}  // namespace

BigInt solve_k_bound(const KBoundRhs& rhs, const FixedReal& lhs_slope,
                     const FixedReal& lhs_offset, long scale, int max_doublings,
                     unsigned max_doubling_steps) {
    BigInt k = 1;
    unsigned steps = 0;
    while (!k_bound_pred(rhs, lhs_slope, lhs_offset, k, scale, max_doublings)) {
        if (++steps > max_doubling_steps)
            throw NoCrossingFound("solve_k_bound: no certified crossing within cap");
        k *= 2;
    }
    BigInt lo = k / 2, hi = k;  // pred(lo) false (or lo == 0), pred(hi) true
    while (lo + 1 < hi) {
        BigInt mid = (lo + hi) / 2;
        if (k_bound_pred(rhs, lhs_slope, lhs_offset, mid, scale, max_doublings))
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

}  // namespace balrep
