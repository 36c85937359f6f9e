#include "balrep/contfrac.hpp"

#include "balrep/errors.hpp"

#include <utility>

namespace balrep {

namespace {

struct Frac {
    BigInt num;
    BigInt den;  // > 0
};

BigInt frac_floor(const Frac& f) { return floor_div(f.num, f.den); }

}  // namespace

CFExpansion expand(const FixedReal& x, std::size_t max_terms) {
    BigInt f = pow10(x.scale());
    Frac lo{x.lower_ulp(), f};
    Frac hi{x.upper_ulp(), f};
    CFExpansion out;
    bool exact = x.is_exact();
    while (out.partial_quotients.size() < max_terms) {
        BigInt alo = frac_floor(lo);
        BigInt ahi = frac_floor(hi);
        if (alo != ahi) break;  // interval does not decide this quotient
        out.partial_quotients.push_back(alo);
        // Shift to the fractional part; endpoints stay ordered.
        lo.num -= alo * lo.den;
        hi.num -= alo * hi.den;
        if (exact) {
            if (lo.num == 0) {
                out.complete = true;
                break;
            }
            lo = Frac{lo.den, lo.num};
            hi = lo;
        } else {
            if (lo.num == 0) break;  // reciprocal endpoint unbounded
            // 1/[lo, hi] = [1/hi, 1/lo]
            Frac nlo{hi.den, hi.num};
            Frac nhi{lo.den, lo.num};
            lo = std::move(nlo);
            hi = std::move(nhi);
        }
    }
    if (out.partial_quotients.empty())
        throw NoCertifiedQuotients("expand: interval too wide to determine a0");
    out.certified_count = out.partial_quotients.size();
    return out;
}

CFExpansion certified_expand(const Evaluator& eval, long scale, std::size_t max_terms) {
    CFExpansion base = expand(eval(scale), max_terms);
    CFExpansion doubled = expand(eval(2 * scale), max_terms);
    std::size_t agree = 0;
    std::size_t n = std::min(base.partial_quotients.size(), doubled.partial_quotients.size());
    while (agree < n && base.partial_quotients[agree] == doubled.partial_quotients[agree])
        ++agree;
    if (agree == 0)
        throw NoCertifiedQuotients("certified_expand: no stable quotients");
    CFExpansion out = doubled.partial_quotients.size() >= base.partial_quotients.size()
                          ? std::move(doubled)
                          : std::move(base);
    out.certified_count = agree;
    return out;
}

std::vector<Convergent> convergents(const CFExpansion& cf) {
    std::vector<Convergent> out;
    BigInt p_prev = 1, p_prev2 = 0;  // p(-1), p(-2)
    BigInt q_prev = 0, q_prev2 = 1;
    for (std::size_t i = 0; i < cf.certified_count; ++i) {
        const BigInt& a = cf.partial_quotients[i];
        BigInt p = a * p_prev + p_prev2;
        BigInt q = a * q_prev + q_prev2;
        out.push_back({i, p, q});
        p_prev2 = std::move(p_prev);
        p_prev = std::move(p);
        q_prev2 = std::move(q_prev);
        q_prev = std::move(q);
    }
    return out;
}

Convergent first_denominator_exceeding(const CFExpansion& cf, const BigInt& bound) {
    for (const Convergent& c : convergents(cf))
        if (c.q > bound) return c;
    throw InsufficientCertifiedTerms(
        "first_denominator_exceeding: no certified convergent above bound " + bound.str());
}

}  // namespace balrep
