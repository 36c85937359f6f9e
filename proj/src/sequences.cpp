#include "balrep/sequences.hpp"

#include "balrep/errors.hpp"

namespace balrep {

RecurrenceSpec RecurrenceSpec::balancing() { return {"balancing", 6, -1, 0, 1}; }

RecurrenceSpec RecurrenceSpec::lucas_balancing() {
    return {"lucas-balancing", 6, -1, 1, 3};
}

BigInt term(const RecurrenceSpec& spec, long k) {
    if (k < 0) throw Error("term: negative index");
    if (k == 0) return spec.term0;
    BigInt prev = spec.term0, cur = spec.term1;
    for (long i = 1; i < k; ++i) {
        BigInt next = spec.coeff_a * cur + spec.coeff_b * prev;
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

std::vector<BigInt> terms_upto(const RecurrenceSpec& spec, long k) {
    if (k < 0) throw Error("terms_upto: negative index");
    std::vector<BigInt> out;
    out.reserve(static_cast<std::size_t>(k) + 1);
    out.push_back(spec.term0);
    if (k == 0) return out;
    out.push_back(spec.term1);
    for (long i = 2; i <= k; ++i)
        out.push_back(spec.coeff_a * out[i - 1] + spec.coeff_b * out[i - 2]);
    return out;
}

bool binet_check(const RecurrenceSpec& spec, long k, long scale) {
    if (k < 1) throw Error("binet_check: index must be >= 1");
    BigInt exact = term(spec, k);
    FixedReal ak = pow_int(alpha(scale), static_cast<unsigned long>(k), scale);
    FixedReal bk = pow_int(beta(scale), static_cast<unsigned long>(k), scale);
    FixedReal closed;
    if (spec.is_balancing()) {
        closed = div_at(sub_at(ak, bk, scale), mul_bigint(sqrt2(scale), 4), scale);
    } else {
        closed = div_at(add_at(ak, bk, scale), FixedReal::exact(2), scale);
    }
    auto nearest = certified_nearest_int(closed);
    if (!nearest)
        throw PrecisionInsufficient("binet_check: interval straddles a half-integer at scale " +
                                    std::to_string(scale));
    return *nearest == exact;
}

bool growth_check(const RecurrenceSpec& spec, long k, long scale) {
    if (k < 1) throw Error("growth_check: index must be >= 1");
    BigInt t = term(spec, k);
    unsigned long uk = static_cast<unsigned long>(k);
    if (spec.is_balancing()) {
        FixedReal lowpow = pow_int(alpha(scale), uk - 1, scale);
        FixedReal highpow = pow_int(alpha(scale), uk, scale);
        FixedReal v = FixedReal::exact(t);
        Ordering lo = compare(lowpow, v);
        Ordering hi = compare(v, highpow);
        if (lo == Ordering::Unknown || hi == Ordering::Unknown)
            throw PrecisionInsufficient("growth_check: comparison unresolved at scale " +
                                        std::to_string(scale));
        return lo != Ordering::CertGreater && hi == Ordering::CertLess;
    }
    FixedReal lowpow = pow_int(alpha(scale), uk, scale);
    FixedReal highpow = pow_int(alpha(scale), uk + 1, scale);
    FixedReal v = FixedReal::exact(2 * t);
    Ordering lo = compare(lowpow, v);
    Ordering hi = compare(v, highpow);
    if (lo == Ordering::Unknown || hi == Ordering::Unknown)
        throw PrecisionInsufficient("growth_check: comparison unresolved at scale " +
                                    std::to_string(scale));
    return lo == Ordering::CertLess && hi == Ordering::CertLess;
}

long suggested_scale(long k) {
    // alpha^k has about 0.766 k digits; leave room for the division and the
    // half-integer test.
    return (766 * (k + 1)) / 1000 + 30;
}

}  // namespace balrep
