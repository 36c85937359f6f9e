#include "balrep/reduction.hpp"

#include "balrep/errors.hpp"

#include <algorithm>
#include <utility>

namespace balrep {

FixedReal lemma2_coefficient(const FixedReal& a, long scale) {
    if (!a.certainly_positive())
        throw HypothesisViolated("lemma2_coefficient: a must be certified in (0,1)");
    FixedReal one_minus = sub_at(FixedReal::exact(1), a, scale + 10);
    if (!one_minus.certainly_positive())
        throw HypothesisViolated("lemma2_coefficient: a must be certified < 1");
    return div_at(ln(one_minus, scale + 10).negated(), a, scale);
}

FixedReal lambda_from_gamma(const FixedReal& gamma_abs_bound, const FixedReal& a,
                            long scale) {
    FixedReal coeff = lemma2_coefficient(a, scale);
    if (gamma_abs_bound.is_exact() && gamma_abs_bound.mantissa() == 0)
        return FixedReal::exact(0, scale);
    if (compare(gamma_abs_bound, a) != Ordering::CertLess)
        throw HypothesisViolated("lambda_from_gamma: bound not certified below a");
    return mul_at(coeff, gamma_abs_bound, scale);
}

FixedReal nearest_integer_distance(const FixedReal& x) {
    long p = x.scale();
    BigInt f = pow10(p);
    if (2 * x.err_ulp() >= f)
        throw PrecisionInsufficient("nearest_integer_distance: interval spans a unit");
    BigInt nearest = round_div(x.mantissa(), f);
    BigInt rlo = x.lower_ulp() - nearest * f;
    BigInt rhi = x.upper_ulp() - nearest * f;
    auto point_dist = [&](const BigInt& t) { return std::min(abs(t), f - abs(t)); };
    BigInt half = f / 2;  // exact for scale >= 1; at scale 0 the interval is a point
    bool contains_zero = rlo <= 0 && rhi >= 0;
    bool crosses_half = (rlo < -half && rhi > -half) || (rlo < half && rhi > half);
    BigInt lo = contains_zero ? BigInt(0) : std::min(point_dist(rlo), point_dist(rhi));
    BigInt hi = crosses_half ? half : std::max(point_dist(rlo), point_dist(rhi));
    BigInt m = floor_div(lo + hi, 2);
    return FixedReal::with_error(m, p, std::max(m - lo, hi - m));
}

ReductionResult baker_davenport(const ReductionProblem& prob, const Convergent& conv,
                                long scale) {
    if (prob.M < 1) throw Error("baker_davenport: M must be >= 1");
    if (prob.mu_family.empty()) throw Error("baker_davenport: empty mu family");
    if (!prob.A.certainly_positive())
        throw Error("baker_davenport: A must be certified > 0");
    if (compare(prob.B, FixedReal::exact(1)) != Ordering::CertGreater)
        throw Error("baker_davenport: B must be certified > 1");
    if (conv.q <= 6 * prob.M)
        throw DenominatorTooSmall("baker_davenport: q = " + conv.q.str() +
                                  " is not above 6M");

    FixedReal tau_dist = nearest_integer_distance(mul_bigint(prob.tau, conv.q));
    FixedReal m_tau_dist = mul_bigint(tau_dist, prob.M);
    FixedReal log_b = ln(prob.B, scale);
    FixedReal a_q = mul_bigint(prob.A, conv.q);

    ReductionResult out;
    out.q = conv.q;
    bool first = true;
    for (const auto& [label, mu] : prob.mu_family) {
        FixedReal mu_dist = nearest_integer_distance(mul_bigint(mu, conv.q));
        FixedReal eps = sub_at(mu_dist, m_tau_dist, scale);
        if (!eps.certainly_positive())
            throw EpsilonNotPositive("baker_davenport: epsilon not certified positive for " +
                                     label);
        FixedReal threshold = div_at(ln(div_at(a_q, eps, scale), scale), log_b, scale);
        // The lemma excludes w >= threshold; the largest integer it cannot
        // exclude is ceil(upper endpoint) - 1.
        BigInt bound = ceil_div(threshold.upper_ulp(), pow10(threshold.scale())) - 1;
        out.per_mu.push_back({label, mu, eps, threshold, bound});
        if (first || compare(eps, out.epsilon_min) == Ordering::CertLess)
            out.epsilon_min = eps;
        if (first || bound > out.w_bound) out.w_bound = bound;
        first = false;
    }
    return out;
}

AdvancingReduction baker_davenport_first_valid(const ReductionProblem& prob,
                                               const std::vector<Convergent>& convs,
                                               long scale) {
    AdvancingReduction out;
    for (const Convergent& c : convs) {
        if (c.q <= 6 * prob.M) continue;
        try {
            out.result = baker_davenport(prob, c, scale);
            out.convergent_index = c.index;
            return out;
        } catch (const EpsilonNotPositive& e) {
            out.rejected.emplace_back(c.q, e.what());
        }
    }
    throw InsufficientCertifiedTerms(
        "baker_davenport_first_valid: certified convergents exhausted");
}

}  // namespace balrep
