#pragma once

#include "balrep/bigint.hpp"
#include "balrep/contfrac.hpp"
#include "balrep/fixedreal.hpp"

#include <string>
#include <vector>

namespace balrep {

// (-log(1-a))/a for 0 < a < 1: the factor converting |e^x - 1| bounds into
// |x| bounds.
FixedReal lemma2_coefficient(const FixedReal& a, long scale);

// Given |e^x - 1| <= gamma_abs_bound < a, returns the certified bound
// lemma2_coefficient(a) * gamma_abs_bound on |x|.
// Throws HypothesisViolated unless gamma_abs_bound < a is certified.
FixedReal lambda_from_gamma(const FixedReal& gamma_abs_bound, const FixedReal& a,
                            long scale);

// Certified distance to the nearest integer, in [0, 1/2].
// Throws PrecisionInsufficient when the interval is at least one unit wide.
FixedReal nearest_integer_distance(const FixedReal& x);

// One reduction instance: the inequality 0 < |u tau - v + mu| < A B^-w is to
// be ruled out for u <= M and w above the computed bound, for every mu in
// the family.
struct ReductionProblem {
    FixedReal tau;
    std::vector<std::pair<std::string, FixedReal>> mu_family;  // label, value
    BigInt M;
    FixedReal A;  // > 0
    FixedReal B;  // > 1
};

struct PerMuResult {
    std::string label;
    FixedReal mu;
    FixedReal epsilon;    // ||mu q|| - M ||tau q||, certified > 0
    FixedReal threshold;  // log(A q / epsilon) / log B
    BigInt bound;         // largest w not excluded
};

struct ReductionResult {
    BigInt q;
    FixedReal epsilon_min;  // min over the family
    BigInt w_bound;         // max over the family
    std::vector<PerMuResult> per_mu;
};

// Applies the convergent q to the whole family. Requires q > 6M
// (DenominatorTooSmall) and certified epsilon > 0 for every member
// (EpsilonNotPositive names the first failing label).
ReductionResult baker_davenport(const ReductionProblem& prob, const Convergent& conv,
                                long scale);

struct AdvancingReduction {
    ReductionResult result;
    std::size_t convergent_index = 0;
    // Denominators tried and rejected before one worked, with the reason.
    std::vector<std::pair<BigInt, std::string>> rejected;
};

// Walks the certified convergents with q > 6M, advancing past any where some
// family member has epsilon <= 0. Throws InsufficientCertifiedTerms when the
// expansion runs out.
AdvancingReduction baker_davenport_first_valid(const ReductionProblem& prob,
                                               const std::vector<Convergent>& convs,
                                               long scale);

}  // namespace balrep
