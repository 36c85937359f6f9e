#pragma once

#include "balrep/bigint.hpp"
#include "balrep/fixedreal.hpp"

#include <string>
#include <vector>

namespace balrep {

// Second-order linear recurrence u(k+1) = coeff_a*u(k) + coeff_b*u(k-1).
// The two instances the solver cares about share (6, -1) and differ only in
// their seeds; closed forms use the roots of x^2 - 6x + 1.
struct RecurrenceSpec {
    std::string name;
    long coeff_a = 6;
    long coeff_b = -1;
    BigInt term0;
    BigInt term1;

    static RecurrenceSpec balancing();        // 0, 1, 6, 35, 204, ...
    static RecurrenceSpec lucas_balancing();  // 1, 3, 17, 99, 577, ...

    bool is_balancing() const { return term0 == 0; }
};

// Exact k-th term by iterated recurrence.
BigInt term(const RecurrenceSpec& spec, long k);

// All terms 0..k, computed once.
std::vector<BigInt> terms_upto(const RecurrenceSpec& spec, long k);

// Checks the closed form against the exact term: the certified interval of
// (alpha^k - beta^k)/(4 sqrt 2), resp. (alpha^k + beta^k)/2, must contain a
// unique nearest integer equal to term(spec, k).
// Throws PrecisionInsufficient when the interval straddles a half-integer.
bool binet_check(const RecurrenceSpec& spec, long k, long scale);

// Certifies alpha^(k-1) <= B_k < alpha^k, resp. alpha^k < 2 C_k < alpha^(k+1).
bool growth_check(const RecurrenceSpec& spec, long k, long scale);

// Smallest scale at which binet/growth intervals can resolve index k.
long suggested_scale(long k);

}  // namespace balrep
