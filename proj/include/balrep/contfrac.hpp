#pragma once

#include "balrep/bigint.hpp"
#include "balrep/fixedreal.hpp"

#include <cstddef>
#include <vector>

namespace balrep {

struct CFExpansion {
    // a0 may be <= 0; every later quotient is >= 1.
    std::vector<BigInt> partial_quotients;
    // How many leading quotients are certified (stable under recomputation
    // at doubled scale; quotients derived from an interval are certified by
    // construction, since every value in the interval shares them).
    std::size_t certified_count = 0;
    // True when the input was exact rational and the expansion terminated.
    bool complete = false;
};

struct Convergent {
    std::size_t index = 0;  // p0/q0 = a0/1 sits at index 0
    BigInt p;
    BigInt q;
};

// Expands x by exact floor/reciprocal steps on its rational interval
// endpoints, stopping as soon as the interval no longer decides the next
// quotient. Throws NoCertifiedQuotients when even a0 is ambiguous.
CFExpansion expand(const FixedReal& x, std::size_t max_terms);

// Evaluates `eval` at `scale` and at 2*scale, expands both, and marks the
// agreeing prefix certified.
CFExpansion certified_expand(const Evaluator& eval, long scale, std::size_t max_terms);

// Convergents over the certified quotients only.
std::vector<Convergent> convergents(const CFExpansion& cf);

// Least-index certified convergent with q > bound.
Convergent first_denominator_exceeding(const CFExpansion& cf, const BigInt& bound);

}  // namespace balrep
