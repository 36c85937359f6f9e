#pragma once

#include "balrep/bigint.hpp"

#include <functional>
#include <optional>
#include <string>

namespace balrep {

// Decimal fixed-point real with a certified error bound.
//
// A FixedReal holds (mantissa, scale, err_ulp) and asserts that the true
// value it stands for lies in [mantissa - err_ulp, mantissa + err_ulp] * 10^-scale.
// Every operation widens err_ulp enough to keep that containment true; none
// ever under-reports the accumulated error. Values are immutable.
class FixedReal {
  public:
    FixedReal() : mantissa_(0), scale_(0), err_(0) {}

    static FixedReal exact(BigInt value, long scale = 0);
    static FixedReal with_error(BigInt mantissa, long scale, BigInt err_ulp);
    // Parses "12", "-0.03855", "1.76" into an exact value at the implied scale.
    static FixedReal parse(const std::string& decimal);

    const BigInt& mantissa() const { return mantissa_; }
    long scale() const { return scale_; }
    const BigInt& err_ulp() const { return err_; }

    // Interval endpoints in ulp at scale().
    BigInt lower_ulp() const { return mantissa_ - err_; }
    BigInt upper_ulp() const { return mantissa_ + err_; }

    bool is_exact() const { return err_ == 0; }
    bool certainly_positive() const { return mantissa_ > err_; }
    bool certainly_negative() const { return mantissa_ < -err_; }
    bool certainly_nonzero() const { return certainly_positive() || certainly_negative(); }

    FixedReal rescaled(long scale) const;
    FixedReal negated() const;
    // Interval image of |x|.
    FixedReal abs_interval() const;

    // Exact decimal rendering of the mantissa, e.g. "1.7627471740" at scale 10.
    std::string to_decimal_string() const;
    // Decimal rendering truncated to `digits` fractional digits (display only).
    std::string to_display_string(long digits) const;

  private:
    FixedReal(BigInt m, long s, BigInt e)
        : mantissa_(std::move(m)), scale_(s), err_(std::move(e)) {}

    BigInt mantissa_;
    long scale_;
    BigInt err_;
};

enum class Ordering { CertLess, CertGreater, CertEqualExact, Unknown };

std::string to_string(Ordering o);

// Certified interval comparison. CertLess/CertGreater only when the whole
// intervals are disjoint; CertEqualExact only for two exact equal values.
Ordering compare(const FixedReal& a, const FixedReal& b);

// Arithmetic. The two-argument forms return min(scale(a), scale(b)); the
// *_at forms round to an explicit result scale.
FixedReal add(const FixedReal& a, const FixedReal& b);
FixedReal sub(const FixedReal& a, const FixedReal& b);
FixedReal mul(const FixedReal& a, const FixedReal& b);
FixedReal div(const FixedReal& a, const FixedReal& b);
FixedReal add_at(const FixedReal& a, const FixedReal& b, long scale);
FixedReal sub_at(const FixedReal& a, const FixedReal& b, long scale);
FixedReal mul_at(const FixedReal& a, const FixedReal& b, long scale);
FixedReal div_at(const FixedReal& a, const FixedReal& b, long scale);

enum class ArithOp { Add, Sub, Mul, Div };
FixedReal arith(const FixedReal& a, const FixedReal& b, ArithOp op);

// Exact integer scaling (no rounding).
FixedReal mul_bigint(const FixedReal& a, const BigInt& k);

// sqrt(n) for a natural number n, err_ulp <= 1 (0 for perfect squares).
FixedReal sqrt_nat(const BigInt& n, long scale);

// sqrt of a value whose interval is certified nonnegative.
FixedReal sqrt_fixed(const FixedReal& x, long scale);

// Natural logarithm of a certified-positive value.
FixedReal ln(const FixedReal& x, long scale);
// ln(num/den) for exact positive integers, err a few ulp at `scale`.
FixedReal ln_rational(const BigInt& num, const BigInt& den, long scale);

// x^k for k >= 0 at the given scale.
FixedReal pow_int(const FixedReal& x, unsigned long k, long scale);

// Shared constants of the quadratic field the pipeline works in.
FixedReal sqrt2(long scale);
FixedReal alpha(long scale);       // 3 + 2*sqrt(2), dominant root of x^2 - 6x + 1
FixedReal beta(long scale);        // 3 - 2*sqrt(2) = 1/alpha
FixedReal log_alpha(long scale);
FixedReal ln2(long scale);
FixedReal ln10(long scale);

// Floor / unique nearest integer, only when the interval decides them.
std::optional<BigInt> certified_floor(const FixedReal& x);
std::optional<BigInt> certified_nearest_int(const FixedReal& x);

// Re-evaluating comparison: computes both sides at `scale`, and on Unknown
// retries at doubled scale up to max_doublings times before giving up.
using Evaluator = std::function<FixedReal(long)>;
Ordering compare_with_retry(const Evaluator& a, const Evaluator& b, long scale,
                            int max_doublings = 4);

struct Config {
    long scale = 200;       // default working precision in decimal digits
    int max_doublings = 4;  // retry cap for Unknown comparisons
};

}  // namespace balrep
