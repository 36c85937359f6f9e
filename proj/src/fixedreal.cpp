#include "balrep/fixedreal.hpp"

#include "balrep/errors.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <utility>

namespace balrep {

namespace {

constexpr long kLnGuardDigits = 15;

void require_scale(long scale) {
    if (scale < 0) throw Error("FixedReal: negative scale");
}

}  // namespace

FixedReal FixedReal::exact(BigInt value, long scale) {
    require_scale(scale);
    return FixedReal(std::move(value), scale, 0);
}

FixedReal FixedReal::with_error(BigInt mantissa, long scale, BigInt err_ulp) {
    require_scale(scale);
    if (err_ulp < 0) throw Error("FixedReal: negative err_ulp");
    return FixedReal(std::move(mantissa), scale, std::move(err_ulp));
}

FixedReal FixedReal::parse(const std::string& decimal) {
    std::string s = decimal;
    bool neg = false;
    if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
        neg = s[0] == '-';
        s.erase(0, 1);
    }
    auto dot = s.find('.');
    std::string digits;
    long scale = 0;
    if (dot == std::string::npos) {
        digits = s;
    } else {
        digits = s.substr(0, dot) + s.substr(dot + 1);
        scale = static_cast<long>(s.size() - dot - 1);
    }
    if (digits.empty()) throw Error("FixedReal::parse: no digits in \"" + decimal + "\"");
    BigInt m = parse_bigint(digits);
    if (neg) m = -m;
    return exact(std::move(m), scale);
}

FixedReal FixedReal::rescaled(long scale) const {
    require_scale(scale);
    if (scale == scale_) return *this;
    if (scale > scale_) {
        BigInt f = pow10(scale - scale_);
        return FixedReal(mantissa_ * f, scale, err_ * f);
    }
    BigInt f = pow10(scale_ - scale);
    if (mantissa_ % f == 0 && err_ % f == 0)
        return FixedReal(mantissa_ / f, scale, err_ / f);
    // Midpoint moves by at most half an ulp, so pad the error by that much.
    BigInt m = round_div(mantissa_, f);
    BigInt e = ceil_div(2 * err_ + f, 2 * f);
    return FixedReal(std::move(m), scale, std::move(e));
}

FixedReal FixedReal::negated() const { return FixedReal(-mantissa_, scale_, err_); }

FixedReal FixedReal::abs_interval() const {
    BigInt lo = lower_ulp(), hi = upper_ulp();
    if (lo >= 0) return *this;
    if (hi <= 0) return negated();
    BigInt nhi = std::max(-lo, hi);  // image is [0, nhi]
    BigInt m = nhi / 2;
    return FixedReal(m, scale_, std::max(m, nhi - m));
}

std::string FixedReal::to_decimal_string() const {
    BigInt a = abs(mantissa_);
    std::string d = a.str();
    std::string out = mantissa_ < 0 ? "-" : "";
    if (scale_ == 0) return out + d;
    if (static_cast<long>(d.size()) <= scale_)
        d.insert(0, static_cast<std::size_t>(scale_) - d.size() + 1, '0');
    out += d.substr(0, d.size() - static_cast<std::size_t>(scale_));
    out += ".";
    out += d.substr(d.size() - static_cast<std::size_t>(scale_));
    return out;
}

std::string FixedReal::to_display_string(long digits) const {
    if (scale_ <= digits) return to_decimal_string();
    return rescaled(digits).to_decimal_string();
}

std::string to_string(Ordering o) {
    switch (o) {
        case Ordering::CertLess: return "CertLess";
        case Ordering::CertGreater: return "CertGreater";
        case Ordering::CertEqualExact: return "CertEqualExact";
        case Ordering::Unknown: return "Unknown";
    }
    return "Unknown";
}

Ordering compare(const FixedReal& a, const FixedReal& b) {
    long s = std::max(a.scale(), b.scale());
    FixedReal x = a.rescaled(s), y = b.rescaled(s);
    if (x.upper_ulp() < y.lower_ulp()) return Ordering::CertLess;
    if (x.lower_ulp() > y.upper_ulp()) return Ordering::CertGreater;
    if (x.is_exact() && y.is_exact() && x.mantissa() == y.mantissa())
        return Ordering::CertEqualExact;
    return Ordering::Unknown;
}

FixedReal add_at(const FixedReal& a, const FixedReal& b, long scale) {
    long s = std::max(a.scale(), b.scale());
    FixedReal x = a.rescaled(s), y = b.rescaled(s);
    return FixedReal::with_error(x.mantissa() + y.mantissa(), s, x.err_ulp() + y.err_ulp())
        .rescaled(scale);
}

FixedReal sub_at(const FixedReal& a, const FixedReal& b, long scale) {
    return add_at(a, b.negated(), scale);
}

FixedReal mul_at(const FixedReal& a, const FixedReal& b, long scale) {
    // (ma +- ea)(mb +- eb) stays within ma*mb +- (|ma| eb + |mb| ea + ea eb).
    BigInt m = a.mantissa() * b.mantissa();
    BigInt e = abs(a.mantissa()) * b.err_ulp() + abs(b.mantissa()) * a.err_ulp() +
               a.err_ulp() * b.err_ulp();
    return FixedReal::with_error(std::move(m), a.scale() + b.scale(), std::move(e))
        .rescaled(scale);
}

namespace {

// (x / y) * 10^shift in ulp, rounded down or up.
BigInt dir_ratio(BigInt x, BigInt y, long shift, bool up) {
    if (y < 0) {
        x = -x;
        y = -y;
    }
    if (shift >= 0)
        x *= pow10(shift);
    else
        y *= pow10(-shift);
    return up ? ceil_div(x, y) : floor_div(x, y);
}

}  // namespace

FixedReal div_at(const FixedReal& a, const FixedReal& b, long scale) {
    if (!b.certainly_nonzero())
        throw DivisorNotCertifiedNonzero("divide: divisor interval contains zero");
    long shift = scale + b.scale() - a.scale();
    BigInt nlo = a.lower_ulp(), nhi = a.upper_ulp();
    BigInt dlo = b.lower_ulp(), dhi = b.upper_ulp();
    BigInt lo, hi;
    bool first = true;
    for (const BigInt* n : {&nlo, &nhi})
        for (const BigInt* d : {&dlo, &dhi}) {
            BigInt l = dir_ratio(*n, *d, shift, false);
            BigInt h = dir_ratio(*n, *d, shift, true);
            if (first) {
                lo = l;
                hi = h;
                first = false;
            } else {
                lo = std::min(lo, l);
                hi = std::max(hi, h);
            }
        }
    BigInt m = floor_div(lo + hi, 2);
    BigInt e = std::max(m - lo, hi - m);
    return FixedReal::with_error(std::move(m), scale, std::move(e));
}

FixedReal add(const FixedReal& a, const FixedReal& b) {
    return add_at(a, b, std::min(a.scale(), b.scale()));
}
FixedReal sub(const FixedReal& a, const FixedReal& b) {
    return sub_at(a, b, std::min(a.scale(), b.scale()));
}
FixedReal mul(const FixedReal& a, const FixedReal& b) {
    return mul_at(a, b, std::min(a.scale(), b.scale()));
}
FixedReal div(const FixedReal& a, const FixedReal& b) {
    return div_at(a, b, std::min(a.scale(), b.scale()));
}

FixedReal arith(const FixedReal& a, const FixedReal& b, ArithOp op) {
    switch (op) {
        case ArithOp::Add: return add(a, b);
        case ArithOp::Sub: return sub(a, b);
        case ArithOp::Mul: return mul(a, b);
        case ArithOp::Div: return div(a, b);
    }
    throw Error("arith: bad op");
}

FixedReal mul_bigint(const FixedReal& a, const BigInt& k) {
    return FixedReal::with_error(a.mantissa() * k, a.scale(), a.err_ulp() * abs(k));
}

FixedReal sqrt_nat(const BigInt& n, long scale) {
    if (n < 0) throw NonPositiveInput("sqrt_nat: negative input");
    if (scale < 1) throw Error("sqrt_nat: scale must be >= 1");
    BigInt shifted = n * pow10(2 * scale);
    BigInt s = isqrt(shifted);
    BigInt e = (s * s == shifted) ? 0 : 1;
    return FixedReal::with_error(std::move(s), scale, std::move(e));
}

FixedReal sqrt_fixed(const FixedReal& x, long scale) {
    if (x.lower_ulp() < 0)
        throw NonPositiveInput("sqrt_fixed: interval not certified nonnegative");
    long w = std::max(scale, x.scale());
    // value * 10^(2w - p) is an integer whose isqrt sits at scale w.
    BigInt shift = pow10(2 * w - x.scale());
    BigInt lo = isqrt(x.lower_ulp() * shift);
    BigInt hi_arg = x.upper_ulp() * shift;
    BigInt hi = isqrt(hi_arg);
    if (hi * hi != hi_arg) ++hi;
    BigInt m = (lo + hi) / 2;
    BigInt e = std::max(m - lo, hi - m);
    return FixedReal::with_error(std::move(m), w, std::move(e)).rescaled(scale);
}

namespace {

// atanh(yn/yd) * 10^w with a certified ulp error, for 0 <= yn/yd <= 1/3.
// Series 2(y + y^3/3 + ...) is handled by the caller; this sums y + y^3/3 + ...
std::pair<BigInt, BigInt> atanh_series_ulp(const BigInt& yn, const BigInt& yd, long w) {
    BigInt f = pow10(w);
    BigInt y = floor_div(yn * f, yd);
    BigInt ey = 1;
    BigInt y2 = floor_div(y * y, f);
    BigInt ey2 = ceil_div(2 * y * ey + ey * ey, f) + 1;
    BigInt p = y, ep = ey;
    BigInt sum = 0, esum = 0;
    unsigned long k = 0;
    while (p + ep >= BigInt(2 * k + 1)) {
        BigInt den = 2 * k + 1;
        sum += floor_div(p, den);
        esum += ceil_div(ep, den) + 1;
        BigInt np = floor_div(p * y2, f);
        BigInt nep = ceil_div(p * ey2 + y2 * ep + ep * ey2, f) + 1;
        p = std::move(np);
        ep = std::move(nep);
        ++k;
    }
    // Geometric tail: sum_{j>=k} y^(2j+1) <= y^(2k+1) / (1 - y^2) <= (9/8) y^(2k+1).
    esum += ceil_div(9 * (p + ep + 1), 8 * BigInt(2 * k + 1)) + 1;
    return {std::move(sum), std::move(esum)};
}

// ln(num/den) in ulp at scale w. Reduces to t in [1,2] by decimal shifts and
// halvings, then ln t = 2 atanh((t-1)/(t+1)).
std::pair<BigInt, BigInt> ln_rational_ulp(BigInt num, BigInt den, long w);

std::pair<BigInt, BigInt> ln2_ulp(long w) {
    static std::mutex mu;
    static std::map<long, std::pair<BigInt, BigInt>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(w);
    if (it != cache.end()) return it->second;
    auto [s, e] = atanh_series_ulp(1, 3, w);  // atanh(1/3) = ln(2)/2
    std::pair<BigInt, BigInt> r{2 * s, 2 * e};
    cache.emplace(w, r);
    return r;
}

std::pair<BigInt, BigInt> ln10_ulp(long w) {
    static std::mutex mu;
    static std::map<long, std::pair<BigInt, BigInt>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(w);
    if (it != cache.end()) return it->second;
    // ln 10 = 3 ln 2 + ln(5/4), and atanh maps 5/4 to y = 1/9.
    auto [l2, e2] = ln2_ulp(w);
    auto [s54, e54] = atanh_series_ulp(1, 9, w);
    std::pair<BigInt, BigInt> r{3 * l2 + 2 * s54, 3 * e2 + 2 * e54};
    cache.emplace(w, r);
    return r;
}

std::pair<BigInt, BigInt> ln_rational_ulp(BigInt num, BigInt den, long w) {
    if (num <= 0 || den <= 0) throw NonPositiveInput("ln: argument not positive");
    if (num == den) return {0, 0};
    // Decimal exponent: bring num/den into [1, 10).
    long dec = decimal_digits(num) - decimal_digits(den);
    auto scaled_lt = [&](long d) {  // num/den < 10^d ?
        return d >= 0 ? num < den * pow10(d) : num * pow10(-d) < den;
    };
    while (scaled_lt(dec)) --dec;
    while (!scaled_lt(dec + 1)) ++dec;
    if (dec >= 0)
        den *= pow10(dec);
    else
        num *= pow10(-dec);
    // Halve into [1, 2].
    long halvings = 0;
    while (num > 2 * den) {
        den *= 2;
        ++halvings;
    }
    auto [s, e] = atanh_series_ulp(num - den, num + den, w);
    BigInt m = 2 * s, err = 2 * e;
    if (halvings != 0) {
        auto [l2, e2] = ln2_ulp(w);
        m += halvings * l2;
        err += halvings * e2;
    }
    if (dec != 0) {
        auto [l10, e10] = ln10_ulp(w);
        m += dec * l10;
        err += (dec < 0 ? -dec : dec) * e10;
    }
    return {std::move(m), std::move(err)};
}

}  // namespace

FixedReal ln_rational(const BigInt& num, const BigInt& den, long scale) {
    long w = scale + kLnGuardDigits;
    auto [m, e] = ln_rational_ulp(num, den, w);
    return FixedReal::with_error(std::move(m), w, std::move(e)).rescaled(scale);
}

FixedReal ln(const FixedReal& x, long scale) {
    if (!x.certainly_positive())
        throw NonPositiveInput("ln: input not certified positive");
    BigInt den = pow10(x.scale());
    if (x.is_exact()) return ln_rational(x.mantissa(), den, scale);
    long w = scale + kLnGuardDigits;
    auto [mlo, elo] = ln_rational_ulp(x.lower_ulp(), den, w);
    auto [mhi, ehi] = ln_rational_ulp(x.upper_ulp(), den, w);
    BigInt lo = mlo - elo, hi = mhi + ehi;  // ln is increasing
    BigInt m = floor_div(lo + hi, 2);
    BigInt e = std::max(m - lo, hi - m);
    return FixedReal::with_error(std::move(m), w, std::move(e)).rescaled(scale);
}

FixedReal pow_int(const FixedReal& x, unsigned long k, long scale) {
    FixedReal result = FixedReal::exact(1, scale);
    FixedReal base = x.rescaled(scale);
    while (k > 0) {
        if (k & 1) result = mul_at(result, base, scale);
        k >>= 1;
        if (k > 0) base = mul_at(base, base, scale);
    }
    return result;
}

FixedReal sqrt2(long scale) { return sqrt_nat(2, scale); }

FixedReal alpha(long scale) {
    return add_at(FixedReal::exact(3), mul_bigint(sqrt2(scale), 2), scale);
}

FixedReal beta(long scale) {
    return sub_at(FixedReal::exact(3), mul_bigint(sqrt2(scale), 2), scale);
}

FixedReal log_alpha(long scale) { return ln(alpha(scale + 5), scale); }

FixedReal ln2(long scale) {
    long w = scale + kLnGuardDigits;
    auto [m, e] = ln2_ulp(w);
    return FixedReal::with_error(std::move(m), w, std::move(e)).rescaled(scale);
}

FixedReal ln10(long scale) {
    long w = scale + kLnGuardDigits;
    auto [m, e] = ln10_ulp(w);
    return FixedReal::with_error(std::move(m), w, std::move(e)).rescaled(scale);
}

std::optional<BigInt> certified_floor(const FixedReal& x) {
    BigInt f = pow10(x.scale());
    BigInt flo = floor_div(x.lower_ulp(), f);
    BigInt fhi = floor_div(x.upper_ulp(), f);
    if (flo == fhi) return flo;
    return std::nullopt;
}

std::optional<BigInt> certified_nearest_int(const FixedReal& x) {
    BigInt f = pow10(x.scale());
    // Unique nearest integer means the interval avoids half-integer points.
    BigInt nlo = round_div(x.lower_ulp(), f);
    BigInt nhi = round_div(x.upper_ulp(), f);
    if (nlo != nhi) return std::nullopt;
    if ((2 * x.lower_ulp() - (2 * nlo - 1) * f) <= 0) return std::nullopt;
    if ((2 * x.upper_ulp() - (2 * nlo + 1) * f) >= 0) return std::nullopt;
    return nlo;
}

Ordering compare_with_retry(const Evaluator& a, const Evaluator& b, long scale,
                            int max_doublings) {
    long s = scale;
    for (int attempt = 0;; ++attempt) {
        Ordering o = compare(a(s), b(s));
        if (o != Ordering::Unknown || attempt >= max_doublings) return o;
        s *= 2;
    }
}

}  // namespace balrep
