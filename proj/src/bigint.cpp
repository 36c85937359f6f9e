#include "balrep/bigint.hpp"

#include "balrep/errors.hpp"

#include <cctype>

namespace balrep {

BigInt pow10(long k) {
    BigInt r = 1;
    BigInt base = 10;
    long e = k;
    while (e > 0) {
        if (e & 1) r *= base;
        base *= base;
        e >>= 1;
    }
    return r;
}

BigInt isqrt(const BigInt& n) {
    if (n < 0) throw Error("isqrt: negative input");
    if (n == 0) return 0;
    // Start above the root so the Newton sequence decreases monotonically.
    BigInt x = BigInt(1) << static_cast<unsigned>((msb(n) / 2) + 1);
    while (true) {
        BigInt y = (x + n / x) / 2;
        if (y >= x) break;
        x = y;
    }
    return x;
}

long decimal_digits(const BigInt& n) {
    if (n == 0) return 1;
    return static_cast<long>(abs(n).str().size());
}

BigInt floor_div(const BigInt& a, const BigInt& b) {
    BigInt q = a / b;
    if (a % b != 0 && ((a < 0) != (b < 0))) --q;
    return q;
}

BigInt ceil_div(const BigInt& a, const BigInt& b) {
    BigInt q = a / b;
    if (a % b != 0 && ((a < 0) == (b < 0))) ++q;
    return q;
}

BigInt round_div(const BigInt& a, const BigInt& b) {
    // floor((2a + b) / 2b): nearest integer, ties toward +infinity.
    return floor_div(2 * a + b, 2 * b);
}

std::string to_string(const BigInt& n) { return n.str(); }

BigInt parse_bigint(const std::string& s) {
    if (s.empty()) throw Error("parse_bigint: empty string");
    std::size_t i = (s[0] == '-') ? 1 : 0;
    if (i == s.size()) throw Error("parse_bigint: no digits");
    for (std::size_t j = i; j < s.size(); ++j)
        if (!std::isdigit(static_cast<unsigned char>(s[j])))
            throw Error("parse_bigint: invalid character in \"" + s + "\"");
    return BigInt(s);
}

}  // namespace balrep
