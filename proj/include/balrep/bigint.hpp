#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace balrep {

// Exact signed integer of arbitrary size. Sequence terms, repdigit values,
// convergent numerators/denominators and fixed-point mantissas all live here.
using BigInt = boost::multiprecision::cpp_int;

// 10^k for k >= 0.
BigInt pow10(long k);

// floor(sqrt(n)) for n >= 0, by Newton iteration on integers.
BigInt isqrt(const BigInt& n);

// Number of decimal digits of |n|; digits(0) == 1.
long decimal_digits(const BigInt& n);

// Floor and ceiling division with sign handled (b > 0 required).
BigInt floor_div(const BigInt& a, const BigInt& b);
BigInt ceil_div(const BigInt& a, const BigInt& b);

// Nearest-integer division, ties toward +infinity (b > 0 required).
BigInt round_div(const BigInt& a, const BigInt& b);

std::string to_string(const BigInt& n);

// Parses a decimal integer (optional leading '-'); throws Error on junk.
BigInt parse_bigint(const std::string& s);

}  // namespace balrep
