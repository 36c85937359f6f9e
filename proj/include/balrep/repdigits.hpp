#pragma once

#include "balrep/bigint.hpp"

#include <optional>
#include <string>
#include <vector>

namespace balrep {

// d repeated n times: value d * (10^n - 1) / 9, digit in 1..9.
struct Repdigit {
    int digit = 0;
    long length = 0;

    bool operator==(const Repdigit&) const = default;
};

// value(d1, n) - value(d2, m) with n >= 2, m >= 1 and a positive difference.
struct DifferenceRepresentation {
    int d1 = 0;
    long n = 0;
    int d2 = 0;
    long m = 0;

    bool operator==(const DifferenceRepresentation&) const = default;
    std::string to_string() const;  // e.g. "11-5"
};

BigInt repdigit_value(int digit, long length);

// The unique (digit, length) with that value, if N is a repdigit.
std::optional<Repdigit> is_repdigit(const BigInt& n);

// One block of a concatenation split: digit 0..9 repeated `length` times.
// Leading block of a number always has a nonzero digit; inner/trailing
// blocks may be zero runs (e.g. 204 splits as 2|0|4).
struct DigitRun {
    int digit = 0;
    long length = 0;

    bool operator==(const DigitRun&) const = default;
};

// Splits of the decimal string of N into `parts` constant-digit blocks with
// distinct digits on adjacent blocks. With that adjacency rule a valid split
// exists exactly when the maximal-run decomposition has `parts` runs.
std::vector<std::vector<DigitRun>> concat_decompositions(const BigInt& n, int parts);

// Every (d1, n, d2, m) with value(d1,n) - value(d2,m) == N, n in [2, n_max],
// m >= 1, in lexicographic order.
std::vector<DifferenceRepresentation> difference_representations(const BigInt& n,
                                                                 long n_max);

}  // namespace balrep
