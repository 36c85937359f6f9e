#include "balrep/repdigits.hpp"

#include "balrep/errors.hpp"

namespace balrep {

std::string DifferenceRepresentation::to_string() const {
    return repdigit_value(d1, n).str() + "-" + repdigit_value(d2, m).str();
}

BigInt repdigit_value(int digit, long length) {
    if (digit < 1 || digit > 9) throw DigitOutOfRange("repdigit_value: digit must be 1..9");
    if (length < 1) throw LengthOutOfRange("repdigit_value: length must be >= 1");
    return digit * ((pow10(length) - 1) / 9);
}

std::optional<Repdigit> is_repdigit(const BigInt& n) {
    if (n < 1) return std::nullopt;
    std::string s = n.str();
    for (char c : s)
        if (c != s[0]) return std::nullopt;
    return Repdigit{s[0] - '0', static_cast<long>(s.size())};
}

std::vector<std::vector<DigitRun>> concat_decompositions(const BigInt& n, int parts) {
    if (parts != 2 && parts != 3) throw Error("concat_decompositions: parts must be 2 or 3");
    if (n < (parts == 2 ? 10 : 100))
        throw Error("concat_decompositions: number too small for requested parts");
    std::string s = n.str();
    std::vector<DigitRun> runs;
    for (char c : s) {
        int d = c - '0';
        if (!runs.empty() && runs.back().digit == d)
            ++runs.back().length;
        else
            runs.push_back({d, 1});
    }
    // Adjacent blocks must differ, so blocks are exactly the maximal runs.
    if (static_cast<int>(runs.size()) != parts) return {};
    return {runs};
}

std::vector<DifferenceRepresentation> difference_representations(const BigInt& n,
                                                                 long n_max) {
    if (n < 1) throw Error("difference_representations: N must be >= 1");
    if (n_max < 2) throw Error("difference_representations: n_max must be >= 2");
    std::vector<DifferenceRepresentation> out;
    for (int d1 = 1; d1 <= 9; ++d1) {
        for (long len = 2; len <= n_max; ++len) {
            BigInt v2 = repdigit_value(d1, len) - n;
            if (v2 < 1) continue;
            if (auto r = is_repdigit(v2))
                out.push_back({d1, len, r->digit, r->length});
        }
    }
    return out;
}

}  // namespace balrep
