#pragma once

#include "balrep/bigint.hpp"
#include "balrep/repdigits.hpp"
#include "balrep/sequences.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace balrep {

struct SolverConfig {
    long scale = 200;
    bool paper_m_override = false;
    long verify_k_max = 1000;
    long brute_k_max = 25;
    int max_doublings = 4;
    std::size_t cf_max_terms = 160;
};

// k range and per-k length cap for the finite search. When n_max is unset it
// defaults to digits(term(k)) + 1, which the growth inequality makes complete.
struct SearchSpace {
    long k_lo = 1;
    long k_hi = 25;
    std::optional<long> n_max;
};

struct Solution {
    long k = 0;
    BigInt value;
    DifferenceRepresentation rep;

    bool operator==(const Solution&) const = default;
};

struct CertifiedComparison {
    std::string description;
    bool certified = false;
};

struct StageRecord {
    std::string name;
    std::vector<std::pair<std::string, std::string>> inputs;
    std::vector<std::pair<std::string, std::string>> constants;
    std::vector<CertifiedComparison> comparisons;
    std::vector<std::string> citations;
    bool certified = true;
};

// Side-by-side record of a value the source derivation reports vs what this
// run computed. `matches` is the certified comparison at the stated tolerance.
struct PaperReferenceEntry {
    std::string name;
    std::string paper_value;
    std::string computed_value;
    bool matches = false;
};

struct ProofReport {
    std::string sequence;
    std::vector<StageRecord> stages;
    std::vector<Solution> solutions;
    std::vector<PaperReferenceEntry> paper_reference;
    bool complete = false;

    nlohmann::ordered_json to_json() const;
    std::string to_text() const;
    const StageRecord* find_stage(const std::string& name) const;
    const PaperReferenceEntry* find_reference(const std::string& name) const;
};

// All solutions of term(k) = repdigit(d1, n) - repdigit(d2, m) in the space,
// ordered by (k, d1, n).
std::vector<Solution> brute_force(const RecurrenceSpec& spec, const SearchSpace& space);

// Scans k <= verify_k_max for repdigit terms and 2-/3-block concatenation
// terms, and checks the scan against the sets established in the literature.
// Throws VerificationFailure with the counterexample on mismatch.
StageRecord trivial_cases(const RecurrenceSpec& spec, long verify_k_max);

// Full staged proof: finite search, small-case elimination, two lower-bound
// stages, absolute exponent bound, two reductions, refit, closing search.
// Throws StageFailure naming the stage if any certification fails.
ProofReport prove(const RecurrenceSpec& spec, const SolverConfig& config = {});

}  // namespace balrep
