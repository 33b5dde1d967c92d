#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>
#include <json.hpp>

#include "powrep/instance.hpp"

namespace powrep {

/// Thrown when a search would exceed its configured budget without a
/// conclusive answer. Results below budget are exact (under the cap).
struct SearchBudgetExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SearchLimits {
    unsigned max_depth = 48;             // largest term count considered
    size_t max_mitm_nodes = 2'000'000;   // half-sum enumeration budget
    long long max_window_bits = 1LL << 28;  // per-level bitset budget
};

/// Integers in [-bound, bound] that are sums of at most `level` terms,
/// every term's |value| <= cap. Intermediate multiset sums are not
/// restricted to the window.
struct LevelSet {
    int level = 0;
    long long cap = 0;
    long long bound = 0;
    std::vector<long long> values;  // sorted ascending
};

LevelSet build_level_set(const Instance& inst, int level, long long cap, long long bound);

/// beta default: (max base)^2.
long default_cap_factor(const Instance& inst);

/// Minimal number of terms with |term| <= beta*|n| summing to n, or
/// nullopt when n has no such representation at all. Exact under the cap;
/// an upper bound for the uncapped minimal length.
std::optional<unsigned> min_length(const mpz_class& n, const Instance& inst, long beta,
                                   const SearchLimits& limits = {});

struct LengthResult {
    std::optional<unsigned> length;
    std::optional<Representation> witness;
};

LengthResult min_length_with_witness(const mpz_class& n, const Instance& inst, long beta,
                                     const SearchLimits& limits = {});

/// Depth-first engine on its own (iterative deepening over capped terms,
/// meet-in-the-middle splits). Exposed for cross-checks against the
/// breadth engine used by min_length's level-set path.
std::optional<unsigned> min_length_depth_engine(const mpz_class& n, const Instance& inst,
                                                long beta, const SearchLimits& limits = {});

enum class ThresholdStatus { found, inconclusive };

struct ThresholdResult {
    int k = 0;
    mpz_class f;
    Representation witness;   // k terms when one exists at exactly k
    unsigned witness_length = 0;
    long cap_factor = 0;
    std::string method;
    std::optional<bool> stable_at_2beta;
};

struct ThresholdOutcome {
    ThresholdStatus status = ThresholdStatus::inconclusive;
    std::optional<ThresholdResult> result;
    mpz_class frontier;  // largest n ruled out when inconclusive
};

/// Smallest n >= 1 whose capped minimal length is >= k, by ascending scan
/// with shared level sets. Scans to n_max then reports inconclusive.
ThresholdOutcome threshold_f(int k, const Instance& inst, long beta, const mpz_class& n_max,
                             bool check_stability = true, const SearchLimits& limits = {});

/// Exact count of positive integers <= n representable with at most k-1
/// terms, for all-positive coefficient sets (no cancellation, cap = n).
mpz_class count_representables(const Instance& inst, int k, const mpz_class& n);

struct Theorem3iiResult {
    int k = 0;
    std::optional<mpz_class> f;   // exact threshold when computed
    std::optional<mpz_class> witness_n;  // non-represented n from counting, otherwise
    double bound = 0.0;
    bool holds = false;
    std::string method;
};

/// f_R(k) <= (1.5 * rho * k * t * log2(rho*k*t))^(k-1) for all-positive R,
/// checked exactly for small bounds and by pigeonhole counting otherwise.
Theorem3iiResult check_theorem3_ii(const Instance& inst, int k);

nlohmann::ordered_json threshold_to_json(const ThresholdOutcome& outcome);

}  // namespace powrep
