#pragma once

#include <optional>
#include <vector>

#include <gmpxx.h>

#include "powrep/instance.hpp"

namespace powrep {

struct GreedyStep {
    unsigned long exponent;
    mpz_class remainder_after;
};

/// Trace of the single-base greedy run: each step subtracts the largest
/// b^e not exceeding the current remainder; remainders strictly decrease
/// to 0. All coefficients in the resulting representation are +1.
struct GreedyTrace {
    mpz_class n;
    mpz_class base;
    std::vector<GreedyStep> steps;
    Representation representation;
};

GreedyTrace greedy_single_base(const mpz_class& n, const mpz_class& b);

/// ceil(log n / log(1/(1-1/b))) + 1, an explicit upper bound on the
/// greedy trace length.
unsigned long greedy_length_bound(const mpz_class& n, const mpz_class& b);

/// Representation of 1 from a coprime coefficient set containing both a
/// positive and a negative element, using exponent-0 terms only. The
/// reported constant is the achieved length (no smaller bound is claimed).
struct UnitRepresentation {
    Representation rep;
    mpz_class reported_length_constant;  // c12-style, equals rep.length()
};

UnitRepresentation represent_one(const CoefficientSet& R, const mpz_class& term_base = 2);

/// Schur's bound r1*r_rho + r2 + ... + r_(rho-1) for positive coprime R
/// (ascending, rho >= 2): every integer above it is a nonnegative
/// combination of R.
mpz_class schur_bound(const CoefficientSet& R);

/// Largest integer with no nonnegative-combination representation (0 if
/// every positive integer is representable). Computed by reachability DP
/// up to schur_bound(R).
mpz_class frobenius_exact(const CoefficientSet& R);

enum class CoprimeStatus {
    ok,
    below_threshold_representable,    // n <= schur threshold but the coin DP found one
    below_threshold_unrepresentable,  // n <= schur threshold and genuinely not representable
};

/// Constants reported alongside a coprime-representation run. The bound
/// fields are computed, not asserted: greedy_constant from the base-b1
/// analysis, schur_threshold = c13, window_max_length = max coin-DP length
/// over (c13, 2*c13], unit_length for the mixed-sign substitution path.
struct CoprimeConstants {
    unsigned long greedy_constant = 0;   // ceil(1 / log(b1/(b1-1)))
    mpz_class schur_threshold = 0;       // 0 when unused (1 in R, or mixed sign)
    unsigned long window_max_length = 0; // 0 when unused
    unsigned long unit_length = 0;       // 0 when unused
    double length_bound = 0.0;           // numeric bound for this call's n
};

struct CoprimeResult {
    CoprimeStatus status = CoprimeStatus::ok;
    std::optional<Representation> rep;
    CoprimeConstants constants;
};

/// Representation of n > 0 for coprime R: pure greedy when 1 is in R;
/// greedy over coin-scaled powers of b1 down to the Schur window then a
/// coin DP finish when R is all positive; greedy with the representation
/// of 1 substituted per power when R has mixed signs.
CoprimeResult represent_coprime(const mpz_class& n, const Instance& inst);

}  // namespace powrep
