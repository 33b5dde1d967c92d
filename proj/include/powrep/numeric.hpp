#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace powrep {

struct PrimePower {
    mpz_class p;
    unsigned a = 1;
};

/// A positive integer together with its prime factorization.
/// factors are sorted by prime ascending; value == product of p^a.
/// value == 1 holds exactly when the factor list is empty.
struct FactoredInteger {
    mpz_class value{1};
    std::vector<PrimePower> factors;

    unsigned max_exponent() const;
    bool squarefree() const;

    /// Build from a factor list (primality of entries is the caller's
    /// responsibility); sorts, merges duplicates, recomputes value.
    static FactoredInteger from_factors(std::vector<PrimePower> fs);
    /// Squarefree product of distinct primes.
    static FactoredInteger from_primes(const std::vector<mpz_class>& primes);
};

/// Deterministic factorization: trial division by small primes, then
/// Brent's rho with a fixed parameter schedule. Throws std::domain_error
/// for n <= 0.
FactoredInteger factor(const mpz_class& n);

/// Deterministic primality test. Fixed-base Miller-Rabin, proven correct
/// for n < 3.317e24; larger inputs get an n-1 (Brillhart-Lehmer-Selfridge)
/// proof, which requires factoring n-1 and so is only practical when n-1
/// is smooth -- true of everything this project generates.
bool is_prime(const mpz_class& n);

/// All divisors of n.value, ascending. Count equals prod(a_i + 1).
std::vector<mpz_class> divisors(const FactoredInteger& n);

/// Least u >= 1 with b^u == 1 (mod m.value). Requires gcd(b, m) == 1 and
/// m.value >= 2 (std::domain_error otherwise). Divides carmichael(m).
mpz_class mult_order(const mpz_class& b, const FactoredInteger& m);

/// Carmichael function: least L with b^L == 1 (mod m) for every b coprime
/// to m. lambda(1) = 1; lambda(2^a) = 1, 1, 2, 2^(a-2) for a = 0,1,2,>=3.
mpz_class carmichael(const FactoredInteger& m);

mpz_class pow_mod(const mpz_class& base, const mpz_class& exp, const mpz_class& mod);

/// Natural log of a positive mpz via mantissa/exponent split (exact enough
/// for bounds; n may exceed double range).
double log_mpz(const mpz_class& n);

// Optional on-disk factorization cache. One record per line:
//   n<TAB>p1^a1,p2^a2,...
// The default location is $POWREP_CACHE_DIR/factors.txt; a missing
// directory or file is never an error. factor() reads through the cache
// when enabled and appends new results idempotently.
void configure_factor_cache(const std::string& dir);
void disable_factor_cache();

}  // namespace powrep
