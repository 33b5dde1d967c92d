#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>
#include <json.hpp>

#include "powrep/numeric.hpp"

namespace powrep {

/// The base set B: distinct integers >= 2, kept strictly ascending.
struct PowerBasis {
    std::vector<mpz_class> bases;

    size_t t() const { return bases.size(); }
    bool contains(const mpz_class& b) const;
    static PowerBasis make(std::vector<mpz_class> bs);
};

/// The coefficient set R: distinct nonzero integers, kept ascending.
/// 0 is rejected structurally.
struct CoefficientSet {
    std::vector<mpz_class> coeffs;

    size_t rho() const { return coeffs.size(); }
    bool contains(const mpz_class& r) const;
    bool all_positive() const;
    bool has_negative() const;
    bool has_positive() const;
    mpz_class gcd_all() const;
    static CoefficientSet make(std::vector<mpz_class> rs);
};

struct Instance {
    PowerBasis bases;
    CoefficientSet coeffs;
};

/// One term r * b^e with its evaluated value (never 0).
struct Term {
    mpz_class coeff;
    mpz_class base;
    unsigned long exponent = 0;
    mpz_class value;

    static Term make(const mpz_class& r, const mpz_class& b, unsigned long e);
};

/// A multiset of terms; value is the sum, length the term count.
/// The empty representation has value 0.
struct Representation {
    std::vector<Term> terms;

    size_t length() const { return terms.size(); }
    mpz_class value() const;
    /// Sort terms by |value| descending (ties by value, coeff, base,
    /// exponent) for reproducible output.
    void canonicalize();
};

/// All terms with |value| <= cap, deduplicated by (coeff, value) -- the
/// b1^0 = b2^0 collision keeps one copy per coefficient. Sorted by |value|
/// ascending, then value, then coefficient.
std::vector<Term> enumerate_terms(const Instance& inst, const mpz_class& cap);

mpz_class evaluate(const Representation& rep);

/// True iff every term uses a coefficient from R, a base from B, and its
/// stored value matches coeff * base^exponent.
bool validate(const Representation& rep, const Instance& inst);

// JSON wire format. Big integers are decimal strings throughout.
nlohmann::ordered_json instance_to_json(const Instance& inst);
Instance instance_from_json(const nlohmann::json& j);
nlohmann::ordered_json term_to_json(const Term& t);
Term term_from_json(const nlohmann::json& j);
nlohmann::ordered_json representation_to_json(const Representation& rep);
Representation representation_from_json(const nlohmann::json& j);

mpz_class mpz_from_string(const std::string& s);

}  // namespace powrep
