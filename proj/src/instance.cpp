#include "powrep/instance.hpp"

#include <algorithm>
#include <stdexcept>
#include <tuple>

namespace powrep {

namespace {

int sign_of(const mpz_class& x) { return mpz_sgn(x.get_mpz_t()); }

}  // namespace

PowerBasis PowerBasis::make(std::vector<mpz_class> bs) {
    std::sort(bs.begin(), bs.end());
    for (size_t i = 0; i < bs.size(); ++i) {
        if (bs[i] < 2) throw std::domain_error("PowerBasis: bases must be >= 2");
        if (i > 0 && bs[i] == bs[i - 1]) throw std::domain_error("PowerBasis: duplicate base");
    }
    if (bs.empty()) throw std::domain_error("PowerBasis: at least one base required");
    return PowerBasis{std::move(bs)};
}

bool PowerBasis::contains(const mpz_class& b) const {
    return std::binary_search(bases.begin(), bases.end(), b);
}

CoefficientSet CoefficientSet::make(std::vector<mpz_class> rs) {
    std::sort(rs.begin(), rs.end());
    for (size_t i = 0; i < rs.size(); ++i) {
        if (rs[i] == 0) throw std::domain_error("CoefficientSet: 0 is not allowed");
        if (i > 0 && rs[i] == rs[i - 1]) throw std::domain_error("CoefficientSet: duplicate coefficient");
    }
    if (rs.empty()) throw std::domain_error("CoefficientSet: at least one coefficient required");
    return CoefficientSet{std::move(rs)};
}

bool CoefficientSet::contains(const mpz_class& r) const {
    return std::binary_search(coeffs.begin(), coeffs.end(), r);
}

bool CoefficientSet::all_positive() const { return coeffs.front() > 0; }
bool CoefficientSet::has_negative() const { return coeffs.front() < 0; }
bool CoefficientSet::has_positive() const { return coeffs.back() > 0; }

mpz_class CoefficientSet::gcd_all() const {
    mpz_class g = 0;
    for (const auto& r : coeffs) g = gcd(g, r);
    return g;
}

Term Term::make(const mpz_class& r, const mpz_class& b, unsigned long e) {
    if (r == 0) throw std::domain_error("Term: zero coefficient");
    Term t;
    t.coeff = r;
    t.base = b;
    t.exponent = e;
    mpz_class pw;
    mpz_pow_ui(pw.get_mpz_t(), b.get_mpz_t(), e);
    t.value = r * pw;
    return t;
}

mpz_class Representation::value() const {
    mpz_class s = 0;
    for (const auto& t : terms) s += t.value;
    return s;
}

void Representation::canonicalize() {
    std::sort(terms.begin(), terms.end(), [](const Term& x, const Term& y) {
        mpz_class ax = abs(x.value), ay = abs(y.value);
        if (ax != ay) return ax > ay;
        if (x.value != y.value) return x.value > y.value;
        if (x.coeff != y.coeff) return x.coeff < y.coeff;
        if (x.base != y.base) return x.base < y.base;
        return x.exponent < y.exponent;
    });
}

std::vector<Term> enumerate_terms(const Instance& inst, const mpz_class& cap) {
    if (cap < 1) throw std::domain_error("enumerate_terms: cap must be >= 1");
    std::vector<Term> out;
    // (coeff, value) pairs already emitted; the exponent-0 value collides
    // across bases.
    std::vector<std::pair<mpz_class, mpz_class>> seen;
    for (const auto& b : inst.bases.bases) {
        mpz_class pw = 1;
        for (unsigned long e = 0;; ++e) {
            bool any = false;
            for (const auto& r : inst.coeffs.coeffs) {
                mpz_class v = r * pw;
                if (abs(v) > cap) continue;
                any = true;
                if (std::find(seen.begin(), seen.end(), std::make_pair(r, v)) != seen.end()) continue;
                seen.emplace_back(r, v);
                Term t;
                t.coeff = r;
                t.base = b;
                t.exponent = e;
                t.value = v;
                out.push_back(std::move(t));
            }
            if (!any && pw > cap) break;  // no coefficient can rescue larger powers
            pw *= b;
        }
    }
    std::sort(out.begin(), out.end(), [](const Term& x, const Term& y) {
        mpz_class ax = abs(x.value), ay = abs(y.value);
        if (ax != ay) return ax < ay;
        if (x.value != y.value) return x.value < y.value;
        if (x.coeff != y.coeff) return x.coeff < y.coeff;
        if (x.base != y.base) return x.base < y.base;
        return x.exponent < y.exponent;
    });
    return out;
}

mpz_class evaluate(const Representation& rep) { return rep.value(); }

bool validate(const Representation& rep, const Instance& inst) {
    for (const auto& t : rep.terms) {
        if (!inst.coeffs.contains(t.coeff)) return false;
        if (!inst.bases.contains(t.base)) return false;
        mpz_class pw;
        mpz_pow_ui(pw.get_mpz_t(), t.base.get_mpz_t(), t.exponent);
        if (t.coeff * pw != t.value) return false;
    }
    return true;
}

// ---- JSON -------------------------------------------------------------------

mpz_class mpz_from_string(const std::string& s) {
    mpz_class n;
    if (mpz_set_str(n.get_mpz_t(), s.c_str(), 10) != 0)
        throw std::domain_error("not a decimal integer: " + s);
    return n;
}

nlohmann::ordered_json instance_to_json(const Instance& inst) {
    nlohmann::ordered_json j;
    j["bases"] = nlohmann::ordered_json::array();
    for (const auto& b : inst.bases.bases) j["bases"].push_back(b.get_str());
    j["coeffs"] = nlohmann::ordered_json::array();
    for (const auto& r : inst.coeffs.coeffs) j["coeffs"].push_back(r.get_str());
    return j;
}

Instance instance_from_json(const nlohmann::json& j) {
    std::vector<mpz_class> bs, rs;
    for (const auto& b : j.at("bases")) bs.push_back(mpz_from_string(b.get<std::string>()));
    for (const auto& r : j.at("coeffs")) rs.push_back(mpz_from_string(r.get<std::string>()));
    return Instance{PowerBasis::make(std::move(bs)), CoefficientSet::make(std::move(rs))};
}

nlohmann::ordered_json term_to_json(const Term& t) {
    nlohmann::ordered_json j;
    j["r"] = t.coeff.get_str();
    j["b"] = t.base.get_str();
    j["e"] = t.exponent;
    return j;
}

Term term_from_json(const nlohmann::json& j) {
    return Term::make(mpz_from_string(j.at("r").get<std::string>()),
                      mpz_from_string(j.at("b").get<std::string>()),
                      j.at("e").get<unsigned long>());
}

nlohmann::ordered_json representation_to_json(const Representation& rep) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& t : rep.terms) arr.push_back(term_to_json(t));
    return arr;
}

Representation representation_from_json(const nlohmann::json& j) {
    Representation rep;
    for (const auto& t : j) rep.terms.push_back(term_from_json(t));
    return rep;
}

}  // namespace powrep
