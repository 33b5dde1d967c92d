#include "powrep/greedy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "powrep/numeric.hpp"

namespace powrep {

namespace {

// Largest e with b^e <= x (x >= 1), plus the power itself.
std::pair<unsigned long, mpz_class> largest_power_below(const mpz_class& b, const mpz_class& x) {
    unsigned long e = 0;
    mpz_class pw = 1;
    while (pw * b <= x) {
        pw *= b;
        ++e;
    }
    return {e, pw};
}

// Minimal coin counts over [0, limit] for positive coeffs; kNone marks
// unreachable values.
constexpr unsigned kNone = ~0u;

std::vector<unsigned> coin_counts(const std::vector<mpz_class>& coeffs, unsigned long limit) {
    std::vector<unsigned> dp(limit + 1, kNone);
    dp[0] = 0;
    for (unsigned long v = 1; v <= limit; ++v) {
        for (const auto& rz : coeffs) {
            unsigned long r = mpz_get_ui(rz.get_mpz_t());
            if (r > v || dp[v - r] == kNone) continue;
            dp[v] = std::min(dp[v], dp[v - r] + 1);
        }
    }
    return dp;
}

// Extract one minimal coin representation from the DP table as exponent-0
// terms on the given base.
Representation coin_representation(const std::vector<mpz_class>& coeffs,
                                   const std::vector<unsigned>& dp, unsigned long v,
                                   const mpz_class& base) {
    Representation rep;
    while (v > 0) {
        for (const auto& rz : coeffs) {
            unsigned long r = mpz_get_ui(rz.get_mpz_t());
            if (r <= v && dp[v - r] != kNone && dp[v - r] + 1 == dp[v]) {
                rep.terms.push_back(Term::make(rz, base, 0));
                v -= r;
                break;
            }
        }
    }
    return rep;
}

unsigned long greedy_constant_for(const mpz_class& b) {
    double bd = b.get_d();
    return (unsigned long)std::ceil(1.0 / std::log(bd / (bd - 1.0)));
}

}  // namespace

GreedyTrace greedy_single_base(const mpz_class& n, const mpz_class& b) {
    if (n <= 0) throw std::domain_error("greedy_single_base: n must be positive");
    if (b < 2) throw std::domain_error("greedy_single_base: base must be >= 2");
    GreedyTrace trace;
    trace.n = n;
    trace.base = b;
    mpz_class rem = n;
    while (rem > 0) {
        auto [e, pw] = largest_power_below(b, rem);
        rem -= pw;
        trace.steps.push_back({e, rem});
        trace.representation.terms.push_back(Term::make(1, b, e));
    }
    return trace;
}

unsigned long greedy_length_bound(const mpz_class& n, const mpz_class& b) {
    if (n <= 0) throw std::domain_error("greedy_length_bound: n must be positive");
    double ratio = log_mpz(n) / std::log(1.0 / (1.0 - 1.0 / b.get_d()));
    return (unsigned long)std::ceil(ratio) + 1;
}

UnitRepresentation represent_one(const CoefficientSet& R, const mpz_class& term_base) {
    if (R.gcd_all() != 1) throw std::domain_error("represent_one: coefficients must be coprime");
    if (!R.has_negative() || !R.has_positive())
        throw std::domain_error("represent_one: need both a positive and a negative coefficient");

    const auto& rs = R.coeffs;
    size_t rho = rs.size();

    // Extended gcd across the whole set: sum d_j r_j = 1.
    std::vector<mpz_class> d(rho, 0);
    mpz_class g = rs[0];
    d[0] = 1;
    for (size_t j = 1; j < rho; ++j) {
        mpz_class gg, x, y;
        mpz_gcdext(gg.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), g.get_mpz_t(), rs[j].get_mpz_t());
        for (size_t i = 0; i < j; ++i) d[i] *= x;
        d[j] = y;
        g = gg;
    }

    // P = prod |r_j|; q_j = P / r_j carries the sign of r_j. Choosing e_j
    // with the sign of r_j adds the nonnegative amount |e_j| * |q_j| to the
    // multiplicity d_j + e_j q_j.
    mpz_class P = 1;
    for (const auto& r : rs) P *= abs(r);
    std::vector<mpz_class> q(rho), e(rho, 0);
    for (size_t j = 0; j < rho; ++j) q[j] = P / rs[j];

    for (size_t j = 0; j < rho; ++j) {
        if (d[j] >= 0) continue;
        mpz_class need = -d[j];
        mpz_class qa = abs(q[j]);
        mpz_class steps = (need + qa - 1) / qa;
        e[j] = rs[j] > 0 ? steps : -steps;
    }

    // Rebalance so the e_j sum to zero; push the whole correction onto the
    // largest-|r| coefficient of the required sign, which only increases
    // that multiplicity.
    mpz_class v = 0;
    for (const auto& ej : e) v += ej;
    if (v != 0) {
        size_t pick = rho;
        mpz_class best = 0;
        for (size_t j = 0; j < rho; ++j) {
            bool right_sign = v > 0 ? rs[j] < 0 : rs[j] > 0;
            if (right_sign && (pick == rho || abs(rs[j]) > best)) {
                pick = j;
                best = abs(rs[j]);
            }
        }
        e[pick] -= v;
    }

    UnitRepresentation out;
    mpz_class total = 0;
    for (size_t j = 0; j < rho; ++j) {
        mpz_class mult = d[j] + e[j] * q[j];
        if (mult < 0) throw std::logic_error("represent_one: negative multiplicity");
        for (mpz_class i = 0; i < mult; ++i)
            out.rep.terms.push_back(Term::make(rs[j], term_base, 0));
        total += mult * rs[j];
    }
    if (total != 1) throw std::logic_error("represent_one: sum is not 1");
    out.rep.canonicalize();
    out.reported_length_constant = out.rep.length();
    return out;
}

mpz_class schur_bound(const CoefficientSet& R) {
    if (!R.all_positive()) throw std::domain_error("schur_bound: coefficients must be positive");
    if (R.rho() < 2) throw std::domain_error("schur_bound: need at least two coefficients");
    if (R.gcd_all() != 1) throw std::domain_error("schur_bound: coefficients must be coprime");
    const auto& rs = R.coeffs;
    mpz_class s = rs.front() * rs.back();
    for (size_t j = 1; j + 1 < rs.size(); ++j) s += rs[j];
    return s;
}

mpz_class frobenius_exact(const CoefficientSet& R) {
    mpz_class limit = schur_bound(R);
    if (!limit.fits_ulong_p()) throw std::domain_error("frobenius_exact: Schur bound too large for DP");
    unsigned long lim = mpz_get_ui(limit.get_mpz_t());
    auto dp = coin_counts(R.coeffs, lim);
    mpz_class worst = 0;
    for (unsigned long v = 1; v <= lim; ++v)
        if (dp[v] == kNone) worst = v;
    return worst;
}

CoprimeResult represent_coprime(const mpz_class& n, const Instance& inst) {
    if (n <= 0) throw std::domain_error("represent_coprime: n must be positive");
    const CoefficientSet& R = inst.coeffs;
    if (R.gcd_all() != 1) throw std::domain_error("represent_coprime: coefficients must be coprime");
    const mpz_class& b1 = inst.bases.bases.front();

    CoprimeResult out;
    out.constants.greedy_constant = greedy_constant_for(b1);

    if (R.contains(1)) {
        GreedyTrace t = greedy_single_base(n, b1);
        out.rep = std::move(t.representation);
        out.rep->canonicalize();
        out.constants.length_bound = double(greedy_length_bound(n, b1));
        return out;
    }

    if (R.all_positive()) {
        mpz_class c13z = schur_bound(R);
        out.constants.schur_threshold = c13z;
        if (!mpz_class(2 * c13z).fits_ulong_p())
            throw std::domain_error("represent_coprime: Schur bound too large for DP");
        unsigned long c13 = mpz_get_ui(c13z.get_mpz_t());
        auto dp = coin_counts(R.coeffs, 2 * c13);
        unsigned long c14 = 0;
        for (unsigned long v = c13 + 1; v <= 2 * c13; ++v) {
            if (dp[v] == kNone) throw std::logic_error("represent_coprime: Schur window gap");
            c14 = std::max(c14, (unsigned long)dp[v]);
        }
        out.constants.window_max_length = c14;
        out.constants.length_bound =
            double(out.constants.greedy_constant) * std::max(1.0, log_mpz(n)) + double(c14) + 2.0;

        if (n <= c13z) {
            unsigned long nv = mpz_get_ui(n.get_mpz_t());
            if (dp[nv] != kNone) {
                out.status = CoprimeStatus::below_threshold_representable;
                out.rep = coin_representation(R.coeffs, dp, nv, b1);
                out.rep->canonicalize();
            } else {
                out.status = CoprimeStatus::below_threshold_unrepresentable;
            }
            return out;
        }

        // Greedy over coin-scaled powers r * b1^e, always leaving at least
        // c13 + 1 behind so the final remainder lands inside (c13, 2*c13].
        Representation rep;
        mpz_class rem = n;
        while (rem > 2 * c13z) {
            mpz_class target = rem - c13z - 1;
            mpz_class best = 0, best_r;
            unsigned long best_e = 0;
            for (const auto& r : R.coeffs) {
                if (r > target) continue;
                auto [e, pw] = largest_power_below(b1, target / r);
                mpz_class v = r * pw;
                if (v > best) {
                    best = v;
                    best_r = r;
                    best_e = e;
                }
            }
            if (best == 0) throw std::logic_error("represent_coprime: no greedy step available");
            rep.terms.push_back(Term::make(best_r, b1, best_e));
            rem -= best;
        }
        unsigned long rv = mpz_get_ui(rem.get_mpz_t());
        Representation tail = coin_representation(R.coeffs, dp, rv, b1);
        rep.terms.insert(rep.terms.end(), tail.terms.begin(), tail.terms.end());
        rep.canonicalize();
        out.rep = std::move(rep);
        return out;
    }

    // Mixed signs without 1: expand n greedily in powers of b1, then replace
    // each power by unit_rep scaled to that power.
    UnitRepresentation unit = represent_one(R, b1);
    out.constants.unit_length = unit.rep.length();
    GreedyTrace t = greedy_single_base(n, b1);
    Representation rep;
    for (const auto& step : t.representation.terms) {
        for (const auto& u : unit.rep.terms)
            rep.terms.push_back(Term::make(u.coeff, b1, u.exponent + step.exponent));
    }
    rep.canonicalize();
    out.rep = std::move(rep);
    out.constants.length_bound =
        double(unit.rep.length()) * (double(greedy_length_bound(n, b1)));
    return out;
}

}  // namespace powrep
