#include "powrep/search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "powrep/bitops.hpp"
#include "powrep/numeric.hpp"

namespace powrep {

namespace {

bool fits_ll(const mpz_class& x) {
    static const mpz_class lo(std::numeric_limits<long long>::min());
    static const mpz_class hi(std::numeric_limits<long long>::max());
    return x >= lo && x <= hi;
}

long long to_ll(const mpz_class& x) { return mpz_get_si(x.get_mpz_t()); }

// Distinct term values |v| <= cap with one representative Term per value.
struct TermPool {
    std::vector<mpz_class> values;              // sorted by |v|, then v
    std::vector<Term> rep_terms;                // parallel to values
    mpz_class value_gcd;                        // gcd of all |values|, 0 if empty
    bool any_positive = false;
    bool any_negative = false;

    bool single_signed() const { return !(any_positive && any_negative); }

    static TermPool build(const Instance& inst, const mpz_class& cap) {
        TermPool pool;
        if (cap < 1) return pool;
        for (const auto& t : enumerate_terms(inst, cap)) {
            bool dup = false;
            for (const auto& v : pool.values)
                if (v == t.value) { dup = true; break; }
            if (dup) continue;
            (t.value > 0 ? pool.any_positive : pool.any_negative) = true;
            pool.values.push_back(t.value);
            pool.rep_terms.push_back(t);
            pool.value_gcd = gcd(pool.value_gcd, t.value);
        }
        return pool;
    }
};

// ---- depth engine: meet-in-the-middle over sorted half-sums -----------------

// All sums of at most h pool values (with repetition), sorted and unique.
std::vector<mpz_class> sums_up_to(const std::vector<mpz_class>& vals, unsigned h,
                                  size_t node_budget) {
    std::vector<mpz_class> acc{0};
    for (unsigned j = 0; j < h; ++j) {
        std::vector<mpz_class> next(acc);
        next.reserve(acc.size() * (vals.size() + 1));
        for (const auto& s : acc)
            for (const auto& v : vals) next.push_back(s + v);
        std::sort(next.begin(), next.end());
        next.erase(std::unique(next.begin(), next.end()), next.end());
        if (next.size() > node_budget)
            throw SearchBudgetExceeded("half-sum enumeration exceeds node budget");
        acc = std::move(next);
    }
    return acc;
}

bool representable_depth(const mpz_class& n, const std::vector<mpz_class>& vals, unsigned d,
                         size_t node_budget) {
    if (n == 0) return true;
    if (d == 0 || vals.empty()) return false;
    unsigned h = d / 2, g = d - h;
    auto low = sums_up_to(vals, h, node_budget);
    auto high = sums_up_to(vals, g, node_budget);
    for (const auto& x : high) {
        if (std::binary_search(low.begin(), low.end(), mpz_class(n - x))) return true;
    }
    return false;
}

// Exact-depth witness extraction; only called once a depth is known to work,
// so the non-increasing-index DFS with the coarse magnitude prune stays tiny.
bool witness_dfs(const mpz_class& remaining, unsigned terms_left, size_t max_idx,
                 const TermPool& pool, std::vector<size_t>& picked) {
    if (remaining == 0) return true;
    if (terms_left == 0) return false;
    for (size_t i = max_idx; i-- > 0;) {
        const mpz_class& v = pool.values[i];
        if (abs(remaining) > abs(v) * terms_left) break;  // values sorted by |v|
        picked.push_back(i);
        if (witness_dfs(remaining - v, terms_left - 1, i + 1, pool, picked)) return true;
        picked.pop_back();
    }
    return false;
}

Representation extract_witness(const mpz_class& n, const TermPool& pool, unsigned depth) {
    std::vector<size_t> picked;
    if (!witness_dfs(n, depth, pool.values.size(), pool, picked))
        throw std::logic_error("witness extraction failed at a depth reported representable");
    Representation rep;
    for (size_t i : picked) rep.terms.push_back(pool.rep_terms[i]);
    rep.canonicalize();
    return rep;
}

// ---- breadth engine: bitset level sets over [-W, W] -------------------------

struct BitLevels {
    long long W = 0;
    size_t nbits = 0;
    std::vector<long long> vals;
    std::vector<std::vector<uint64_t>> levels;  // levels[j] = sums of <= j terms

    void init(long long window, std::vector<long long> values) {
        W = window;
        nbits = size_t(2 * W + 1);
        vals = std::move(values);
        levels.assign(1, std::vector<uint64_t>(words_for(nbits), 0));
        set_bit(levels[0], size_t(W));  // empty sum
    }

    void extend_to(unsigned j) {
        while (levels.size() <= j) {
            const auto& prev = levels.back();
            std::vector<uint64_t> next = prev;
            for (long long v : vals) {
                if (v >= 0)
                    or_shifted(next, prev, size_t(v), nbits);
                else
                    or_bit_range(next, 0, prev, size_t(-v), nbits - size_t(-v));
            }
            levels.push_back(std::move(next));
        }
    }

    bool contains(unsigned j, long long value) const {
        if (value < -W || value > W) return false;
        return get_bit(levels[j], size_t(value + W));
    }

    bool stable_at(unsigned j) const {
        return j >= 1 && levels[j] == levels[j - 1];
    }

    // Peel one term per level going down to the empty sum.
    std::vector<long long> backtrack(unsigned j, long long value) const {
        std::vector<long long> picked;
        long long cur = value;
        for (unsigned level = j; level > 0; --level) {
            if (contains(level - 1, cur)) continue;  // fewer terms suffice
            bool advanced = false;
            for (long long v : vals) {
                long long u = cur - v;
                if (u >= -W && u <= W && contains(level - 1, u)) {
                    picked.push_back(v);
                    cur = u;
                    advanced = true;
                    break;
                }
            }
            if (!advanced) throw std::logic_error("level-set backtrack failed");
        }
        if (cur != 0) throw std::logic_error("level-set backtrack did not reach 0");
        return picked;
    }
};

std::vector<long long> pool_values_ll(const TermPool& pool) {
    std::vector<long long> out;
    out.reserve(pool.values.size());
    for (const auto& v : pool.values) {
        if (!fits_ll(v)) throw SearchBudgetExceeded("term value exceeds 64-bit window engine");
        out.push_back(to_ll(v));
    }
    return out;
}

}  // namespace

long default_cap_factor(const Instance& inst) {
    mpz_class b = inst.bases.bases.back();
    mpz_class beta = b * b;
    if (!beta.fits_slong_p()) throw std::domain_error("default cap factor overflows");
    return beta.get_si();
}

LevelSet build_level_set(const Instance& inst, int level, long long cap, long long bound) {
    if (level < 0 || cap < 1 || bound < 0) throw std::domain_error("build_level_set: bad arguments");
    LevelSet out;
    out.level = level;
    out.cap = cap;
    out.bound = bound;
    long long W = cap * std::max(level, 1);
    if (2 * W + 1 > (1LL << 31)) throw SearchBudgetExceeded("level-set window too large");
    TermPool pool = TermPool::build(inst, cap);
    BitLevels bits;
    bits.init(W, pool_values_ll(pool));
    bits.extend_to(unsigned(level));
    for (long long v = -bound; v <= bound; ++v)
        if (bits.contains(unsigned(level), v)) out.values.push_back(v);
    return out;
}

std::optional<unsigned> min_length_depth_engine(const mpz_class& n, const Instance& inst,
                                                long beta, const SearchLimits& limits) {
    if (beta < 1) throw std::domain_error("cap factor must be >= 1");
    if (n == 0) return 0;
    TermPool pool = TermPool::build(inst, beta * abs(n));
    if (pool.values.empty()) return std::nullopt;
    if (pool.value_gcd == 0 || n % pool.value_gcd != 0) return std::nullopt;
    if (pool.single_signed() && ((pool.any_positive && n < 0) || (pool.any_negative && n > 0)))
        return std::nullopt;
    mpz_class min_abs = abs(pool.values.front());  // sorted by |v|
    for (unsigned d = 1; d <= limits.max_depth; ++d) {
        if (representable_depth(n, pool.values, d, limits.max_mitm_nodes)) return d;
        // monotone sums: once d * min|v| exceeds |n| nothing new can hit n
        if (pool.single_signed() && min_abs * d > abs(n)) return std::nullopt;
    }
    throw SearchBudgetExceeded("depth engine exceeded max depth");
}

LengthResult min_length_with_witness(const mpz_class& n, const Instance& inst, long beta,
                                     const SearchLimits& limits) {
    if (beta < 1) throw std::domain_error("cap factor must be >= 1");
    LengthResult out;
    if (n == 0) {
        out.length = 0;
        out.witness = Representation{};
        return out;
    }
    mpz_class cap = beta * abs(n);
    TermPool pool = TermPool::build(inst, cap);
    if (pool.values.empty() || pool.value_gcd == 0 || n % pool.value_gcd != 0) {
        out.length = std::nullopt;
        return out;
    }
    bool single_signed = pool.single_signed();
    if (single_signed && ((pool.any_positive && n < 0) || (pool.any_negative && n > 0))) {
        out.length = std::nullopt;
        return out;
    }

    unsigned shallow = std::min(4u, limits.max_depth);
    for (unsigned d = 1; d <= shallow; ++d) {
        if (representable_depth(n, pool.values, d, limits.max_mitm_nodes)) {
            out.length = d;
            out.witness = extract_witness(n, pool, d);
            return out;
        }
    }

    // Deep search through the windowed breadth engine when everything fits.
    if (fits_ll(cap) && fits_ll(n)) {
        long long nv = to_ll(n);
        long long capv = to_ll(cap);
        long long W = single_signed ? std::max(std::abs(nv), 1LL)
                                    : std::min<long long>(capv * 4, limits.max_window_bits / 2);
        W = std::max(W, std::abs(nv));
        while (true) {
            if (2 * W + 1 > limits.max_window_bits)
                throw SearchBudgetExceeded("min_length window exceeds budget");
            BitLevels bits;
            bits.init(W, pool_values_ll(pool));
            for (unsigned j = shallow + 1; j <= limits.max_depth; ++j) {
                bits.extend_to(j);
                if (bits.contains(j, nv)) {
                    out.length = j;
                    auto picked = bits.backtrack(j, nv);
                    Representation rep;
                    for (long long v : picked) {
                        for (size_t i = 0; i < pool.values.size(); ++i) {
                            if (fits_ll(pool.values[i]) && to_ll(pool.values[i]) == v) {
                                rep.terms.push_back(pool.rep_terms[i]);
                                break;
                            }
                        }
                    }
                    rep.canonicalize();
                    out.witness = std::move(rep);
                    return out;
                }
                if (bits.stable_at(j)) {
                    if (single_signed) {
                        out.length = std::nullopt;  // closure reached, n unreachable
                        return out;
                    }
                    break;  // window may be clipping paths; widen
                }
            }
            if (single_signed)
                throw SearchBudgetExceeded("min_length exceeded max depth");
            W *= 2;
        }
    }

    // Arbitrary-precision fallback: keep deepening the MITM engine.
    for (unsigned d = shallow + 1; d <= limits.max_depth; ++d) {
        if (representable_depth(n, pool.values, d, limits.max_mitm_nodes)) {
            out.length = d;
            out.witness = extract_witness(n, pool, d);
            return out;
        }
    }
    throw SearchBudgetExceeded("min_length exceeded max depth");
}

std::optional<unsigned> min_length(const mpz_class& n, const Instance& inst, long beta,
                                   const SearchLimits& limits) {
    return min_length_with_witness(n, inst, beta, limits).length;
}

namespace {

// One full ascending scan at a fixed beta. Returns the first n in
// [1, n_max] whose <= k-1 term level sets miss it, rebuilding the pool at
// each term-value breakpoint.
std::optional<mpz_class> threshold_scan(int k, const Instance& inst, long beta,
                                        const mpz_class& n_max, const SearchLimits& limits,
                                        TermPool* final_pool, BitLevels* final_bits) {
    mpz_class full_cap = beta * n_max;
    TermPool all = TermPool::build(inst, full_cap);

    // breakpoints: distinct |values| ascending
    std::vector<mpz_class> breaks;
    for (const auto& v : all.values) {
        mpz_class a = abs(v);
        if (breaks.empty() || breaks.back() != a) breaks.push_back(a);
    }
    std::sort(breaks.begin(), breaks.end());
    breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

    size_t idx = 0;  // number of breakpoints absorbed into the current pool
    TermPool cur;
    BitLevels bits;
    long long cap_ll = 0;
    bool dirty = true;

    for (mpz_class n = 1; n <= n_max; ++n) {
        while (idx < breaks.size() && breaks[idx] <= beta * n) {
            ++idx;
            dirty = true;
        }
        mpz_class cap_r = idx == 0 ? mpz_class(0) : breaks[idx - 1];
        // With at most k-1 terms of size <= cap_r, no sum reaches past this.
        if (n > cap_r * (k - 1)) {
            if (final_pool) *final_pool = TermPool::build(inst, cap_r == 0 ? mpz_class(1) : cap_r);
            if (final_bits) *final_bits = BitLevels{};
            return n;
        }
        if (dirty) {
            cur = TermPool::build(inst, cap_r);
            if (!fits_ll(cap_r)) throw SearchBudgetExceeded("threshold scan cap exceeds 64-bit engine");
            cap_ll = to_ll(cap_r);
            long long W = cap_ll * k;
            if (2 * W + 1 > limits.max_window_bits)
                throw SearchBudgetExceeded("threshold scan window exceeds budget");
            bits.init(W, pool_values_ll(cur));
            bits.extend_to(unsigned(k));
            dirty = false;
        }
        if (!fits_ll(n)) throw SearchBudgetExceeded("threshold scan value exceeds 64-bit engine");
        if (!bits.contains(unsigned(k - 1), to_ll(n))) {
            if (final_pool) *final_pool = std::move(cur);
            if (final_bits) *final_bits = std::move(bits);
            return n;
        }
    }
    return std::nullopt;
}

}  // namespace

ThresholdOutcome threshold_f(int k, const Instance& inst, long beta, const mpz_class& n_max,
                             bool check_stability, const SearchLimits& limits) {
    if (k < 1) throw std::domain_error("threshold_f: k must be >= 1");
    if (beta < 1) throw std::domain_error("threshold_f: cap factor must be >= 1");
    ThresholdOutcome outcome;
    TermPool pool;
    BitLevels bits;
    auto found = threshold_scan(k, inst, beta, n_max, limits, &pool, &bits);
    if (!found) {
        outcome.status = ThresholdStatus::inconclusive;
        outcome.frontier = n_max;
        return outcome;
    }

    ThresholdResult res;
    res.k = k;
    res.f = *found;
    res.cap_factor = beta;
    res.method = "levelset-scan";

    // Witness at the actual capped minimal length (k when a one-valued term
    // exists, possibly more otherwise).
    LengthResult lr = min_length_with_witness(res.f, inst, beta, limits);
    if (lr.length) {
        res.witness_length = *lr.length;
        res.witness = std::move(*lr.witness);
    }

    if (check_stability) {
        // Doubling the cap can only shrink lengths; f is stable iff it is
        // still unreachable with < k terms under the doubled cap.
        TermPool wide = TermPool::build(inst, 2 * beta * res.f);
        bool reachable = representable_depth(res.f, wide.values, unsigned(k - 1), limits.max_mitm_nodes);
        res.stable_at_2beta = !reachable;
    }

    outcome.status = ThresholdStatus::found;
    outcome.result = std::move(res);
    return outcome;
}

namespace {

// Bitset of positives <= n reachable with at most k-1 all-positive terms.
std::vector<uint64_t> representable_bits(const Instance& inst, int k, long long n) {
    TermPool pool = TermPool::build(inst, n);
    size_t nbits = size_t(n) + 1;
    std::vector<uint64_t> cur(words_for(nbits), 0);
    cur[0] = 1;  // empty sum
    auto vals = pool_values_ll(pool);
    for (int j = 1; j <= k - 1; ++j) {
        std::vector<uint64_t> next = cur;
        for (long long v : vals) or_shifted(next, cur, size_t(v), nbits);
        cur = std::move(next);
    }
    return cur;
}

}  // namespace

mpz_class count_representables(const Instance& inst, int k, const mpz_class& n) {
    if (!inst.coeffs.all_positive())
        throw std::domain_error("count_representables: coefficients must all be positive");
    if (k < 1) throw std::domain_error("count_representables: k must be >= 1");
    if (n < 1) return 0;
    if (!fits_ll(n) || to_ll(n) > (1LL << 31))
        throw SearchBudgetExceeded("count_representables bound too large");
    auto bits = representable_bits(inst, k, to_ll(n));
    return mpz_class((unsigned long)popcount_range(bits, 1, size_t(to_ll(n))));
}

Theorem3iiResult check_theorem3_ii(const Instance& inst, int k) {
    if (!inst.coeffs.all_positive())
        throw std::domain_error("check_theorem3_ii: coefficients must all be positive");
    if (k < 1) throw std::domain_error("check_theorem3_ii: k must be >= 1");
    double rho = double(inst.coeffs.rho());
    double t = double(inst.bases.t());
    double rkt = rho * double(k) * t;
    if (k > 1 && rkt < 2) throw std::domain_error("check_theorem3_ii: rho*k*t must be >= 2");

    Theorem3iiResult out;
    out.k = k;
    out.bound = std::pow(1.5 * rkt * std::log2(rkt), double(k - 1));

    if (out.bound < 4e6) {
        mpz_class n_max(std::floor(out.bound) + 1);
        auto outcome = threshold_f(k, inst, 1, n_max, false);
        if (outcome.status == ThresholdStatus::found) {
            out.f = outcome.result->f;
            out.holds = mpz_class(out.f.value()).get_d() <= out.bound;
            out.method = "exact-threshold";
            return out;
        }
        out.holds = false;
        out.method = "exact-threshold-exhausted";
        return out;
    }

    // Pigeonhole route: find a concrete non-represented n below the bound.
    for (long long N = 64; double(N) <= out.bound && N <= (1LL << 31); N *= 2) {
        auto bits = representable_bits(inst, k, N);
        for (long long v = 1; v <= N; ++v) {
            if (!get_bit(bits, size_t(v))) {
                out.witness_n = v;
                out.holds = true;
                out.method = "counting";
                return out;
            }
        }
    }
    out.method = "counting-exhausted";
    out.holds = false;
    return out;
}

nlohmann::ordered_json threshold_to_json(const ThresholdOutcome& outcome) {
    nlohmann::ordered_json j;
    if (outcome.status == ThresholdStatus::inconclusive) {
        j["status"] = "inconclusive";
        j["frontier"] = outcome.frontier.get_str();
        return j;
    }
    const ThresholdResult& r = *outcome.result;
    j["k"] = r.k;
    j["f"] = r.f.get_str();
    j["witness"] = representation_to_json(r.witness);
    j["cap_factor"] = r.cap_factor;
    if (r.stable_at_2beta) j["stable_at_2beta"] = *r.stable_at_2beta;
    return j;
}

}  // namespace powrep
