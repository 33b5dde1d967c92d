#include "powrep/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace powrep {

namespace {

// ---- small-prime sieve ----------------------------------------------------

constexpr uint32_t kSieveBound = 10'000;

const std::vector<uint32_t>& small_primes() {
    static const std::vector<uint32_t> primes = [] {
        std::vector<bool> composite(kSieveBound + 1, false);
        std::vector<uint32_t> ps;
        for (uint32_t i = 2; i <= kSieveBound; ++i) {
            if (composite[i]) continue;
            ps.push_back(i);
            for (uint64_t j = uint64_t(i) * i; j <= kSieveBound; j += i)
                composite[j] = true;
        }
        return ps;
    }();
    return primes;
}

// ---- uint64 arithmetic ------------------------------------------------------

uint64_t mulmod_u64(uint64_t a, uint64_t b, uint64_t m) {
    return (uint64_t)((__uint128_t)a * b % m);
}

uint64_t powmod_u64(uint64_t a, uint64_t e, uint64_t m) {
    uint64_t r = m == 1 ? 0 : 1;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod_u64(r, a, m);
        a = mulmod_u64(a, a, m);
        e >>= 1;
    }
    return r;
}

uint64_t gcd_u64(uint64_t a, uint64_t b) {
    while (b) {
        a %= b;
        std::swap(a, b);
    }
    return a;
}

// Deterministic Miller-Rabin for all 64-bit inputs.
bool is_prime_u64(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    for (uint64_t a : {2ull, 325ull, 9375ull, 28178ull, 450775ull, 9780504ull, 1795265022ull}) {
        uint64_t x = powmod_u64(a % n, d, n);
        if (x == 0 || x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int r = 1; r < s; ++r) {
            x = mulmod_u64(x, x, n);
            if (x == n - 1) { witness = false; break; }
        }
        if (witness) return false;
    }
    return true;
}

// Brent's cycle variant of Pollard rho with a fixed parameter schedule, so
// repeated runs factor identically.
uint64_t brent_rho_u64(uint64_t n) {
    if ((n & 1) == 0) return 2;
    for (uint64_t c = 1;; ++c) {
        uint64_t x = 2, y = 2, d = 1;
        uint64_t power = 1, lam = 0, saved = x;
        while (d == 1) {
            if (lam == power) {
                saved = y;
                power <<= 1;
                lam = 0;
            }
            y = mulmod_u64(y, y, n) + c;
            if (y >= n) y -= n;
            ++lam;
            uint64_t diff = saved > y ? saved - y : y - saved;
            d = diff == 0 ? n : gcd_u64(diff, n);
        }
        if (d != n) return d;
        (void)x;
    }
}

void factor_u64_into(uint64_t n, std::map<uint64_t, unsigned>& out) {
    for (uint32_t p : small_primes()) {
        if (uint64_t(p) * p > n) break;
        while (n % p == 0) { out[p] += 1; n /= p; }
    }
    if (n == 1) return;
    if (is_prime_u64(n)) { out[n] += 1; return; }
    uint64_t d = brent_rho_u64(n);
    factor_u64_into(d, out);
    factor_u64_into(n / d, out);
}

// ---- mpz helpers ------------------------------------------------------------

bool fits_u64(const mpz_class& n) {
    return n >= 0 && mpz_sizeinbase(n.get_mpz_t(), 2) <= 64;
}

uint64_t to_u64(const mpz_class& n) {
    uint64_t lo = mpz_get_ui(n.get_mpz_t());
    if (mpz_sizeinbase(n.get_mpz_t(), 2) > 8 * sizeof(unsigned long)) {
        mpz_class hi = n >> 32;
        lo = (uint64_t(mpz_get_ui(hi.get_mpz_t())) << 32) | (lo & 0xffffffffull);
    }
    return lo;
}

// Fixed-base Miller-Rabin; the first 13 prime bases are a proven witness set
// for every n < 3.317e24.
bool miller_rabin_mpz(const mpz_class& n, const std::vector<unsigned>& bases) {
    mpz_class d = n - 1;
    unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
    d >>= s;
    for (unsigned a : bases) {
        if (mpz_class(a) % n == 0) continue;
        mpz_class x = pow_mod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (unsigned long r = 1; r < s; ++r) {
            x = x * x % n;
            if (x == n - 1) { witness = false; break; }
        }
        if (witness) return false;
    }
    return true;
}

const mpz_class& mr_deterministic_bound() {
    // 3,317,044,064,679,887,385,961,981
    static const mpz_class bound("3317044064679887385961981");
    return bound;
}

bool is_prime_bls(const mpz_class& n);

bool is_prime_mpz(const mpz_class& n) {
    if (n < 2) return false;
    for (uint32_t p : small_primes()) {
        if (mpz_class(p) * p > n) return true;
        if (mpz_divisible_ui_p(n.get_mpz_t(), p)) return n == p;
    }
    if (n < mr_deterministic_bound())
        return miller_rabin_mpz(n, {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41});
    return is_prime_bls(n);
}

// n-1 primality proof (Brillhart-Lehmer-Selfridge): n is prime iff for each
// prime q | n-1 some a has a^(n-1) == 1 and a^((n-1)/q) != 1 (mod n).
bool is_prime_bls(const mpz_class& n) {
    mpz_class nm1 = n - 1;
    FactoredInteger f = factor(nm1);
    for (const auto& pp : f.factors) {
        mpz_class cofactor = nm1 / pp.p;
        bool found = false;
        for (unsigned a = 2; a < 2000; ++a) {
            if (pow_mod(a, nm1, n) != 1) return false;  // Fermat failure
            if (pow_mod(a, cofactor, n) != 1) { found = true; break; }
        }
        if (!found)
            throw std::runtime_error("is_prime: n-1 proof found no witness for " + n.get_str());
    }
    return true;
}

void factor_mpz_into(const mpz_class& n, std::map<uint64_t, unsigned>& small,
                     std::vector<std::pair<mpz_class, unsigned>>& large);

// Deterministic rho on mpz, mirroring the uint64 schedule.
mpz_class brent_rho_mpz(const mpz_class& n) {
    if (mpz_even_p(n.get_mpz_t())) return 2;
    for (unsigned long c = 1;; ++c) {
        mpz_class y = 2, saved = 2, d = 1;
        uint64_t power = 1, lam = 0;
        while (d == 1) {
            if (lam == power) {
                saved = y;
                power <<= 1;
                lam = 0;
            }
            y = (y * y + c) % n;
            ++lam;
            mpz_class diff = saved - y;
            if (diff < 0) diff = -diff;
            d = diff == 0 ? n : gcd(diff, n);
        }
        if (d != n) return d;
    }
}

void factor_mpz_into(const mpz_class& n0, std::map<uint64_t, unsigned>& small,
                     std::vector<std::pair<mpz_class, unsigned>>& large) {
    mpz_class n = n0;
    if (fits_u64(n)) {
        factor_u64_into(to_u64(n), small);
        return;
    }
    for (uint32_t p : small_primes()) {
        while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
            small[p] += 1;
            mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
        }
        if (fits_u64(n)) {
            factor_u64_into(to_u64(n), small);
            return;
        }
    }
    if (n == 1) return;
    if (is_prime_mpz(n)) {
        large.emplace_back(n, 1);
        return;
    }
    mpz_class d = brent_rho_mpz(n);
    factor_mpz_into(d, small, large);
    factor_mpz_into(n / d, small, large);
}

FactoredInteger factor_uncached(const mpz_class& n) {
    std::map<uint64_t, unsigned> small;
    std::vector<std::pair<mpz_class, unsigned>> large;
    factor_mpz_into(n, small, large);
    std::vector<PrimePower> fs;
    fs.reserve(small.size() + large.size());
    for (const auto& [p, a] : small) fs.push_back({mpz_class(p), a});
    for (const auto& [p, a] : large) fs.push_back({p, a});
    FactoredInteger out = FactoredInteger::from_factors(std::move(fs));
    out.value = n;
    return out;
}

// ---- factorization cache ----------------------------------------------------

struct FactorCache {
    std::mutex mu;
    bool enabled = false;
    std::string path;
    std::map<mpz_class, std::vector<PrimePower>> entries;

    void load() {
        std::ifstream in(path);
        if (!in) return;  // absence is fine
        std::string line;
        while (std::getline(in, line)) {
            auto tab = line.find('\t');
            if (tab == std::string::npos) continue;
            mpz_class n;
            if (mpz_set_str(n.get_mpz_t(), line.substr(0, tab).c_str(), 10) != 0) continue;
            std::vector<PrimePower> fs;
            std::stringstream ss(line.substr(tab + 1));
            std::string item;
            bool ok = n >= 1;
            while (ok && std::getline(ss, item, ',')) {
                if (item.empty()) continue;
                auto caret = item.find('^');
                std::string ps = caret == std::string::npos ? item : item.substr(0, caret);
                unsigned a = 1;
                if (caret != std::string::npos) a = unsigned(std::strtoul(item.c_str() + caret + 1, nullptr, 10));
                mpz_class p;
                if (mpz_set_str(p.get_mpz_t(), ps.c_str(), 10) != 0 || a == 0) { ok = false; break; }
                fs.push_back({p, a});
            }
            if (!ok) continue;
            FactoredInteger fi = FactoredInteger::from_factors(fs);
            if (fi.value != n) continue;  // corrupt record; skip
            entries.emplace(n, std::move(fi.factors));
        }
    }

    std::optional<std::vector<PrimePower>> lookup(const mpz_class& n) {
        std::lock_guard<std::mutex> lock(mu);
        if (!enabled) return std::nullopt;
        auto it = entries.find(n);
        if (it == entries.end()) return std::nullopt;
        return it->second;
    }

    void store(const mpz_class& n, const std::vector<PrimePower>& fs) {
        std::lock_guard<std::mutex> lock(mu);
        if (!enabled || entries.count(n)) return;
        entries.emplace(n, fs);
        std::ofstream out(path, std::ios::app);
        if (!out) return;
        out << n.get_str() << '\t';
        for (size_t i = 0; i < fs.size(); ++i) {
            if (i) out << ',';
            out << fs[i].p.get_str() << '^' << fs[i].a;
        }
        out << '\n';
    }
};

FactorCache& factor_cache() {
    static FactorCache cache = [] {
        FactorCache c;
        if (const char* dir = std::getenv("POWREP_CACHE_DIR")) {
            c.enabled = true;
            c.path = std::string(dir) + "/factors.txt";
            c.load();
        }
        return c;
    }();
    return cache;
}

}  // namespace

void configure_factor_cache(const std::string& dir) {
    FactorCache& c = factor_cache();
    std::lock_guard<std::mutex> lock(c.mu);
    c.enabled = true;
    c.path = dir + "/factors.txt";
    c.entries.clear();
    c.load();
}

void disable_factor_cache() {
    FactorCache& c = factor_cache();
    std::lock_guard<std::mutex> lock(c.mu);
    c.enabled = false;
    c.entries.clear();
}

// ---- FactoredInteger ----------------------------------------------------------

unsigned FactoredInteger::max_exponent() const {
    unsigned m = 0;
    for (const auto& f : factors) m = std::max(m, f.a);
    return m;
}

bool FactoredInteger::squarefree() const { return max_exponent() <= 1; }

FactoredInteger FactoredInteger::from_factors(std::vector<PrimePower> fs) {
    std::sort(fs.begin(), fs.end(), [](const PrimePower& x, const PrimePower& y) { return x.p < y.p; });
    FactoredInteger out;
    for (auto& f : fs) {
        if (f.a == 0) continue;
        if (!out.factors.empty() && out.factors.back().p == f.p)
            out.factors.back().a += f.a;
        else
            out.factors.push_back(std::move(f));
    }
    out.value = 1;
    for (const auto& f : out.factors) {
        mpz_class pw;
        mpz_pow_ui(pw.get_mpz_t(), f.p.get_mpz_t(), f.a);
        out.value *= pw;
    }
    return out;
}

FactoredInteger FactoredInteger::from_primes(const std::vector<mpz_class>& primes) {
    std::vector<PrimePower> fs;
    fs.reserve(primes.size());
    for (const auto& p : primes) fs.push_back({p, 1});
    return from_factors(std::move(fs));
}

// ---- public operations ---------------------------------------------------------

FactoredInteger factor(const mpz_class& n) {
    if (n <= 0) throw std::domain_error("factor: n must be positive");
    if (n == 1) return FactoredInteger{};
    if (auto hit = factor_cache().lookup(n)) {
        FactoredInteger out;
        out.value = n;
        out.factors = std::move(*hit);
        return out;
    }
    FactoredInteger out = factor_uncached(n);
    factor_cache().store(n, out.factors);
    return out;
}

bool is_prime(const mpz_class& n) {
    if (n < 1) return false;
    if (fits_u64(n)) return is_prime_u64(to_u64(n));
    return is_prime_mpz(n);
}

std::vector<mpz_class> divisors(const FactoredInteger& n) {
    std::vector<mpz_class> ds{1};
    for (const auto& f : n.factors) {
        size_t base = ds.size();
        mpz_class pw = 1;
        for (unsigned i = 1; i <= f.a; ++i) {
            pw *= f.p;
            for (size_t j = 0; j < base; ++j) ds.push_back(ds[j] * pw);
        }
    }
    std::sort(ds.begin(), ds.end());
    return ds;
}

mpz_class pow_mod(const mpz_class& base, const mpz_class& exp, const mpz_class& mod) {
    mpz_class r;
    mpz_powm(r.get_mpz_t(), base.get_mpz_t(), exp.get_mpz_t(), mod.get_mpz_t());
    return r;
}

mpz_class carmichael(const FactoredInteger& m) {
    mpz_class l = 1;
    for (const auto& f : m.factors) {
        mpz_class part;
        if (f.p == 2) {
            if (f.a == 1) part = 1;
            else if (f.a == 2) part = 2;
            else {
                part = 1;
                mpz_mul_2exp(part.get_mpz_t(), part.get_mpz_t(), f.a - 2);
            }
        } else {
            mpz_class pw;
            mpz_pow_ui(pw.get_mpz_t(), f.p.get_mpz_t(), f.a - 1);
            part = pw * (f.p - 1);
        }
        l = lcm(l, part);
    }
    return l;
}

mpz_class mult_order(const mpz_class& b, const FactoredInteger& m) {
    if (m.value < 2) throw std::domain_error("mult_order: modulus must be >= 2");
    mpz_class br = b % m.value;
    if (br < 0) br += m.value;
    if (gcd(br, m.value) != 1) throw std::domain_error("mult_order: base not coprime to modulus");
    mpz_class order = carmichael(m);
    FactoredInteger of = factor(order);
    for (const auto& f : of.factors) {
        for (unsigned i = 0; i < f.a; ++i) {
            mpz_class reduced = order / f.p;
            if (pow_mod(br, reduced, m.value) == 1)
                order = reduced;
            else
                break;
        }
    }
    return order;
}

double log_mpz(const mpz_class& n) {
    if (n <= 0) throw std::domain_error("log_mpz: n must be positive");
    signed long exp;
    double d = mpz_get_d_2exp(&exp, n.get_mpz_t());
    return std::log(d) + double(exp) * std::log(2.0);
}

}  // namespace powrep
