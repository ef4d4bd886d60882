#include "arith.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>

namespace tslab::arith {

Int factorization::abs_product() const {
    Int acc = 1;
    for (const auto& f : factors) {
        Int pe;
        mpz_pow_ui(pe.get_mpz_t(), f.prime.get_mpz_t(), f.exponent);
        acc *= pe;
    }
    return acc;
}

unsigned factorization::valuation(const Int& p) const {
    for (const auto& f : factors)
        if (f.prime == p) return f.exponent;
    return 0;
}

namespace {

bool miller_rabin_witness(const Int& n, const Int& a) {
    // n odd >= 3. Returns true if a proves n composite.
    Int d = n - 1;
    unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
    mpz_fdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);
    Int x;
    mpz_powm(x.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
    if (x == 1 || x == n - 1) return false;
    for (unsigned long i = 1; i < s; ++i) {
        x = x * x % n;
        if (x == n - 1) return false;
    }
    return true;
}

}  // namespace

bool is_prime(const Int& n) {
    if (n < 2) return false;
    static const int small[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    for (int p : small) {
        if (n == p) return true;
        if (mpz_divisible_ui_p(n.get_mpz_t(), p)) return false;
    }
    // Witness set deterministic for n < 3.3e24 (Sorenson-Webster).
    static const Int bound("3317044064679887385961980");
    if (n < bound) {
        for (int a : small)
            if (miller_rabin_witness(n, a)) return false;
        return true;
    }
    return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
}

namespace {

Int rho_brent(const Int& n) {
    // n odd composite, not a prime power of a small prime. Deterministic
    // parameter schedule: x0 = 2, c = 1, 2, 3, ...
    for (unsigned long c = 1;; ++c) {
        Int x = 2, y = 2, d = 1;
        Int ys = y, q = 1;
        unsigned long r = 1;
        const unsigned long m = 128;
        while (d == 1) {
            x = y;
            for (unsigned long i = 0; i < r; ++i) y = (y * y + c) % n;
            unsigned long k = 0;
            while (k < r && d == 1) {
                ys = y;
                unsigned long lim = std::min(m, r - k);
                for (unsigned long i = 0; i < lim; ++i) {
                    y = (y * y + c) % n;
                    Int t = x - y;
                    q = q * (t < 0 ? -t : t) % n;
                }
                mpz_gcd(d.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
                k += lim;
            }
            r *= 2;
        }
        if (d == n) {
            // Backtrack one step at a time.
            do {
                ys = (ys * ys + c) % n;
                Int t = x - ys;
                mpz_gcd(d.get_mpz_t(), (t < 0 ? Int(-t) : t).get_mpz_t(), n.get_mpz_t());
            } while (d == 1);
        }
        if (d != n) return d;
        // Cycle found the trivial factor; retry with next c.
    }
}

void factor_into(Int n, std::vector<prime_power>& out) {
    if (n == 1) return;
    if (is_prime(n)) {
        out.push_back({n, 1});
        return;
    }
    Int d = rho_brent(n);
    factor_into(d, out);
    factor_into(n / d, out);
}

}  // namespace

factorization factorize(const Int& n) {
    if (n == 0) throw std::domain_error("factorize: n must be nonzero");
    factorization result;
    result.value = n;
    Int m = abs(n);
    for (i64 p : primes_up_to(1 << 16)) {
        if (m == 1) break;
        if (Int(p) * p > m) break;
        unsigned e = 0;
        while (mpz_divisible_ui_p(m.get_mpz_t(), (unsigned long)p)) {
            mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), (unsigned long)p);
            ++e;
        }
        if (e) result.factors.push_back({Int(p), e});
    }
    if (m > 1) {
        std::vector<prime_power> rest;
        factor_into(m, rest);
        std::sort(rest.begin(), rest.end(),
                  [](const prime_power& a, const prime_power& b) { return a.prime < b.prime; });
        // Merge equal primes from the recursive split.
        for (auto& f : rest) {
            if (!result.factors.empty() && result.factors.back().prime == f.prime)
                result.factors.back().exponent += f.exponent;
            else
                result.factors.push_back(std::move(f));
        }
    }
    check_internal(result.abs_product() == abs(n), "factorize: product mismatch");
    return result;
}

int kronecker(const Int& a, const Int& b) {
    return mpz_kronecker(a.get_mpz_t(), b.get_mpz_t());
}

int kronecker(i64 a, i64 b) { return kronecker(Int((long)a), Int((long)b)); }

namespace {

// Squarefree test for desk-scale integers via the prime list.
bool is_squarefree_i64(i64 m) {
    if (m < 0) m = -m;
    if (m == 0) return false;
    for (i64 p : primes_up_to(1 << 16)) {
        if (p * p > m) return true;
        if (m % p == 0) {
            m /= p;
            if (m % p == 0) return false;
        }
    }
    if (m == 1) return true;
    // Remaining cofactor > 2^32: fall back to full factorization.
    factorization f = factorize(Int((long)m));
    for (const auto& pp : f.factors)
        if (pp.exponent > 1) return false;
    return true;
}

}  // namespace

bool is_fundamental_discriminant(i64 d) {
    if (d == 0) return false;
    i64 r = ((d % 4) + 4) % 4;
    if (r == 1) return is_squarefree_i64(d);
    if (r != 0) return false;
    i64 m = d / 4;
    i64 rm = ((m % 4) + 4) % 4;
    if (rm != 2 && rm != 3) return false;
    return is_squarefree_i64(m);
}

fundamental_discriminant::fundamental_discriminant(i64 value) : d(value) {
    if (!is_fundamental_discriminant(value))
        throw std::domain_error("not a fundamental discriminant: " + std::to_string(value));
}

std::vector<i64> fundamental_discriminants_in_range(i64 lo, i64 hi, disc_sign sign) {
    std::vector<i64> out;
    if (lo > hi) return out;
    if (sign == disc_sign::negative_only) hi = std::min(hi, (i64)-1);
    if (lo > hi) return out;

    i64 maxabs = std::max(std::llabs(lo), std::llabs(hi));
    if (maxabs >= ((i64)1 << 32)) {
        // Beyond the p^2-sieve coverage; test each integer directly.
        for (i64 d = lo; d <= hi; ++d)
            if (is_fundamental_discriminant(d)) out.push_back(d);
        return out;
    }

    // Sieve squarefree flags over the window and over the window/4.
    auto squarefree_window = [](i64 a, i64 b) {
        std::vector<char> ok((size_t)(b - a + 1), 1);
        if (a <= 0 && 0 <= b) ok[(size_t)(0 - a)] = 0;
        i64 bound = std::max(std::llabs(a), std::llabs(b));
        for (i64 p : primes_up_to(1 << 16)) {
            i64 p2 = p * p;
            if (p2 > bound) break;
            // First multiple of p2 that is >= a.
            i64 start = a % p2 == 0 ? a : (a >= 0 ? (a / p2 + 1) * p2 : -((-a) / p2) * p2);
            for (i64 v = start; v <= b; v += p2) ok[(size_t)(v - a)] = 0;
        }
        return ok;
    };

    std::vector<char> sf = squarefree_window(lo, hi);
    i64 qlo = lo >= 0 ? (lo + 3) / 4 : -((-lo) / 4);
    i64 qhi = hi >= 0 ? hi / 4 : -((-hi + 3) / 4);
    std::vector<char> sf4;
    if (qlo <= qhi) sf4 = squarefree_window(qlo, qhi);

    for (i64 d = lo; d <= hi; ++d) {
        if (d == 0) continue;
        i64 r = ((d % 4) + 4) % 4;
        if (r == 1) {
            if (sf[(size_t)(d - lo)]) out.push_back(d);
        } else if (r == 0) {
            i64 m = d / 4;
            i64 rm = ((m % 4) + 4) % 4;
            if ((rm == 2 || rm == 3) && sf4[(size_t)(m - qlo)]) out.push_back(d);
        }
    }
    return out;
}

namespace {

struct prime_table {
    i64 limit;
    std::vector<i64> primes;
};

prime_table* sieve_table(i64 n) {
    auto* t = new prime_table;
    t->limit = n;
    std::vector<char> comp((size_t)n + 1, 0);
    for (i64 i = 2; i <= n; ++i) {
        if (!comp[(size_t)i]) {
            t->primes.push_back(i);
            for (i64 j = i * i; j <= n; j += i) comp[(size_t)j] = 1;
        }
    }
    return t;
}

}  // namespace

const std::vector<i64>& primes_up_to(i64 bound) {
    // Grow-only cache; superseded tables are leaked so that concurrent
    // readers holding a reference stay valid.
    static std::atomic<const prime_table*> current{nullptr};
    static std::mutex mu;
    const prime_table* cur = current.load(std::memory_order_acquire);
    if (cur && cur->limit >= bound) return cur->primes;
    std::lock_guard<std::mutex> lock(mu);
    cur = current.load(std::memory_order_acquire);
    if (cur && cur->limit >= bound) return cur->primes;
    i64 n = std::max<i64>(bound, 1 << 16);
    if (cur) n = std::max(n, cur->limit * 2);
    const prime_table* fresh = sieve_table(n);
    current.store(fresh, std::memory_order_release);
    return fresh->primes;
}

i64 gcd_i64(i64 a, i64 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b) {
        i64 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

i64 xgcd_i64(i64 a, i64 b, i64& x, i64& y) {
    i64 x0 = 1, y0 = 0, x1 = 0, y1 = 1;
    i64 r0 = a, r1 = b;
    while (r1) {
        i64 q = r0 / r1;
        i64 t;
        t = r0 - q * r1; r0 = r1; r1 = t;
        t = x0 - q * x1; x0 = x1; x1 = t;
        t = y0 - q * y1; y0 = y1; y1 = t;
    }
    if (r0 < 0) { r0 = -r0; x0 = -x0; y0 = -y0; }
    x = x0;
    y = y0;
    return r0;
}

i64 mulmod_i64(i64 a, i64 b, i64 m) { return (i64)((i128)a * b % m); }

i64 powmod_i64(i64 a, u64 e, i64 m) {
    i64 r = 1 % m;
    a %= m;
    if (a < 0) a += m;
    while (e) {
        if (e & 1) r = mulmod_i64(r, a, m);
        a = mulmod_i64(a, a, m);
        e >>= 1;
    }
    return r;
}

i64 sqrtmod_i64(i64 a, i64 p) {
    a %= p;
    if (a < 0) a += p;
    if (a == 0) return 0;
    if (p == 2) return a;
    if (powmod_i64(a, (u64)((p - 1) / 2), p) != 1) return -1;
    if (p % 4 == 3) return powmod_i64(a, (u64)((p + 1) / 4), p);
    // Tonelli-Shanks.
    i64 q = p - 1;
    int s = 0;
    while (q % 2 == 0) { q /= 2; ++s; }
    i64 z = 2;
    while (powmod_i64(z, (u64)((p - 1) / 2), p) != p - 1) ++z;
    i64 m = s;
    i64 c = powmod_i64(z, (u64)q, p);
    i64 t = powmod_i64(a, (u64)q, p);
    i64 r = powmod_i64(a, (u64)((q + 1) / 2), p);
    while (t != 1) {
        i64 i = 0, tt = t;
        while (tt != 1) { tt = mulmod_i64(tt, tt, p); ++i; }
        i64 b = c;
        for (i64 j = 0; j < m - i - 1; ++j) b = mulmod_i64(b, b, p);
        m = i;
        c = mulmod_i64(b, b, p);
        t = mulmod_i64(t, c, p);
        r = mulmod_i64(r, b, p);
    }
    return r;
}

}  // namespace tslab::arith
