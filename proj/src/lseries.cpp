#include "lseries.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

namespace tslab::lseries {

namespace {

constexpr i64 kEnumerationLimit = 10'000;

// Affine point count over F_p by summing quadratic characters of the
// 2-division cubic; p odd. chi table built by marking squares.
i64 count_points_enumeration(const curve& e, i64 p) {
    if (p == 2) {
        auto r2 = [](const Int& v) { return (i64)mpz_fdiv_ui(v.get_mpz_t(), 2); };
        i64 a1 = r2(e.a1), a2 = r2(e.a2), a3 = r2(e.a3), a4 = r2(e.a4), a6 = r2(e.a6);
        i64 cnt = 1;  // infinity
        for (i64 x = 0; x < 2; ++x)
            for (i64 y = 0; y < 2; ++y) {
                i64 lhs = y * y + a1 * x * y + a3 * y;
                i64 rhs = x * x * x + a2 * x * x + a4 * x + a6;
                if (((lhs - rhs) % 2 + 2) % 2 == 0) ++cnt;
            }
        return cnt;
    }
    std::vector<signed char> chi((size_t)p, -1);
    chi[0] = 0;
    for (i64 y = 1; y <= p / 2; ++y) chi[(size_t)arith::mulmod_i64(y, y, p)] = 1;
    auto red = [&](const Int& v) {
        Int r = v % p;
        if (r < 0) r += p;
        return r.get_si();
    };
    // Complete the square in y: #points(x) = 1 + chi(g(x)) with
    // g = 4x^3 + b2 x^2 + 2 b4 x + b6.
    i64 b2 = red(e.b2()), b4 = red(e.b4()), b6 = red(e.b6());
    i64 cnt = 1;
    for (i64 x = 0; x < p; ++x) {
        i64 g = (arith::mulmod_i64(arith::mulmod_i64(x, x, p), 4 * x % p + b2, p) +
                 arith::mulmod_i64(2 * b4 % p, x, p) + b6) % p;
        cnt += 1 + chi[(size_t)g];
    }
    return cnt;
}

// --- order counting over F_p for large p ------------------------------------

struct fp_point {
    bool inf = true;
    i64 x = 0, y = 0;
};

struct fp_curve {
    i64 p, A, B;
};

fp_point fp_add(const fp_curve& c, const fp_point& P, const fp_point& Q) {
    if (P.inf) return Q;
    if (Q.inf) return P;
    i64 p = c.p;
    if (P.x == Q.x) {
        if ((P.y + Q.y) % p == 0) return {};
        i64 num = (arith::mulmod_i64(3, arith::mulmod_i64(P.x, P.x, p), p) + c.A) % p;
        i64 den = 2 * P.y % p;
        i64 lam = arith::mulmod_i64(num, arith::powmod_i64(den, (u64)(p - 2), p), p);
        i64 x3 = ((arith::mulmod_i64(lam, lam, p) - P.x - Q.x) % p + p) % p;
        i64 y3 = ((arith::mulmod_i64(lam, (P.x - x3 + p) % p, p) - P.y) % p + p) % p;
        return {false, x3, y3};
    }
    i64 num = ((Q.y - P.y) % p + p) % p;
    i64 den = ((Q.x - P.x) % p + p) % p;
    i64 lam = arith::mulmod_i64(num, arith::powmod_i64(den, (u64)(p - 2), p), p);
    i64 x3 = ((arith::mulmod_i64(lam, lam, p) - P.x - Q.x) % p + p) % p;
    i64 y3 = ((arith::mulmod_i64(lam, (P.x - x3 + p) % p, p) - P.y) % p + p) % p;
    return {false, x3, y3};
}

fp_point fp_mul(const fp_curve& c, fp_point P, u64 k) {
    fp_point R;
    while (k) {
        if (k & 1) R = fp_add(c, R, P);
        P = fp_add(c, P, P);
        k >>= 1;
    }
    return R;
}

// Order of P divides `mult`; strip primes to find the exact order.
u64 fp_point_order(const fp_curve& c, const fp_point& P, u64 mult) {
    u64 order = mult;
    arith::factorization f = arith::factorize(Int((unsigned long)mult));
    for (const auto& pp : f.factors) {
        u64 q = pp.prime.get_ui();
        for (unsigned i = 0; i < pp.exponent; ++i) {
            if (order % q) break;
            if (fp_mul(c, P, order / q).inf)
                order /= q;
            else
                break;
        }
    }
    return order;
}

// Group order by Mestre-style candidate elimination inside the Hasse window.
i64 count_points_bsgs(const curve& e, i64 p) {
    // Short model is fine away from 2 and 3.
    fp_curve c;
    c.p = p;
    Int A = -27 * e.c4(), B = -54 * e.c6();
    c.A = (i64)mpz_fdiv_ui(A.get_mpz_t(), (unsigned long)p);
    c.B = (i64)mpz_fdiv_ui(B.get_mpz_t(), (unsigned long)p);

    double sq = std::sqrt((double)p);
    i64 lo = (i64)std::ceil(p + 1 - 2 * sq);
    i64 hi = (i64)std::floor(p + 1 + 2 * sq);

    u64 known = 1;  // lcm of point orders found so far
    for (i64 x = 0;; ++x) {
        check_internal(x < p, "bsgs: exhausted x coordinates");
        i64 rhs = (arith::mulmod_i64(arith::mulmod_i64(x, x, p), x, p) +
                   arith::mulmod_i64(c.A, x, p) + c.B) % p;
        i64 y = arith::sqrtmod_i64(rhs, p);
        if (y < 0) continue;
        fp_point P{false, x, y};

        // Find all n in [lo, hi] with nP = O via baby-step giant-step.
        i64 width = hi - lo + 1;
        i64 m = (i64)std::ceil(std::sqrt((double)width));
        std::map<std::pair<i64, i64>, i64> baby;
        fp_point acc;  // j * P
        for (i64 j = 0; j < m; ++j) {
            baby.emplace(acc.inf ? std::make_pair((i64)-1, (i64)-1) : std::make_pair(acc.x, acc.y), j);
            acc = fp_add(c, acc, P);
        }
        fp_point giant = fp_mul(c, P, (u64)lo);
        fp_point stride = fp_mul(c, P, (u64)m);
        u64 point_order = 0;
        for (i64 i = 0;; ++i) {
            i64 base = lo + i * m;
            if (base > hi) break;
            auto key = giant.inf ? std::make_pair((i64)-1, (i64)-1) : std::make_pair(giant.x, giant.y);
            auto it = baby.find(key);
            if (it != baby.end()) {
                i64 n = base - it->second;  // n*P = 0 candidate (giant = baby means (base - j) P = O)
                if (n >= lo && n <= hi && n > 0 && fp_mul(c, P, (u64)n).inf) {
                    u64 o = fp_point_order(c, P, (u64)n);
                    point_order = point_order ? std::gcd(point_order, o) : o;
                }
            }
            // Also the mirror match: giant = -baby => (base + j) P = O.
            auto itm = giant.inf ? baby.end()
                                 : baby.find(std::make_pair(giant.x, (p - giant.y) % p));
            if (itm != baby.end()) {
                i64 n = base + itm->second;
                if (n >= lo && n <= hi && n > 0 && fp_mul(c, P, (u64)n).inf) {
                    u64 o = fp_point_order(c, P, (u64)n);
                    point_order = point_order ? std::gcd(point_order, o) : o;
                }
            }
            giant = fp_add(c, giant, stride);
        }
        check_internal(point_order != 0, "bsgs: no annihilator in the Hasse window");
        known = std::lcm(known, point_order);

        // Candidates: multiples of `known` in the window.
        i64 first = (lo + (i64)known - 1) / (i64)known * (i64)known;
        std::vector<i64> cands;
        for (i64 n = first; n <= hi; n += (i64)known) cands.push_back(n);
        check_internal(!cands.empty(), "bsgs: empty candidate set");
        if (cands.size() == 1) return cands[0];
        // Ambiguous: take another point.
    }
}

}  // namespace

i64 ap(const curve& e, const Int& p) {
    if (!arith::is_prime(p)) throw std::domain_error("ap: p must be prime");
    if (mpz_divisible_p(e.disc().get_mpz_t(), p.get_mpz_t())) {
        ec::local_data ld = ec::tate_local_data(e, p);
        if (ld.f >= 2) return 0;                      // additive
        return ld.split_multiplicative ? 1 : -1;      // multiplicative
    }
    check_internal(mpz_fits_slong_p(p.get_mpz_t()), "ap: prime too large");
    i64 pl = p.get_si();
    if (pl <= kEnumerationLimit) return pl + 1 - count_points_enumeration(e, pl);
    return pl + 1 - count_points_bsgs(e, pl);
}

coefficient_vector an_vector(const curve& e, i64 n_max) {
    if (n_max < 1) throw std::domain_error("an_vector: n_max must be >= 1");
    coefficient_vector v;
    v.n_max = n_max;
    v.a.assign((size_t)n_max + 1, 0);
    v.a[1] = 1;

    // Smallest prime factor sieve for multiplicative assembly.
    std::vector<i64> spf((size_t)n_max + 1, 0);
    for (i64 i = 2; i <= n_max; ++i) {
        if (spf[(size_t)i] == 0)
            for (i64 j = i; j <= n_max; j += i)
                if (spf[(size_t)j] == 0) spf[(size_t)j] = i;
    }

    Int delta = e.disc();
    auto good_at = [&](i64 p) {
        return !mpz_divisible_p(delta.get_mpz_t(), Int((long)p).get_mpz_t());
    };
    for (i64 n = 2; n <= n_max; ++n) {
        i64 p = spf[(size_t)n];
        // Decompose n = p^k * r with r coprime to p.
        i64 r = n;
        while (r % p == 0) r /= p;
        i64 pk = n / r;
        if (r > 1) {
            v.a[(size_t)n] = v.a[(size_t)r] * v.a[(size_t)pk];
        } else if (n == p) {
            i64 apv = ap(e, Int((long)p));
            if (good_at(p))
                check_internal((double)apv * apv <= 4.0 * (double)p, "an_vector: Hasse violation");
            else
                check_internal(std::llabs(apv) <= 1, "an_vector: bad a_p out of range");
            v.a[(size_t)n] = apv;
        } else {
            // a_{p^k} = a_p a_{p^{k-1}} - eps p a_{p^{k-2}}, eps = [good p].
            i64 prev = v.a[(size_t)(n / p)];
            i64 prev2 = v.a[(size_t)(n / p / p)];
            v.a[(size_t)n] = v.a[(size_t)p] * prev - (good_at(p) ? p * prev2 : 0);
        }
    }
    return v;
}

namespace {

struct series_context {
    double sqrt_n;  // sqrt(conductor)
    coefficient_vector coeffs;
};

// Terms needed so the geometric tail (with |a_n| <= sqrt(3) n) is < eps.
i64 terms_needed(double sqrt_n, double eps) {
    double c = 2.0 * std::sqrt(3.0);
    double x = 2.0 * M_PI / sqrt_n;
    i64 m = 16;
    while (true) {
        double tail = c * std::exp(-x * (double)(m + 1)) / (1.0 - std::exp(-x));
        if (tail < eps) return m;
        m *= 2;
        check_internal(m < (i64)1 << 40, "terms_needed: runaway");
    }
}

double tail_value(double sqrt_n, i64 m) {
    double c = 2.0 * std::sqrt(3.0);
    double x = 2.0 * M_PI / sqrt_n;
    return c * std::exp(-x * (double)(m + 1)) / (1.0 - std::exp(-x));
}

series_context make_context(const curve& e, double eps, i64 cap) {
    std::vector<ec::local_data> ld = ec::all_local_data(e);
    Int n = ec::conductor(ld);
    series_context ctx;
    ctx.sqrt_n = std::sqrt(n.get_d());
    i64 m = terms_needed(ctx.sqrt_n, eps);
    if (m > cap) throw std::domain_error("lseries: precision unreachable within n_max cap");
    ctx.coeffs = an_vector(e, m);
    return ctx;
}

// theta(t) = sum a_n exp(-2 pi n t / sqrt(N)); converges for t > 0.
double theta(const series_context& ctx, double t) {
    double x = 2.0 * M_PI * t / ctx.sqrt_n;
    double s = 0;
    for (i64 n = 1; n <= ctx.coeffs.n_max; ++n)
        s += (double)ctx.coeffs.at(n) * std::exp(-x * (double)n);
    return s;
}

root_number_result root_number_from(const series_context& ctx) {
    const double tests[2] = {1.2, 1.4};
    double best[2] = {0, 0};  // residual for w = +1, -1
    for (double t : tests) {
        double lhs = theta(ctx, 1.0 / t);
        double rhs = t * t * theta(ctx, t);
        double scale = std::max({1.0, std::abs(lhs), std::abs(rhs)});
        best[0] = std::max(best[0], std::abs(lhs - rhs) / scale);
        best[1] = std::max(best[1], std::abs(lhs + rhs) / scale);
    }
    root_number_result r;
    if (best[0] <= best[1]) {
        r.w = 1;
        r.fe_residual = best[0];
    } else {
        r.w = -1;
        r.fe_residual = best[1];
    }
    if (r.fe_residual >= 1e-6)
        throw internal_error("root_number: functional equation fails for both signs "
                             "(residual " + std::to_string(r.fe_residual) + ")");
    return r;
}

}  // namespace

root_number_result root_number(const curve& e) {
    // theta(1/t) needs terms ~ t * sqrt(N); build with margin at the widest t.
    series_context ctx = make_context(e, 1e-10 / 2, 4'000'000);
    i64 need = (i64)((double)terms_needed(ctx.sqrt_n, 1e-10) * 1.5) + 16;
    if (need > ctx.coeffs.n_max) ctx.coeffs = an_vector(e, need);
    return root_number_from(ctx);
}

central_value compute_central_value(const curve& e, double target, i64 n_max_cap) {
    series_context ctx = make_context(e, target / 4, n_max_cap);
    i64 need = (i64)((double)terms_needed(ctx.sqrt_n, target / 4) * 1.5) + 16;
    if (need > ctx.coeffs.n_max) {
        if (need > n_max_cap) throw std::domain_error("lseries: precision unreachable within n_max cap");
        ctx.coeffs = an_vector(e, need);
    }
    root_number_result rn = root_number_from(ctx);

    central_value cv;
    cv.w = rn.w;
    cv.fe_residual = rn.fe_residual;
    cv.n_max = ctx.coeffs.n_max;
    cv.tail_bound = tail_value(ctx.sqrt_n, ctx.coeffs.n_max);

    double x = 2.0 * M_PI / ctx.sqrt_n;
    if (rn.w == 1) {
        double s = 0;
        for (i64 n = 1; n <= ctx.coeffs.n_max; ++n)
            s += (double)ctx.coeffs.at(n) / (double)n * std::exp(-x * (double)n);
        cv.value = 2.0 * s;
        cv.order = 0;
        if (std::abs(cv.value) < 1e-6) cv.order_undetermined = true;  // likely order >= 2
    } else {
        // L'(E,1) = 2 sum (a_n/n) E1(2 pi n / sqrt(N)).
        double s = 0;
        for (i64 n = 1; n <= ctx.coeffs.n_max; ++n)
            s += (double)ctx.coeffs.at(n) / (double)n * (-std::expint(-x * (double)n));
        cv.value = 2.0 * s;
        cv.order = 1;
        if (std::abs(cv.value) < 1e-6) cv.order_undetermined = true;  // likely order >= 3
    }
    return cv;
}

}  // namespace tslab::lseries
