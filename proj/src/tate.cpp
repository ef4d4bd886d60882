#include <algorithm>
#include <vector>

#include "weierstrass.hpp"

namespace tslab::ec {

namespace {

unsigned val_p(const Int& n, const Int& p) {
    check_internal(n != 0, "val_p of 0");
    Int m = n;
    unsigned v = 0;
    while (mpz_divisible_p(m.get_mpz_t(), p.get_mpz_t())) {
        mpz_divexact(m.get_mpz_t(), m.get_mpz_t(), p.get_mpz_t());
        ++v;
    }
    return v;
}

// Valuation with v(0) treated as +infinity (represented by a large sentinel).
unsigned val_p0(const Int& n, const Int& p) { return n == 0 ? 10000u : val_p(n, p); }

Int mod_p(const Int& a, const Int& p) {
    Int r = a % p;
    if (r < 0) r += p;
    return r;
}

Int inv_mod(const Int& a, const Int& p) {
    Int r;
    check_internal(mpz_invert(r.get_mpz_t(), a.get_mpz_t(), p.get_mpz_t()) != 0, "inv_mod");
    return r;
}

Int pow_p(const Int& p, unsigned e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), p.get_mpz_t(), e);
    return r;
}

Int divp(const Int& a, const Int& p, unsigned e) {
    Int q, pe = pow_p(p, e);
    check_internal(mpz_divisible_p(a.get_mpz_t(), pe.get_mpz_t()), "divp: not divisible");
    mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), pe.get_mpz_t());
    return q;
}

// --- small dense polynomials over F_p (coefficients ascending) --------------

using fpoly = std::vector<Int>;

fpoly trimmed(fpoly f, const Int& p) {
    for (auto& c : f) c = mod_p(c, p);
    while (!f.empty() && f.back() == 0) f.pop_back();
    return f;
}

fpoly poly_rem(fpoly a, const fpoly& b, const Int& p) {
    a = trimmed(std::move(a), p);
    check_internal(!b.empty(), "poly_rem: zero divisor");
    Int binv = inv_mod(b.back(), p);
    while (a.size() >= b.size()) {
        Int coef = mod_p(a.back() * binv, p);
        size_t shift = a.size() - b.size();
        for (size_t i = 0; i < b.size(); ++i) a[shift + i] -= coef * b[i];
        a = trimmed(std::move(a), p);
        if (a.empty()) break;
    }
    return a;
}

fpoly poly_gcd(fpoly a, fpoly b, const Int& p) {
    a = trimmed(std::move(a), p);
    b = trimmed(std::move(b), p);
    while (!b.empty()) {
        fpoly r = poly_rem(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        Int inv = inv_mod(a.back(), p);
        for (auto& c : a) c = mod_p(c * inv, p);
    }
    return a;
}

fpoly poly_mulmod(const fpoly& a, const fpoly& b, const fpoly& m, const Int& p) {
    fpoly prod(a.size() + b.size() - 1, Int(0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) prod[i + j] += a[i] * b[j];
    return poly_rem(std::move(prod), m, p);
}

// Number of F_p roots of a separable cubic (monic, coefficients c0..c3).
int count_roots_cubic(const fpoly& f, const Int& p) {
    if (p < 50) {
        int cnt = 0;
        for (Int x = 0; x < p; ++x) {
            Int v = 0;
            for (size_t i = f.size(); i-- > 0;) v = mod_p(v * x + f[i], p);
            if (v == 0) ++cnt;
        }
        return cnt;
    }
    // deg gcd(T^p - T, f) by computing T^p mod f.
    fpoly tp{Int(0), Int(1)};  // T
    fpoly acc{Int(1)};
    Int e = p;
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) acc = poly_mulmod(acc, tp, f, p);
        tp = poly_mulmod(tp, tp, f, p);
        e >>= 1;
    }
    // acc = T^p mod f; subtract T.
    if (acc.size() < 2) acc.resize(2, Int(0));
    acc[1] -= 1;
    fpoly g = poly_gcd(f, std::move(acc), p);
    return g.empty() ? 0 : (int)g.size() - 1;
}

// Any root of a nonzero polynomial of degree <= 2 that is a perfect power
// (linear, or a double-root quadratic); p arbitrary.
Int low_degree_root(const fpoly& f, const Int& p) {
    if (p <= 3) {
        for (Int x = 0; x < p; ++x) {
            Int v = 0;
            for (size_t i = f.size(); i-- > 0;) v = mod_p(v * x + f[i], p);
            if (v == 0) return x;
        }
        throw internal_error("low_degree_root: no root found");
    }
    if (f.size() == 2) return mod_p(-f[0] * inv_mod(f[1], p), p);
    check_internal(f.size() == 3, "low_degree_root: unexpected degree");
    // (x - r)^2 up to scalar: r = -c1 / (2 c2).
    return mod_p(-f[1] * inv_mod(2 * f[2], p), p);
}

// --- quadratic helpers over F_p ---------------------------------------------

// q(Y) = q2 Y^2 + q1 Y + q0 with p not dividing q2.
bool quad_separable(const Int& q2, const Int& q1, const Int& q0, const Int& p) {
    (void)q0;
    if (p == 2) return mod_p(q1, p) == 1;
    return mod_p(q1 * q1 - 4 * q2 * q0, p) != 0;
}

bool quad_has_fp_root(const Int& q2, const Int& q1, const Int& q0, const Int& p) {
    if (p == 2) {
        for (Int y = 0; y < 2; ++y)
            if (mod_p(q2 * y * y + q1 * y + q0, p) == 0) return true;
        return false;
    }
    Int d = q1 * q1 - 4 * q2 * q0;
    if (mod_p(d, p) == 0) return true;
    return arith::kronecker(d, p) == 1;
}

// Double root of an inseparable quadratic mod p.
Int quad_double_root(const Int& q2, const Int& q1, const Int& q0, const Int& p) {
    if (p == 2) {
        for (Int y = 0; y < 2; ++y)
            if (mod_p(q2 * y * y + q1 * y + q0, p) == 0) return y;
        throw internal_error("quad_double_root: none mod 2");
    }
    return mod_p(-q1 * inv_mod(2 * q2, p), p);
}

// Lift residue to the balanced range (-p^k/2, p^k/2].
Int lift(const Int& residue, const Int& modulus) {
    Int r = mod_p(residue, modulus);
    if (2 * r > modulus) r -= modulus;
    return r;
}

curve translate(const curve& e, const Int& r, const Int& t) {
    transform tr;
    tr.r = r;
    tr.t = t;
    return apply_transform(e, tr);
}

// Singular point of the reduction mod p (requires p | disc).
void singular_point(const curve& e, const Int& p, Int& x0, Int& y0) {
    if (p == 2) {
        for (Int x = 0; x < 2; ++x)
            for (Int y = 0; y < 2; ++y) {
                bool on = mod_p(y * y + e.a1 * x * y + e.a3 * y - x * x * x - e.a2 * x * x -
                                    e.a4 * x - e.a6, p) == 0;
                bool dy = mod_p(e.a1 * x + e.a3, p) == 0;
                bool dx = mod_p(e.a1 * y + x * x + e.a4, p) == 0;
                if (on && dy && dx) {
                    x0 = x;
                    y0 = y;
                    return;
                }
            }
        throw internal_error("singular_point: none found mod 2");
    }
    if (p == 3 && mod_p(e.b2(), p) == 0) {
        // g ≡ x^3 + b6 mod 3, and cubing is the identity on F_3.
        x0 = mod_p(-e.b6(), p);
    } else {
        // Double root of g = 4x^3 + b2 x^2 + 2 b4 x + b6 mod p.
        fpoly g{e.b6(), 2 * e.b4(), e.b2(), Int(4)};
        fpoly gp{2 * e.b4(), 2 * e.b2(), Int(12)};
        fpoly common = poly_gcd(g, gp, p);
        check_internal(!common.empty() && common.size() >= 2, "singular_point: reduction not singular");
        x0 = low_degree_root(common, p);
    }
    y0 = mod_p(-(e.a1 * x0 + e.a3) * inv_mod(Int(2), p), p);
}

}  // namespace

local_data tate_local_data(const curve& e0, const Int& p) {
    if (!arith::is_prime(p)) throw std::domain_error("tate_local_data: p must be prime");
    local_data out;
    out.p = p;

    curve E = e0;
    Int delta = E.disc();
    unsigned n = val_p0(delta, p);
    out.v_delta_min = (int)n;
    if (n == 0) {
        out.kodaira = {kodaira_kind::In, 0};
        out.f = 0;
        out.c = 1;
        return out;
    }

    // Reject models that Laska-Kraus-Connell could shrink at p.
    if (n >= 12 && val_p0(E.c4(), p) >= 4 && val_p0(E.c6(), p) >= 6) {
        Int c4r = E.c4() == 0 ? Int(0) : divp(E.c4(), p, 4);
        Int c6r = E.c6() == 0 ? Int(0) : divp(E.c6(), p, 6);
        bool shrinks = true;
        if (p == 2 || p == 3) {
            // Reuse the Kraus test through a scratch minimal computation.
            curve big = make_curve(0, 0, 0, -27 * E.c4(), -54 * E.c6());
            shrinks = val_p0(minimal_model(big).model.disc(), p) < n;
        }
        if (shrinks) throw std::domain_error("tate_local_data: model is not minimal at p");
    }

    if (val_p0(E.c4(), p) == 0) {
        // Multiplicative reduction: type I_n, f = 1.
        out.kodaira = {kodaira_kind::In, (i64)n};
        out.f = 1;
        bool split;
        if (p == 2) {
            Int x0, y0;
            singular_point(E, p, x0, y0);
            curve Et = translate(E, lift(x0, p), lift(y0, p));
            // Tangent cone t^2 + a1 t - a2 at the node; a1 is odd here.
            split = mod_p(Et.a2, p) == 0;
        } else {
            split = arith::kronecker(-E.c6(), p) == 1;
        }
        out.split_multiplicative = split;
        out.c = split ? (i64)n : (n % 2 == 0 ? 2 : 1);
        return out;
    }

    // Additive reduction. Move the singular point to the origin.
    {
        Int x0, y0;
        singular_point(E, p, x0, y0);
        E = translate(E, lift(x0, p), lift(y0, p));
    }
    check_internal(val_p0(E.a3, p) >= 1 && val_p0(E.a4, p) >= 1 && val_p0(E.a6, p) >= 1,
                   "tate: origin translation failed");

    if (val_p0(E.a6, p) < 2) {  // Type II
        out.kodaira = {kodaira_kind::II, 0};
        out.f = (int)n;
        out.c = 1;
        return out;
    }
    if (val_p0(E.b8(), p) < 3) {  // Type III
        out.kodaira = {kodaira_kind::III, 0};
        out.f = (int)n - 1;
        out.c = 2;
        return out;
    }
    if (val_p0(E.b6(), p) < 3) {  // Type IV
        out.kodaira = {kodaira_kind::IV, 0};
        out.f = (int)n - 2;
        out.c = quad_has_fp_root(Int(1), divp(E.a3, p, 1), -divp(E.a6, p, 2), p) ? 3 : 1;
        return out;
    }

    // Normalize so that p | a1, a2, p^2 | a3, a4, p^3 | a6.
    if (p == 2 || p == 3) {
        bool done = false;
        Int p2 = p * p, p3 = p2 * p;
        for (Int s = 0; s < p && !done; ++s)
            for (Int t = 0; t < p2 && !done; ++t) {
                transform tr;
                tr.s = s;
                tr.t = t;
                curve cand = apply_transform(E, tr);
                if (mod_p(cand.a1, p) == 0 && mod_p(cand.a2, p) == 0 &&
                    mod_p(cand.a3, p2) == 0 && mod_p(cand.a4, p2) == 0 &&
                    mod_p(cand.a6, p3) == 0) {
                    E = cand;
                    done = true;
                }
            }
        check_internal(done, "tate: step-6 normalization failed");
    } else {
        Int inv2 = inv_mod(Int(2), p);
        Int s = lift(-E.a1 * inv2, p);
        {
            transform tr;
            tr.s = s;
            E = apply_transform(E, tr);
        }
        Int p2 = p * p;
        Int t = lift(-E.a3 * inv_mod(Int(2), p2), p2);
        E = translate(E, 0, t);
        check_internal(val_p0(E.a1, p) >= 1 && val_p0(E.a2, p) >= 1 && val_p0(E.a3, p) >= 2 &&
                           val_p0(E.a4, p) >= 2 && val_p0(E.a6, p) >= 3,
                       "tate: step-6 valuations");
    }

    // Distinguished cubic P(T) = T^3 + (a2/p) T^2 + (a4/p^2) T + a6/p^3 mod p.
    fpoly P{divp(E.a6, p, 3), divp(E.a4, p, 2), divp(E.a2, p, 1), Int(1)};
    fpoly Pp{P[1], 2 * P[2], Int(3)};
    fpoly common = poly_gcd(P, Pp, p);
    // For p = 3 a vanishing derivative with separable P is impossible here
    // (the cubic would have distinct roots only if gcd is 1).

    if (common.size() <= 1) {  // Type I0*
        out.kodaira = {kodaira_kind::Instar, 0};
        out.f = (int)n - 4;
        out.c = 1 + count_roots_cubic(trimmed(P, p), p);
        return out;
    }

    Int root = low_degree_root(common, p);
    // Multiplicity: triple iff P ≡ (T - root)^3.
    bool triple;
    {
        // Compare coefficients of (T - root)^3 with P mod p.
        Int r = mod_p(root, p);
        triple = mod_p(P[2] + 3 * r, p) == 0 && mod_p(P[1] - 3 * r * r, p) == 0 &&
                 mod_p(P[0] + r * r * r, p) == 0;
    }

    if (!triple) {
        // Type I_m*: shift the double root to T = 0 and run the loop.
        E = translate(E, lift(root, p) * p, 0);
        check_internal(val_p0(E.a2, p) == 1 && val_p0(E.a4, p) >= 3 && val_p0(E.a6, p) >= 4,
                       "tate: In* entry valuations");
        i64 m = 1;
        Int a2p = divp(E.a2, p, 1);
        while (true) {
            unsigned k = (unsigned)((m + 1) / 2);
            if (m % 2 == 1) {
                // Quadratic Y^2 + (a3/p^{k+1}) Y - a6/p^{2k+2}.
                Int q1 = divp(E.a3, p, k + 1), q0 = -divp(E.a6, p, 2 * k + 2);
                if (quad_separable(Int(1), q1, q0, p)) {
                    out.c = quad_has_fp_root(Int(1), q1, q0, p) ? 4 : 2;
                    break;
                }
                Int y0 = quad_double_root(Int(1), q1, q0, p);
                E = translate(E, 0, lift(y0, p) * pow_p(p, k + 1));
            } else {
                // Quadratic (a2/p) X^2 + (a4/p^{k+2}) X + a6/p^{2k+3}.
                Int q2 = a2p, q1 = divp(E.a4, p, k + 2), q0 = divp(E.a6, p, 2 * k + 3);
                if (quad_separable(q2, q1, q0, p)) {
                    out.c = quad_has_fp_root(q2, q1, q0, p) ? 4 : 2;
                    break;
                }
                Int x0 = quad_double_root(q2, q1, q0, p);
                E = translate(E, lift(x0, p) * pow_p(p, k + 1), 0);
            }
            ++m;
            check_internal(m < (i64)n, "tate: In* loop failed to terminate");
        }
        out.kodaira = {kodaira_kind::Instar, m};
        out.f = (int)n - 4 - (int)m;
        return out;
    }

    // Triple root: shift it to T = 0.
    E = translate(E, lift(root, p) * p, 0);
    check_internal(val_p0(E.a2, p) >= 2 && val_p0(E.a4, p) >= 3 && val_p0(E.a6, p) >= 4,
                   "tate: triple-root valuations");

    {  // Type IV* test: Y^2 + (a3/p^2) Y - a6/p^4.
        Int q1 = divp(E.a3, p, 2), q0 = -divp(E.a6, p, 4);
        if (quad_separable(Int(1), q1, q0, p)) {
            out.kodaira = {kodaira_kind::IVstar, 0};
            out.f = (int)n - 6;
            out.c = quad_has_fp_root(Int(1), q1, q0, p) ? 3 : 1;
            return out;
        }
        Int y0 = quad_double_root(Int(1), q1, q0, p);
        E = translate(E, 0, lift(y0, p) * p * p);
    }
    if (val_p0(E.a4, p) < 4) {  // Type III*
        out.kodaira = {kodaira_kind::IIIstar, 0};
        out.f = (int)n - 7;
        out.c = 2;
        return out;
    }
    if (val_p0(E.a6, p) < 6) {  // Type II*
        out.kodaira = {kodaira_kind::IIstar, 0};
        out.f = (int)n - 8;
        out.c = 1;
        return out;
    }
    throw internal_error("tate: reached the non-minimal tail on a minimal model");
}

}  // namespace tslab::ec
