#include "weierstrass.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <sstream>

namespace tslab::ec {

Int curve::disc() const {
    Int B2 = b2(), B4 = b4(), B6 = b6(), B8 = b8();
    return -B2 * B2 * B8 - 8 * B4 * B4 * B4 - 27 * B6 * B6 + 9 * B2 * B4 * B6;
}

std::string curve::str() const {
    auto term = [](const Int& coeff, const std::string& mono, bool lead) {
        if (coeff == 0) return std::string();
        std::string s;
        Int a = abs(coeff);
        if (coeff < 0)
            s += lead ? "-" : " - ";
        else if (!lead)
            s += " + ";
        if (a != 1 || mono.empty()) s += a.get_str();
        if (a != 1 && !mono.empty()) s += "*";
        s += mono;
        return s;
    };
    std::string lhs = "y^2";
    lhs += term(a1, "x*y", false);
    lhs += term(a3, "y", false);
    std::string rhs = "x^3";
    rhs += term(a2, "x^2", false);
    rhs += term(a4, "x", false);
    rhs += term(a6, "", false);
    return lhs + " = " + rhs;
}

std::string curve::coeff_list() const {
    return a1.get_str() + "," + a2.get_str() + "," + a3.get_str() + "," + a4.get_str() + "," +
           a6.get_str();
}

curve make_curve(const Int& a1, const Int& a2, const Int& a3, const Int& a4, const Int& a6) {
    curve e{a1, a2, a3, a4, a6};
    if (e.disc() == 0) throw std::domain_error("curve is singular (discriminant 0)");
    check_internal(4 * e.b8() == e.b2() * e.b6() - e.b4() * e.b4(), "curve: b8 identity");
    check_internal(1728 * e.disc() == e.c4() * e.c4() * e.c4() - e.c6() * e.c6(),
                   "curve: c4/c6 identity");
    return e;
}

curve parse_curve(const std::string& text) {
    std::vector<Int> vals;
    std::string tok;
    std::istringstream in(text);
    while (std::getline(in, tok, ',')) {
        // Trim blanks.
        size_t b = tok.find_first_not_of(" \t");
        size_t e = tok.find_last_not_of(" \t");
        if (b == std::string::npos) throw std::domain_error("curve: empty coefficient");
        tok = tok.substr(b, e - b + 1);
        try {
            vals.emplace_back(tok);
        } catch (const std::invalid_argument&) {
            throw std::domain_error("curve: bad integer '" + tok + "'");
        }
    }
    if (vals.size() != 5) throw std::domain_error("curve: expected 5 coefficients a1,a2,a3,a4,a6");
    return make_curve(vals[0], vals[1], vals[2], vals[3], vals[4]);
}

namespace {

Int exact_div(const Int& num, const Int& den, const char* what) {
    check_internal(den != 0 && mpz_divisible_p(num.get_mpz_t(), den.get_mpz_t()), what);
    Int q;
    mpz_divexact(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    return q;
}

}  // namespace

curve apply_transform(const curve& e, const transform& tr) {
    const Int &u = tr.u, &r = tr.r, &s = tr.s, &t = tr.t;
    Int u2 = u * u, u3 = u2 * u, u4 = u2 * u2, u6 = u3 * u3;
    Int a1 = exact_div(e.a1 + 2 * s, u, "transform: a1");
    Int a2 = exact_div(e.a2 - s * e.a1 + 3 * r - s * s, u2, "transform: a2");
    Int a3 = exact_div(e.a3 + r * e.a1 + 2 * t, u3, "transform: a3");
    Int a4 = exact_div(e.a4 - s * e.a3 + 2 * r * e.a2 - (t + r * s) * e.a1 + 3 * r * r - 2 * s * t,
                       u4, "transform: a4");
    Int a6 = exact_div(e.a6 + r * e.a4 + r * r * e.a2 + r * r * r - t * e.a3 - t * t - r * t * e.a1,
                       u6, "transform: a6");
    return make_curve(a1, a2, a3, a4, a6);
}

namespace {

Int mod_pos(const Int& a, long m) {
    Int r = a % m;
    if (r < 0) r += m;
    return r;
}

// Kraus conditions: (c4, c6) are the invariants of some integral model.
bool valid_invariants(const Int& c4, const Int& c6) {
    Int delta_scaled = c4 * c4 * c4 - c6 * c6;
    if (delta_scaled == 0) return false;
    if (!mpz_divisible_ui_p(delta_scaled.get_mpz_t(), 1728)) return false;
    Int r27 = mod_pos(c6, 27);
    if (r27 == 9 || r27 == 18) return false;
    if (mod_pos(c6, 4) == 3) return true;
    if (!mpz_divisible_ui_p(c4.get_mpz_t(), 16)) return false;
    Int r32 = mod_pos(c6, 32);
    return r32 == 0 || r32 == 8;
}

// The standard reduced model with invariants (c4, c6); requires validity.
curve curve_from_invariants(const Int& c4, const Int& c6) {
    check_internal(valid_invariants(c4, c6), "curve_from_invariants: invalid pair");
    // b2 is determined mod 12; the representative in [-5, 6] is ≡ 0,1 mod 4.
    Int b2 = mod_pos(-c6, 12);
    if (b2 > 6) b2 -= 12;
    Int b4 = exact_div(b2 * b2 - c4, Int(24), "from_invariants: b4");
    Int b6 = exact_div(-b2 * b2 * b2 + 36 * b2 * b4 - c6, Int(216), "from_invariants: b6");
    Int a1 = mod_pos(b2, 2);
    Int a2 = exact_div(b2 - a1, Int(4), "from_invariants: a2");
    Int a3 = mod_pos(b6, 2);
    Int a4 = exact_div(b4 - a1 * a3, Int(2), "from_invariants: a4");
    Int a6 = exact_div(b6 - a3, Int(4), "from_invariants: a6");
    curve e = make_curve(a1, a2, a3, a4, a6);
    check_internal(e.c4() == c4 && e.c6() == c6, "from_invariants: roundtrip");
    return e;
}

unsigned valuation(const Int& n, const Int& p) {
    check_internal(n != 0, "valuation of 0");
    Int m = n;
    unsigned v = 0;
    while (mpz_divisible_p(m.get_mpz_t(), p.get_mpz_t())) {
        mpz_divexact(m.get_mpz_t(), m.get_mpz_t(), p.get_mpz_t());
        ++v;
    }
    return v;
}

Int pow_int(const Int& p, unsigned e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), p.get_mpz_t(), e);
    return r;
}

}  // namespace

minimal_result minimal_model(const curve& e) {
    Int c4 = e.c4(), c6 = e.c6(), delta = e.disc();

    Int u = 1;
    arith::factorization df = arith::factorize(delta);
    for (const auto& pp : df.factors) {
        if (pp.exponent < 12) continue;
        const Int& p = pp.prime;
        unsigned k = pp.exponent / 12;
        if (c4 != 0) k = std::min(k, valuation(c4, p) / 4);
        if (c6 != 0) k = std::min(k, valuation(c6, p) / 6);
        if (p == 2 || p == 3) {
            while (k > 0 && !valid_invariants(c4 / pow_int(p, 4 * k), c6 / pow_int(p, 6 * k))) --k;
        }
        if (k > 0) u *= pow_int(p, k);
    }

    Int u4 = u * u * u * u, u6 = u4 * u * u;
    curve m = curve_from_invariants(exact_div(c4, u4, "minimal: c4"),
                                    exact_div(c6, u6, "minimal: c6"));
    transform tr;
    tr.u = u;
    tr.s = exact_div(u * m.a1 - e.a1, Int(2), "minimal: s");
    tr.r = exact_div(u * u * m.a2 - e.a2 + tr.s * e.a1 + tr.s * tr.s, Int(3), "minimal: r");
    tr.t = exact_div(u * u * u * m.a3 - e.a3 - tr.r * e.a1, Int(2), "minimal: t");
    check_internal(apply_transform(e, tr) == m, "minimal: transform mismatch");
    return {m, tr};
}

bool is_globally_minimal(const curve& e) { return minimal_model(e).model == e; }

std::vector<local_data> all_local_data(const curve& e) {
    check_internal(is_globally_minimal(e), "all_local_data: model not minimal");
    std::vector<local_data> out;
    arith::factorization df = arith::factorize(e.disc());
    for (const auto& pp : df.factors) out.push_back(tate_local_data(e, pp.prime));
    return out;
}

Int conductor(const std::vector<local_data>& v) {
    Int n = 1;
    for (const auto& ld : v) n *= pow_int(ld.p, (unsigned)ld.f);
    return n;
}

Int tamagawa_product(const std::vector<local_data>& v) {
    Int c = 1;
    for (const auto& ld : v) c *= ld.c;
    return c;
}

std::string kodaira_type::str() const {
    switch (kind) {
        case kodaira_kind::In: return "I" + std::to_string(n);
        case kodaira_kind::II: return "II";
        case kodaira_kind::III: return "III";
        case kodaira_kind::IV: return "IV";
        case kodaira_kind::Instar: return "I" + std::to_string(n) + "*";
        case kodaira_kind::IVstar: return "IV*";
        case kodaira_kind::IIIstar: return "III*";
        case kodaira_kind::IIstar: return "II*";
    }
    return "?";
}

// ---------------------------------------------------------------------------
// Integer roots of monic cubics (used for 2-torsion and Lutz-Nagell search).

namespace {

// Approximate real roots of x^3 + a x^2 + b x + c; the complex pair, when
// present, is reported through alpha/beta.
struct cubic_roots {
    std::vector<double> real;
    bool has_complex = false;
    double alpha = 0, beta = 0;
};

cubic_roots solve_cubic(double a, double b, double c) {
    cubic_roots out;
    double p = b - a * a / 3.0;
    double q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c;
    double shift = -a / 3.0;
    double disc = -4.0 * p * p * p - 27.0 * q * q;
    auto polish = [&](double x) {
        for (int i = 0; i < 60; ++i) {
            double f = ((x + a) * x + b) * x + c;
            double fp = (3.0 * x + 2.0 * a) * x + b;
            if (fp == 0) break;
            double nx = x - f / fp;
            if (nx == x) break;
            x = nx;
        }
        return x;
    };
    if (disc > 0) {
        double m = 2.0 * std::sqrt(-p / 3.0);
        double arg = 3.0 * q / (p * m);
        arg = std::clamp(arg, -1.0, 1.0);
        double theta = std::acos(arg) / 3.0;
        for (int k = 0; k < 3; ++k)
            out.real.push_back(polish(m * std::cos(theta - 2.0 * M_PI * k / 3.0) + shift));
        std::sort(out.real.begin(), out.real.end());
    } else {
        double t;
        if (p == 0) {
            t = std::cbrt(-q);
        } else {
            double u = std::sqrt(q * q / 4.0 + p * p * p / 27.0);
            t = std::cbrt(-q / 2.0 + u) + std::cbrt(-q / 2.0 - u);
        }
        double r = polish(t + shift);
        out.real.push_back(r);
        out.has_complex = true;
        // Deflate: x^2 + (a + r) x + (b + r(a + r)).
        double qa = a + r, qb = b + r * qa;
        out.alpha = -qa / 2.0;
        double rad = qb - qa * qa / 4.0;
        out.beta = std::sqrt(std::max(rad, 0.0));
    }
    return out;
}

Int poly_eval_cubic(const Int& c2, const Int& c1, const Int& c0, const Int& x) {
    return ((x + c2) * x + c1) * x + c0;
}

}  // namespace

std::vector<Int> integer_roots_monic_cubic(const Int& c2, const Int& c1, const Int& c0);

std::vector<Int> integer_roots_monic_cubic(const Int& c2, const Int& c1, const Int& c0) {
    std::vector<Int> roots;
    if (c0 == 0) {
        roots.push_back(0);
        // Remaining quadratic x^2 + c2 x + c1.
        Int d = c2 * c2 - 4 * c1;
        if (d >= 0) {
            Int s;
            mpz_sqrt(s.get_mpz_t(), d.get_mpz_t());
            if (s * s == d) {
                Int r1 = (-c2 + s), r2 = (-c2 - s);
                if (mpz_even_p(r1.get_mpz_t())) roots.push_back(r1 / 2);
                if (s != 0 && mpz_even_p(r2.get_mpz_t())) roots.push_back(r2 / 2);
            }
        }
    } else {
        cubic_roots approx = solve_cubic(c2.get_d(), c1.get_d(), c0.get_d());
        for (double r : approx.real) {
            if (!std::isfinite(r)) continue;
            Int x0(std::round(r));
            // Newton polish in exact arithmetic, then scan a small window.
            for (int i = 0; i < 8; ++i) {
                Int f = poly_eval_cubic(c2, c1, c0, x0);
                Int fp = (3 * x0 + 2 * c2) * x0 + c1;
                if (f == 0 || fp == 0) break;
                Int step;
                // Round-to-nearest division.
                Int num = f, den = fp;
                if (den < 0) { den = -den; num = -num; }
                Int q, rmd;
                mpz_fdiv_qr(q.get_mpz_t(), rmd.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
                if (2 * rmd >= den) q += 1;
                step = q;
                if (step == 0) break;
                x0 -= step;
            }
            for (Int dx = -2; dx <= 2; ++dx) {
                Int cand = x0 + dx;
                if (poly_eval_cubic(c2, c1, c0, cand) == 0) roots.push_back(cand);
            }
        }
    }
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    return roots;
}

bool has_full_rational_two_torsion(const curve& e) {
    // Roots of the doubled model X^3 + b2 X^2 + 8 b4 X + 16 b6, X = 4x.
    auto roots = integer_roots_monic_cubic(e.b2(), 8 * e.b4(), 16 * e.b6());
    return roots.size() == 3;
}

// ---------------------------------------------------------------------------
// Torsion.

namespace {

// Point on y^2 = x^3 + A x + B over Q; infinity encoded by `inf`.
struct qpoint {
    bool inf = true;
    mpq_class x, y;
};

qpoint add_points(const qpoint& P, const qpoint& Q, const Int& A) {
    if (P.inf) return Q;
    if (Q.inf) return P;
    if (P.x == Q.x) {
        if (P.y == -Q.y) return {};
        // Doubling.
        mpq_class lam = (3 * P.x * P.x + A) / (2 * P.y);
        mpq_class x3 = lam * lam - 2 * P.x;
        mpq_class y3 = lam * (P.x - x3) - P.y;
        return {false, x3, y3};
    }
    mpq_class lam = (Q.y - P.y) / (Q.x - P.x);
    mpq_class x3 = lam * lam - P.x - Q.x;
    mpq_class y3 = lam * (P.x - x3) - P.y;
    return {false, x3, y3};
}

// Order if <= cap, else 0.
int point_order(const qpoint& P, const Int& A, int cap) {
    qpoint acc = P;
    for (int n = 1; n <= cap; ++n) {
        if (acc.inf) return n;
        acc = add_points(acc, P, A);
    }
    return 0;
}

}  // namespace

torsion_group torsion_subgroup(const curve& e) {
    // Work on the scaled short model y^2 = x^3 + A x + B (u = 6 twist of e).
    Int A = -27 * e.c4(), B = -54 * e.c6();

    // Strong Lutz-Nagell: torsion has integral (x, y) with y = 0 or
    // y^2 | 4A^3 + 27B^2.
    Int bound = 4 * A * A * A + 27 * B * B;
    check_internal(bound != 0, "torsion: singular short model");
    arith::factorization bf = arith::factorize(bound);

    std::vector<Int> ys{0};
    {
        std::vector<Int> acc{1};
        for (const auto& pp : bf.factors) {
            unsigned half = pp.exponent / 2;
            std::vector<Int> next;
            for (const auto& base : acc) {
                Int pe = 1;
                for (unsigned k = 0; k <= half; ++k) {
                    next.push_back(base * pe);
                    pe *= pp.prime;
                }
            }
            acc = std::move(next);
            check_internal(acc.size() < (1u << 22), "torsion: divisor explosion");
        }
        for (auto& v : acc) ys.push_back(v);
    }

    std::vector<qpoint> torsion;
    for (const auto& y : ys) {
        for (const auto& x : integer_roots_monic_cubic(Int(0), A, B - y * y)) {
            qpoint P{false, mpq_class(x), mpq_class(y)};
            int ord = point_order(P, A, 12);
            if (ord == 0 || ord == 11) continue;  // not torsion over Q
            torsion.push_back(P);
            if (y != 0) torsion.push_back({false, mpq_class(x), mpq_class(-y)});
        }
    }

    torsion_group g;
    g.order = (i64)torsion.size() + 1;
    if (g.order == 1) return g;
    i64 exponent = 1;
    for (const auto& P : torsion) exponent = std::max<i64>(exponent, point_order(P, A, 12));
    i64 d1 = g.order / exponent;
    check_internal(d1 * exponent == g.order && (d1 == 1 || d1 == 2) && exponent % d1 == 0,
                   "torsion: inconsistent group structure");
    if (d1 == 2) g.divisors = {2, exponent};
    else g.divisors = {exponent};
    return g;
}

// ---------------------------------------------------------------------------
// Real periods via the arithmetic-geometric mean.

namespace {

double agm(double a, double b) {
    for (int i = 0; i < 80 && std::abs(a - b) > 1e-17 * (std::abs(a) + std::abs(b)); ++i) {
        double an = 0.5 * (a + b);
        b = std::sqrt(a * b);
        a = an;
    }
    return 0.5 * (a + b);
}

}  // namespace

period_data real_period(const curve& e, double target) {
    if (!(target >= 1e-15)) throw std::domain_error("real_period: precision target below double resolution");

    // Roots of the monic cubic x^3 + (b2/4) x^2 + (b4/2) x + b6/4, i.e. of
    // (2y + a1 x + a3)^2 / 4 as a polynomial in x.
    double q2 = e.b2().get_d() / 4.0;
    double q1 = e.b4().get_d() / 2.0;
    double q0 = e.b6().get_d() / 4.0;
    cubic_roots roots = solve_cubic(q2, q1, q0);

    period_data out;
    if (!roots.has_complex) {
        check_internal(roots.real.size() == 3, "real_period: expected three real roots");
        double e1 = roots.real[0], e2 = roots.real[1], e3 = roots.real[2];
        out.real_components = 2;
        out.omega_plus = M_PI / agm(std::sqrt(e3 - e1), std::sqrt(e2 - e1));
        out.omega_minus = M_PI / agm(std::sqrt(e3 - e1), std::sqrt(e3 - e2));
    } else {
        double e1 = roots.real[0], alpha = roots.alpha, beta = roots.beta;
        double dist = std::hypot(e1 - alpha, beta);
        out.real_components = 1;
        out.omega_plus = 2.0 * M_PI / agm(2.0 * std::sqrt(dist), std::sqrt(2.0 * dist + 2.0 * (e1 - alpha)));
        out.omega_minus = M_PI / agm(2.0 * std::sqrt(dist), std::sqrt(std::max(2.0 * dist - 2.0 * (e1 - alpha), 0.0)));
    }
    out.precision = std::max(1e-13 * std::abs(out.omega_plus), 4 * DBL_EPSILON);
    if (out.precision > target) throw std::domain_error("real_period: target finer than attainable");
    return out;
}

curve quadratic_twist_minimal(const curve& e, i64 d) {
    if (d == 0) throw std::domain_error("quadratic_twist: d must be nonzero");
    Int D((long)d);
    Int A = -27 * e.c4() * D * D;
    Int B = -54 * e.c6() * D * D * D;
    curve big = make_curve(0, 0, 0, A, B);
    return minimal_model(big).model;
}

}  // namespace tslab::ec
