#include "quadform.hpp"

#include <algorithm>
#include <map>

namespace tslab::qf {

i64 form::disc() const {
    i128 d = (i128)b * b - 4 * (i128)a * c;
    return (i64)d;
}

namespace {

i64 cast_down(i128 v, const char* what) {
    check_internal(v <= INT64_MAX && v >= INT64_MIN, what);
    return (i64)v;
}

// Normalize b into (-a, a] and recompute c from the discriminant.
// Arguments wide so composition can pass unreduced b values.
form normalized(i128 a, i128 b, i64 d) {
    check_internal(a > 0, "normalized: a <= 0");
    i128 a2 = 2 * a;
    i128 r = b % a2;
    if (r < 0) r += a2;
    if (r > a) r -= a2;
    i128 c = (r * r - d) / (4 * a);
    check_internal((r * r - d) % (4 * a) == 0, "normalized: discriminant mismatch");
    form f;
    f.a = cast_down(a, "normalized: a overflow");
    f.b = cast_down(r, "normalized: b overflow");
    f.c = cast_down(c, "normalized: c overflow");
    return f;
}

form reduce_normalized(form f, i64 d) {
    while (f.a > f.c) {
        // rho step: (a, b, c) -> (c, -b, a), then renormalize.
        f = normalized(f.c, -(i128)f.b, d);
    }
    if (f.a == f.c && f.b < 0) f.b = -f.b;
    return f;
}

}  // namespace

form make_form(i64 a, i64 b, i64 c) {
    form f{a, b, c};
    i128 d = (i128)b * b - 4 * (i128)a * c;
    if (d >= 0) throw std::domain_error("form: discriminant must be negative");
    if (a <= 0) throw std::domain_error("form: not positive definite");
    if (-d > kMaxAbsDisc) throw std::domain_error("form: |disc| exceeds supported bound");
    return f;
}

form principal_form(i64 d) {
    if (d >= 0 || -d > kMaxAbsDisc) throw std::domain_error("principal_form: bad discriminant");
    i64 r = ((d % 4) + 4) % 4;
    if (r == 1) return form{1, 1, (1 - d) / 4};
    if (r == 0) return form{1, 0, -d / 4};
    throw std::domain_error("principal_form: d must be 0 or 1 mod 4");
}

bool is_reduced(const form& f) {
    if (std::llabs(f.b) > f.a || f.a > f.c) return false;
    if ((std::llabs(f.b) == f.a || f.a == f.c) && f.b < 0) return false;
    return true;
}

form reduce(form f) {
    (void)make_form(f.a, f.b, f.c);
    return reduce_normalized(normalized(f.a, f.b, f.disc()), f.disc());
}

form opposite(const form& f) { return reduce_normalized(normalized(f.a, -(i128)f.b, f.disc()), f.disc()); }

form compose(const form& f, const form& g) {
    i64 d = f.disc();
    if (d != g.disc()) throw std::domain_error("compose: discriminants differ");
    if (!is_reduced(f) || !is_reduced(g)) throw std::domain_error("compose: inputs must be reduced");

    // Classical composition: with s = (b1+b2)/2, g0 = gcd(a1,a2),
    // dd = gcd(g0, s) = v1*g0 + w*s, the composite has
    // a3 = a1*a2/dd^2 and b3 = b2 + 2*(a2/dd)*(v0*v1*(s-b2) - w*c2).
    i64 s = cast_down(((i128)f.b + g.b) / 2, "compose: s");
    i64 u0, v0;
    i64 g0 = arith::xgcd_i64(f.a, g.a, u0, v0);
    i64 v1, w;
    i64 dd = arith::xgcd_i64(g0, s, v1, w);
    i128 v = (i128)v0 * v1;
    i128 a2d = g.a / dd;
    i128 a3 = (i128)f.a / dd * a2d;
    i128 t = (((i128)s - g.b) * v - (i128)w * g.c) * a2d * 2;
    i128 b3 = g.b + t;
    return reduce_normalized(normalized(a3, b3, d), d);
}

form power(const form& f, i64 e) {
    check_internal(e >= 0, "power: negative exponent");
    form acc = principal_form(f.disc());
    form base = reduce(f);
    while (e) {
        if (e & 1) acc = compose(acc, base);
        base = compose(base, base);
        e >>= 1;
    }
    return acc;
}

std::vector<form> reduced_forms(i64 d) {
    if (d >= 0) throw std::domain_error("reduced_forms: d must be negative");
    if (-d > kMaxAbsDisc) throw std::domain_error("reduced_forms: |d| exceeds supported bound");
    i64 r = ((d % 4) + 4) % 4;
    if (r != 0 && r != 1) throw std::domain_error("reduced_forms: d must be 0 or 1 mod 4");

    std::vector<form> out;
    for (i64 a = 1; 3 * a * a <= -d; ++a) {
        i64 foura = 4 * a;
        // b runs over (-a, a] with b ≡ d (mod 2).
        i64 b0 = -a + 1;
        if (((b0 - d) & 1) != 0) ++b0;
        for (i64 b = b0; b <= a; b += 2) {
            i64 num = b * b - d;
            if (num % foura) continue;
            i64 c = num / foura;
            if (c < a) continue;
            if (c == a && b < 0) continue;
            out.push_back(form{a, b, c});
        }
    }
    return out;
}

namespace {

i64 ipow(i64 base, unsigned e) {
    i64 r = 1;
    while (e--) r *= base;
    return r;
}

// Order of f as a power of q, given f lies in the q-Sylow subgroup.
unsigned q_order_exp(const form& f, i64 q, unsigned emax, const form& id) {
    form x = f;
    for (unsigned j = 0; j <= emax; ++j) {
        if (x == id) return j;
        x = power(x, q);
    }
    throw internal_error("q_order_exp: element order exceeds Sylow exponent");
}

}  // namespace

class_group class_group_structure(i64 d) {
    if (d >= 0) throw std::domain_error("class_group_structure: only imaginary fields (d < 0)");
    if (!arith::is_fundamental_discriminant(d))
        throw std::domain_error("class_group_structure: d is not fundamental");
    if (-d > kMaxAbsDisc) throw std::domain_error("class_group_structure: |d| exceeds supported bound");

    class_group g;
    g.d = d;
    std::vector<form> forms = reduced_forms(d);
    g.h = (i64)forms.size();
    if (g.h == 1) return g;

    const form id = principal_form(d);
    arith::factorization hf = arith::factorize(arith::Int((long)g.h));

    // Per-prime Sylow data: descending partition and matching basis forms.
    struct sylow_data {
        i64 q;
        std::vector<unsigned> partition;
        std::vector<form> basis;
    };
    std::vector<sylow_data> sylows;

    for (const auto& pp : hf.factors) {
        i64 q = pp.prime.get_si();
        unsigned e = pp.exponent;
        i64 cof = g.h / ipow(q, e);

        std::vector<form> sylow;
        sylow.reserve(forms.size());
        for (const auto& f : forms) sylow.push_back(power(f, cof));
        std::sort(sylow.begin(), sylow.end());
        sylow.erase(std::unique(sylow.begin(), sylow.end()), sylow.end());
        check_internal((i64)sylow.size() == ipow(q, e), "class_group: Sylow size mismatch");

        // counts[k] = #Sylow[q^k]; log_q differences give the conjugate
        // partition, from which the cyclic decomposition follows.
        std::vector<unsigned> logcount(e + 1, 0);
        for (unsigned k = 0; k <= e; ++k) {
            i64 qk = ipow(q, k);
            i64 cnt = 0;
            for (const auto& x : sylow)
                if (power(x, qk) == id) ++cnt;
            unsigned lg = 0;
            i64 t = cnt;
            while (t > 1) {
                check_internal(t % q == 0, "class_group: torsion count not a q-power");
                t /= q;
                ++lg;
            }
            logcount[k] = lg;
        }
        std::vector<unsigned> parts_ge(e + 2, 0);
        for (unsigned k = 1; k <= e; ++k) parts_ge[k] = logcount[k] - logcount[k - 1];
        std::vector<unsigned> partition;  // descending
        for (unsigned k = e; k >= 1; --k)
            for (unsigned i = 0; i < parts_ge[k] - parts_ge[k + 1]; ++i) partition.push_back(k);
        std::sort(partition.rbegin(), partition.rend());

        // Greedy basis: each new generator's cyclic group must meet the
        // span so far trivially, which makes sizes multiply.
        std::vector<form> span{id};
        std::vector<form> basis;
        for (unsigned lam : partition) {
            bool found = false;
            for (const auto& cand : sylow) {
                if (q_order_exp(cand, q, e, id) != lam) continue;
                std::vector<form> cyc;
                form x = cand;
                while (x != id) {
                    cyc.push_back(x);
                    x = compose(x, cand);
                }
                bool indep = true;
                for (const auto& y : cyc)
                    if (std::binary_search(span.begin(), span.end(), y)) {
                        indep = false;
                        break;
                    }
                if (!indep) continue;
                basis.push_back(cand);
                std::vector<form> bigger;
                bigger.reserve(span.size() * (cyc.size() + 1));
                for (const auto& s : span) {
                    bigger.push_back(s);
                    for (const auto& y : cyc) bigger.push_back(compose(s, y));
                }
                std::sort(bigger.begin(), bigger.end());
                check_internal(bigger.size() == span.size() * (cyc.size() + 1),
                               "class_group: span growth mismatch");
                span = std::move(bigger);
                found = true;
                break;
            }
            check_internal(found, "class_group: no independent generator found");
        }
        sylows.push_back({q, partition, basis});
    }

    // CRT-combine aligned Sylow cyclic factors, largest with largest.
    size_t slots = 0;
    for (const auto& s : sylows) slots = std::max(slots, s.partition.size());
    std::vector<i64> divisors(slots, 1);
    std::vector<form> gens(slots, id);
    for (const auto& s : sylows) {
        for (size_t i = 0; i < s.partition.size(); ++i) {
            divisors[i] *= ipow(s.q, s.partition[i]);
            gens[i] = compose(gens[i], s.basis[i]);
        }
    }
    // Slot 0 holds the largest factor; expose the chain ascending.
    std::reverse(divisors.begin(), divisors.end());
    std::reverse(gens.begin(), gens.end());
    g.elementary_divisors = std::move(divisors);
    g.generators = std::move(gens);

    i64 prod = 1;
    for (size_t i = 0; i < g.elementary_divisors.size(); ++i) {
        i64 di = g.elementary_divisors[i];
        prod *= di;
        if (i + 1 < g.elementary_divisors.size())
            check_internal(g.elementary_divisors[i + 1] % di == 0, "class_group: divisor chain broken");
        check_internal(power(g.generators[i], di) == id, "class_group: generator order too large");
        if (di > 1) {
            // Order is exactly di: fails for every maximal proper divisor.
            arith::factorization df = arith::factorize(arith::Int((long)di));
            for (const auto& pq : df.factors)
                check_internal(power(g.generators[i], di / pq.prime.get_si()) != id,
                               "class_group: generator order too small");
        }
    }
    check_internal(prod == g.h, "class_group: divisor product != h");
    return g;
}

i64 torsion_count(const class_group& g, i64 m) {
    if (m < 2) throw std::domain_error("torsion_count: m must be >= 2");
    i64 n = 1;
    for (i64 di : g.elementary_divisors) n *= arith::gcd_i64(di, m);
    return n;
}

}  // namespace tslab::qf
