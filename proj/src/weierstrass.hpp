#ifndef TSLAB_WEIERSTRASS_HPP
#define TSLAB_WEIERSTRASS_HPP

#include <string>
#include <vector>

#include "arith.hpp"
#include "util.hpp"

namespace tslab::ec {

using Int = arith::Int;

/*
 * Integral Weierstrass model y^2 + a1*x*y + a3*y = x^3 + a2*x^2 + a4*x + a6
 * with nonzero discriminant. The b-, c-invariants and the discriminant are
 * derived on demand.
 */
struct curve {
    Int a1, a2, a3, a4, a6;

    Int b2() const { return a1 * a1 + 4 * a2; }
    Int b4() const { return 2 * a4 + a1 * a3; }
    Int b6() const { return a3 * a3 + 4 * a6; }
    Int b8() const { return a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4; }
    Int c4() const { return b2() * b2() - 24 * b4(); }
    Int c6() const { return -b2() * b2() * b2() + 36 * b2() * b4() - 216 * b6(); }
    Int disc() const;

    bool operator==(const curve&) const = default;
    std::string str() const;              // "y^2 + x*y = x^3 - 4*x - 1" style
    std::string coeff_list() const;       // "a1,a2,a3,a4,a6"
};

curve make_curve(const Int& a1, const Int& a2, const Int& a3, const Int& a4, const Int& a6);
curve parse_curve(const std::string& comma_separated);  // "a1,a2,a3,a4,a6"

// Change of variables x = u^2 x' + r, y = u^3 y' + u^2 s x' + t mapping this
// model to a new one; all divisions must be exact.
struct transform {
    Int u = 1, r = 0, s = 0, t = 0;
};
curve apply_transform(const curve& e, const transform& tr);

struct minimal_result {
    curve model;
    transform to_minimal;  // applied to the input yields `model`
};
// Global minimal model over Q (Laska-Kraus-Connell).
minimal_result minimal_model(const curve& e);
bool is_globally_minimal(const curve& e);

enum class kodaira_kind { In, II, III, IV, Instar, IVstar, IIIstar, IIstar };

struct kodaira_type {
    kodaira_kind kind = kodaira_kind::In;
    i64 n = 0;  // the subscript for In / In*
    std::string str() const;
    bool operator==(const kodaira_type&) const = default;
};

struct local_data {
    Int p;
    kodaira_type kodaira;
    int f = 0;                 // conductor exponent
    i64 c = 1;                 // Tamagawa number
    int v_delta_min = 0;       // valuation of the minimal discriminant
    bool split_multiplicative = false;
};

// Complete Tate's algorithm at p. The model must be minimal at p (a global
// minimal model qualifies); non-minimal input is rejected.
local_data tate_local_data(const curve& e, const Int& p);

// Local data at every bad prime of a globally minimal model, p ascending.
std::vector<local_data> all_local_data(const curve& e);
Int conductor(const std::vector<local_data>& v);
Int tamagawa_product(const std::vector<local_data>& v);

struct torsion_group {
    i64 order = 1;
    std::vector<i64> divisors;  // [] trivial, [n] cyclic, [2, 2m] for Z/2 x Z/2m
};
// Exact rational torsion via bounded Lutz-Nagell search on the scaled
// short model; orders verified with the group law, capped by Mazur's bound.
torsion_group torsion_subgroup(const curve& e);

struct period_data {
    double omega_plus = 0;    // integral of the Neron differential over the
                              // identity component of E(R)
    double omega_minus = 0;   // |imaginary part| of the conjugate period
    double precision = 0;
    int real_components = 1;
    double omega_used() const { return omega_plus * real_components; }
};
// AGM evaluation; `target` rejects demands below double resolution.
period_data real_period(const curve& e, double target = 1e-12);

// Minimal model of the twist of e by the quadratic character of d (d != 0,
// squarefree or not; d = 1 returns the minimal model of e itself).
curve quadratic_twist_minimal(const curve& e, i64 d);

// True when the cubic in x of the short model splits over Q, i.e. the
// 2-torsion is fully rational.
bool has_full_rational_two_torsion(const curve& e);

// All integer roots of X^3 + c2 X^2 + c1 X + c0, ascending.
std::vector<Int> integer_roots_monic_cubic(const Int& c2, const Int& c1, const Int& c0);

}  // namespace tslab::ec

#endif
