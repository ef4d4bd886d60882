#ifndef TSLAB_DESCENT_HPP
#define TSLAB_DESCENT_HPP

#include <utility>
#include <vector>

#include "weierstrass.hpp"

namespace tslab::descent2 {

using ec::Int;
using ec::curve;

/*
 * Complete 2-descent data for a curve with full rational 2-torsion: an
 * integral model y^2 = (x - e1)(x - e2)(x - e3) with e1 < e2 < e3, and the
 * support set S = {2} u {odd p | (e1-e2)(e1-e3)(e2-e3)} (the primes of bad
 * reduction together with 2).
 */
struct descent_setup_data {
    curve minimal;           // global minimal model of the input
    Int e1, e2, e3;          // ascending integer roots
    std::vector<Int> s_primes;  // ascending, first entry always 2
};

// Throws std::domain_error unless the 2-torsion is fully rational.
descent_setup_data descent_setup(const curve& e);

struct place {
    bool is_real = true;
    Int p;  // meaningful when !is_real
    static place real() { return {}; }
    static place at(const Int& prime) { return {false, prime}; }
};

// Decides solubility over the completion of
//   d1 z1^2 = x - e1,  d2 z2^2 = x - e2,  d1 d2 z3^2 = x - e3
// (z_i = 0 allowed at x = e_i). Total on nonzero squarefree-supported d1, d2.
bool torsor_locally_soluble(const descent_setup_data& s, const Int& d1, const Int& d2,
                            const place& v);

struct selmer_group {
    curve model;                 // the minimal model descended on
    int dimension = 0;           // log2 #Sel_2
    int torsion_image_dim = 0;   // rank of the image of E(Q)[2]
    int point_search_rank_lb = 0;  // rank certificate from the height search
    std::vector<std::pair<Int, Int>> basis_pairs;
    std::vector<std::pair<Int, Int>> elements;  // every soluble pair, sorted
};

// Everywhere-locally-soluble (d1, d2) classes; the real place and every
// p in S are checked, solubility elsewhere being automatic.
selmer_group sel2_group(const curve& e, i64 point_search_bound = 10'000);

struct weil_restriction_proxy {
    int dim_base = 0;      // dim Sel_2(E/Q)
    int dim_twist = 0;     // dim Sel_2(E_D/Q)
    int proxy = 0;         // their sum, standing in for dim Sel_2 over Q(sqrt(D))
    bool coprime = true;   // gcd(D, 2*disc(E)) == 1
    int s_bad = 0;         // #{primes dividing 2 * disc(E) * D}
    int unit_correction = 1;     // log2 #(U_K / U_K^2), always 1 here
    int torsion_correction = 2;  // log2 #E(K)[2]
};

weil_restriction_proxy sel2_over_K_proxy(const curve& e, i64 d, i64 point_search_bound = 10'000);

}  // namespace tslab::descent2

#endif
