#ifndef TSLAB_LSERIES_HPP
#define TSLAB_LSERIES_HPP

#include <vector>

#include "weierstrass.hpp"

namespace tslab::lseries {

using ec::Int;
using ec::curve;

// Dirichlet coefficients a_1..a_n of L(E, s), Hasse-bounded at good primes
// and in {-1, 0, 1} at bad ones; fully multiplicative across coprime indices.
struct coefficient_vector {
    i64 n_max = 0;
    std::vector<i64> a;  // a[n] for 1 <= n <= n_max; a[0] unused

    i64 at(i64 n) const { return a[(size_t)n]; }
};

// a_p for any prime: enumeration below the counting threshold, baby-step
// giant-step order finding above it; bad primes read off the local data.
i64 ap(const curve& minimal_model, const Int& p);

coefficient_vector an_vector(const curve& minimal_model, i64 n_max);

struct central_value {
    double value = 0;       // L(E,1) when w = +1, L'(E,1) when w = -1
    int order = 0;          // order of vanishing used (0 or 1)
    int w = 1;              // root number
    i64 n_max = 0;          // truncation actually used
    double tail_bound = 0;  // rigorous bound on the discarded tail
    double fe_residual = 0; // functional-equation consistency defect
    bool order_undetermined = false;  // series vanished beyond order cap
};

struct root_number_result {
    int w = 1;
    double fe_residual = 0;
};

// Root number chosen as the sign under which theta(1/t) = w t^2 theta(t)
// holds at two test points; fails loudly when neither sign fits.
root_number_result root_number(const curve& minimal_model);

// L(E,1) (w = +1) or L'(E,1) (w = -1) with a certified geometric tail bound
// below `target`; throws when the configured n_max cap cannot reach it.
central_value compute_central_value(const curve& minimal_model, double target = 1e-8,
                                    i64 n_max_cap = 4'000'000);

}  // namespace tslab::lseries

#endif
