#ifndef TSLAB_QUADFORM_HPP
#define TSLAB_QUADFORM_HPP

#include <vector>

#include "arith.hpp"
#include "util.hpp"

namespace tslab::qf {

// Coefficients stay within int64 and composition intermediates within int128
// for |disc| up to this bound; constructors enforce it.
inline constexpr i64 kMaxAbsDisc = (i64)1 << 40;

/*
 * Positive definite integral binary quadratic form a*x^2 + b*x*y + c*y^2
 * of negative discriminant b^2 - 4ac. Reduced means |b| <= a <= c with
 * b >= 0 whenever |b| = a or a = c.
 */
struct form {
    i64 a = 1, b = 0, c = 0;

    i64 disc() const;
    bool operator==(const form&) const = default;
    auto operator<=>(const form&) const = default;
};

form make_form(i64 a, i64 b, i64 c);  // validates definiteness and bound
form principal_form(i64 d);
bool is_reduced(const form& f);
form reduce(form f);
form opposite(const form& f);  // inverse class, reduced

// Gauss composition; inputs reduced with equal discriminant, output reduced.
form compose(const form& f, const form& g);
form power(const form& f, i64 e);  // e >= 0

// All reduced forms of fundamental discriminant d < 0, sorted.
std::vector<form> reduced_forms(i64 d);

struct class_group {
    i64 d = 0;
    i64 h = 1;
    // Ascending divisibility chain d1 | d2 | ... | dk with product h;
    // generators[i] has order elementary_divisors[i] and the generators
    // span the full group as a direct product.
    std::vector<i64> elementary_divisors;
    std::vector<form> generators;
};

// d fundamental, negative, |d| <= kMaxAbsDisc.
class_group class_group_structure(i64 d);

// #Cl(d)[m] = prod gcd(d_i, m); any m >= 2.
i64 torsion_count(const class_group& g, i64 m);

}  // namespace tslab::qf

#endif
