#ifndef TSLAB_ARITH_HPP
#define TSLAB_ARITH_HPP

#include <gmpxx.h>

#include <vector>

#include "util.hpp"

namespace tslab::arith {

using Int = mpz_class;

struct prime_power {
    Int prime;
    unsigned exponent;
};

// Prime factorization of |value|, primes strictly ascending.
struct factorization {
    Int value;
    std::vector<prime_power> factors;

    Int abs_product() const;
    unsigned num_distinct_primes() const { return (unsigned)factors.size(); }
    unsigned valuation(const Int& p) const;
};

// Deterministic primality: Miller-Rabin over a witness set proven complete
// for n < 3.3e24 (covers every 64-bit integer), BPSW beyond.
bool is_prime(const Int& n);

// Trial division to 2^16, then Brent's rho with a fixed iteration schedule.
// Rejects n = 0.
factorization factorize(const Int& n);

// Kronecker symbol with the standard extension to all integer pairs.
int kronecker(const Int& a, const Int& b);
int kronecker(i64 a, i64 b);

// D is the discriminant of a quadratic etale algebra: D = 1 or
// D ≡ 1 (mod 4) squarefree, or D = 4m with m squarefree and m ≡ 2,3 (mod 4).
bool is_fundamental_discriminant(i64 d);

struct fundamental_discriminant {
    i64 d;
    explicit fundamental_discriminant(i64 value);
};

enum class disc_sign { negative_only, all };

// Exactly the fundamental discriminants in [lo, hi], ascending.
std::vector<i64> fundamental_discriminants_in_range(i64 lo, i64 hi, disc_sign sign);

// Primes in [2, bound], ascending.
const std::vector<i64>& primes_up_to(i64 bound);

i64 gcd_i64(i64 a, i64 b);
// g = gcd(a,b) >= 0 with g = x*a + y*b.
i64 xgcd_i64(i64 a, i64 b, i64& x, i64& y);

// (a*b) mod m and (a^e) mod m for 0 <= a,b < m < 2^62.
i64 mulmod_i64(i64 a, i64 b, i64 m);
i64 powmod_i64(i64 a, u64 e, i64 m);

// Legendre-style square root mod odd prime p (Tonelli-Shanks with a
// deterministic non-residue search); returns -1 when a is not a residue.
i64 sqrtmod_i64(i64 a, i64 p);

}  // namespace tslab::arith

#endif
