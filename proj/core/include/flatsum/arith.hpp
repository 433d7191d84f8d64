#ifndef FLATSUM_ARITH_HPP
#define FLATSUM_ARITH_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "flatsum/error.hpp"

namespace flatsum {

// One prime-power slice of a factored modulus.
struct Factor {
    std::int64_t prime;
    int exponent;
};

// A positive integer together with its prime factorization and its split
// into a squarefree part q1 (primes of exponent 1) and a squarefull part q2
// (primes of exponent >= 2).  Construct with factorize().
class Modulus {
public:
    std::int64_t value() const { return q_; }
    const std::vector<Factor>& factors() const { return factors_; }
    std::int64_t squarefree_part() const { return q1_; }
    std::int64_t squarefull_part() const { return q2_; }

private:
    friend Modulus factorize(std::int64_t q);
    std::int64_t q_ = 1;
    std::int64_t q1_ = 1;
    std::int64_t q2_ = 1;
    std::vector<Factor> factors_;
};

// A residue value in [0, q).
struct Residue {
    std::int64_t value;
    std::int64_t modulus;
};

inline bool operator==(const Residue& a, const Residue& b) {
    return a.value == b.value && a.modulus == b.modulus;
}

// The four multiplicative invariants used throughout: Euler phi, the divisor
// count tau, the Moebius value mu, and the number of distinct primes omega.
struct MultiplicativeProfile {
    std::int64_t phi;
    std::int64_t tau;
    int mu;
    int omega;
};

// Reduce n into [0, q).  Works for negative n.
std::int64_t mod_reduce(std::int64_t n, std::int64_t q);

// (a * b) mod q without overflow.
std::int64_t mul_mod(std::int64_t a, std::int64_t b, std::int64_t q);

// (a ^ e) mod q, e >= 0.
std::int64_t pow_mod(std::int64_t a, std::int64_t e, std::int64_t q);

// Deterministic primality test for the supported modulus range.
bool is_prime(std::int64_t n);

// Factor q into prime powers, sorted by prime.  Trial division for small
// primes, then a deterministic rho split for what remains.
// Rejects q < 1 and q > 2^50.
Modulus factorize(std::int64_t q);

// (squarefree part, squarefull part) of m.
std::pair<std::int64_t, std::int64_t> squarefree_split(const Modulus& m);

// Inverse of n modulo q, as a residue in [0, q).  For q = 1 returns 0.
// Throws errc::non_invertible when gcd(n, q) > 1.
Residue mod_inverse(std::int64_t n, std::int64_t q);

// Jacobi symbol (a | q) for odd q >= 1.  Throws errc::even_modulus.
int jacobi_symbol(std::int64_t a, std::int64_t q);

// All square roots of a modulo m.value(), sorted ascending.  Supported
// moduli are odd and squarefree; anything else throws
// errc::unsupported_modulus.  Returns an empty set when no root exists.
std::vector<Residue> sqrt_mod(std::int64_t a, const Modulus& m);

// phi, tau, mu, omega of m.
MultiplicativeProfile multiplicative_profile(const Modulus& m);

// Ramanujan sum c_q(n) via the closed form mu(q/g) * phi(q) / phi(q/g)
// with g = gcd(n, q).  Always an integer; c_q(0) = phi(q).
std::int64_t ramanujan_sum(std::int64_t n, std::int64_t q);

} // namespace flatsum

#endif
