#pragma once

#include <cstdint>
#include <string>

#include "flatsum/characters.hpp"
#include "flatsum/complexval.hpp"

namespace flatsum {

// Parameter tuple attached to every evaluated sum, for reporting.
struct SumParams {
    std::int64_t m = 0;
    std::int64_t n = 0;
    std::int64_t d = 0;  // exponential denominator (equals q for complete sums)
    std::int64_t q = 0;
    std::string chi;     // canonical character label
};

// Value of an exponential sum together with the number of summed terms.
// |value| never exceeds term_count beyond rounding (triangle inequality).
struct SumResult {
    Cx value{0.0, 0.0};
    std::int64_t term_count = 0;
    SumParams params;
};

// Twisted Kloosterman sum
//   S_chi(m,n;q) = sum over units a mod q of chi(a) e((m*a + n*abar)/q),
// with abar the inverse of a mod q. Principal chi gives the classical S(m,n;q).
SumResult kloosterman(const DirichletCharacter& chi, std::int64_t m, std::int64_t n,
                      std::int64_t q);

// Partial-denominator variant
//   T_chi(m,n;d,q) = sum over units a mod q of chi(a) e((m*a + n*abar)/d)
// for d | q; abar is still the inverse of a mod q, only the exponential
// denominator changes. T with d = q is exactly kloosterman.
SumResult t_sum(const DirichletCharacter& chi, std::int64_t m, std::int64_t n,
                std::int64_t d, std::int64_t q);

// Shifted Gauss sum G(s,chi) = sum over units a mod q of chi(a) e(s*a/q).
// G(1,chi) is the classical tau(chi).
SumResult gauss_sum_shifted(std::int64_t s, const DirichletCharacter& chi);

// Closed Salie evaluation
//   eps_q * sqrt(q) * (n|q) * sum over y with y^2 = m*n (mod q) of e(2y/q)
// for odd squarefree q with gcd(2n,q) = 1; (n|q) is the Jacobi symbol and
// eps_q = 1 for q = 1 (mod 4), i for q = 3 (mod 4). Equals the Kloosterman
// sum twisted by the Jacobi character; an empty root set yields 0.
SumResult salie_rhs(std::int64_t m, std::int64_t n, std::int64_t q);

// |S_chi(m,n;q)| measured against the explicit classical envelope
// sqrt(q) * sqrt(gcd(m,n,q)) * tau(q).
struct WeilRatio {
    double value = 0.0;  // |S_chi(m,n;q)|
    double bound = 0.0;
    double ratio = 0.0;
};

WeilRatio weil_ratio(const DirichletCharacter& chi, std::int64_t m, std::int64_t n,
                     std::int64_t q);

} // namespace flatsum
