#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "flatsum/characters.hpp"
#include "flatsum/complexval.hpp"

namespace flatsum {

// F(H): the units n of [1,q] whose distance |n - nbar| to their modular
// inverse is at most H, both representatives taken in [1,q].
struct FlatSet {
    std::int64_t q = 0;
    double h = 0.0;
    std::vector<std::int64_t> members;  // ascending
};

// Exact O(q) scan. Requires q >= 2 and 0 <= H <= q.
FlatSet flat_set(std::int64_t q, double h);

// A character sum over flat numbers, tagged with its parameters.
struct FlatSumValue {
    Cx w{0.0, 0.0};
    double h = 0.0;
    std::int64_t q = 0;
    std::string chi_label;
};

// W(chi,H;q): chi summed over F(H). Real threshold H.
FlatSumValue w_sum(const DirichletCharacter& chi, double h, std::int64_t q);

// W*(chi,H;q): chi(n) summed over units n whose difference n - nbar,
// reduced mod q to a representative in [1,q], is at most H. Integer H
// with 1 <= H <= q.
FlatSumValue w_star_sum(const DirichletCharacter& chi, std::int64_t h, std::int64_t q);

// The same W* evaluated through its finite Fourier expansion
//   (1/q) sum_{m<=q} sum_{t<=H} e(-mt/q) S_chi(m,-m;q),
// with the Kloosterman value cached per m. Must agree with w_star_sum.
FlatSumValue fourier_w_star(const DirichletCharacter& chi, std::int64_t h, std::int64_t q);

// Batch form: one Kloosterman cache serves every H in the grid; entries
// are returned in grid order. Equivalent to calling fourier_w_star per H,
// up to summation grouping.
std::vector<FlatSumValue> fourier_w_star_grid(const DirichletCharacter& chi,
                                              const std::vector<std::int64_t>& h_grid,
                                              std::int64_t q);

// Closed evaluation of W* for the Jacobi character mod an odd squarefree q:
//   (eps_q/sqrt(q)) tau(chi) sum_{delta^2 = -1 (q)} sum_{t<=H} chi(2*delta - t),
// with eps_q as in salie_rhs. An empty delta set yields exactly 0.
FlatSumValue salie_w_star(std::int64_t h, std::int64_t q);

// Count of flat numbers below the relative threshold delta*q, against the
// smooth main term delta*(2-delta)*phi(q).
struct ZhangCount {
    std::int64_t count = 0;
    double main_term = 0.0;
    double error = 0.0;  // count - main_term
};

// Threshold compared as |n - nbar| <= delta*q in doubles.
ZhangCount zhang_count(std::int64_t q, double delta);

// Exact-threshold variant: delta = num/den with the comparison
// |n - nbar| * den <= num * q done in integers, so boundary ties are
// deterministic. Requires 0 < num/den <= 1.
ZhangCount zhang_count(std::int64_t q, std::int64_t num, std::int64_t den);

} // namespace flatsum
