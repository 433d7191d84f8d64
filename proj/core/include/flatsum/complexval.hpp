#ifndef FLATSUM_COMPLEXVAL_HPP
#define FLATSUM_COMPLEXVAL_HPP

#include <complex>
#include <cstdint>
#include <vector>

namespace flatsum {

using Cx = std::complex<double>;

// e(num/den) = exp(2*pi*i*num/den).  The argument is reduced exactly as an
// integer residue mod den before any floating-point work, so huge phases
// never lose precision.  Quarter-turn phases come out bit-exact.
Cx unit_phase(std::int64_t num, std::int64_t den);

// Table of e(j/order) for j in [0, order).  The upper half mirrors the lower
// half by conjugation, so w[order - j] is exactly conj(w[j]).
std::vector<Cx> unit_roots(std::int64_t order);

} // namespace flatsum

#endif
