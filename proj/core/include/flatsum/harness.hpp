#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "flatsum/characters.hpp"
#include "flatsum/report.hpp"

namespace flatsum {

// Threshold grid given as tokens "1", "q", "q/2", "q/4", "q/8", resolved per
// modulus with integer division, clamped up to 1, deduplicated ascending.
struct HGrid {
    std::vector<std::string> tokens;

    static HGrid parse(const std::vector<std::string>& tokens);  // InvalidConfig
    std::vector<std::int64_t> resolve(std::int64_t q) const;
    std::string describe() const;
    bool empty() const { return tokens.empty(); }
};

// Exact decimal in (0, 1] with at most nine fractional digits, kept both as a
// reduced fraction (for exact threshold comparisons) and as the original
// spelling (for display).  Throws BadDelta on anything else.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;
    std::string text;
};

Rational parse_decimal(const std::string& text);

// Character subset selector: "all", "principal", "jacobi", or
// "index:<k1,k2,...>" naming exponents on the group's axes.
struct ChiSelector {
    enum class Kind { all, principal, jacobi, index };
    Kind kind = Kind::all;
    std::vector<std::int64_t> labels;

    static ChiSelector parse(const std::string& text);  // InvalidConfig
    std::vector<DirichletCharacter>
    select(const std::shared_ptr<const CharacterGroup>& group) const;
    std::string describe() const;
};

struct SweepConfig {
    std::int64_t q_min = 3;
    std::int64_t q_max = 0;        // 0: per-suite default
    HGrid h_grid;                  // empty: per-suite default
    int samples = 32;
    std::uint64_t seed = 0x5EED;
    double tol_scale = 1e-7;       // identity tolerance is tol_scale * q
    std::vector<Rational> deltas;  // zhang sweep; empty: 0.1, 0.2, ..., 1
    std::vector<int> r_values = {1, 2, 3};
    ChiSelector chi;               // honored by theorem1; other suites fix their domain
    int threads = 0;               // 0: default_thread_count()
};

SweepConfig default_identity_config();
SweepConfig default_sweep_config();

// Identity suites compare two independently computed sides and assert the
// maximum deviation against the tolerance:
//   symmetry      W(chi,H;q) = 0 for odd chi                     (q <= 500)
//   lemma2        T_chi(m,n;d,q) vs phi(l)*S_chi1(m,n;d) or 0    (q <= 300)
//   lemma3        S_chi(m,n;q) vs the quadratic closed form      (q <= 500)
//   lemma5        T_chi factorization over squarefree*squarefull (q <= 400)
//   lemma6        shifted Gauss sum factorizations               (q <= 400)
//   fourier       w_star_sum vs its Kloosterman expansion        (q <= 300)
//   salie-closed  w_star_sum vs the explicit Gauss-sum form      (q <= 500)
Report run_identity_suite(const std::string& suite, const SweepConfig& config);

// Bound sweeps record ratio = lhs / bound per instance.  "weil" (untwisted,
// constant 1) and "polya-vinogradov" (primitive chi, constant 1) assert
// ratio <= 1; the theorem targets have unknown implied constants and are
// report-only.
Report run_bound_sweep(const std::string& target, const SweepConfig& config);

// Density of units with |n - nbar| <= delta*q against delta(2-delta)*phi(q):
// records |error| / (sqrt(q) tau^2(q) log^3 q) and asserts exactness at
// delta = 1.
Report run_zhang_sweep(const SweepConfig& config);

// Short character sum over (start, start+length] against the Burgess-shape
// bound length^(1-1/r) q^((r+1)/(4r^2)) log q; report-only.
RatioRecord burgess_ratio(const DirichletCharacter& chi, std::int64_t start,
                          std::int64_t length, int r);

// One burgess_ratio record per selected character; principal characters are
// skipped under the "all" selector and rejected when named explicitly.
Report burgess_report(std::int64_t q, const ChiSelector& chi, std::int64_t start,
                      std::int64_t length, int r);

} // namespace flatsum
