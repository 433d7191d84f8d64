#include "flatsum/arith.hpp"

#include <algorithm>
#include <numeric>

namespace flatsum {

namespace {

constexpr std::int64_t kMaxModulus = std::int64_t(1) << 50;

using u64 = std::uint64_t;
using u128 = unsigned __int128;

std::int64_t ext_gcd(std::int64_t a, std::int64_t b, std::int64_t& x, std::int64_t& y) {
    if (b == 0) {
        x = 1;
        y = 0;
        return a;
    }
    std::int64_t x1 = 0, y1 = 0;
    std::int64_t g = ext_gcd(b, a % b, x1, y1);
    x = y1;
    y = x1 - (a / b) * y1;
    return g;
}

u64 mul_mod_u(u64 a, u64 b, u64 q) {
    return static_cast<u64>((u128)a * b % q);
}

u64 pow_mod_u(u64 a, u64 e, u64 q) {
    u64 r = q == 1 ? 0 : 1;
    a %= q;
    while (e) {
        if (e & 1) r = mul_mod_u(r, a, q);
        a = mul_mod_u(a, a, q);
        e >>= 1;
    }
    return r;
}

bool miller_rabin(u64 n) {
    if (n < 2) return false;
    for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        u64 x = pow_mod_u(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mul_mod_u(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

// Brent's cycle variant of the rho method, with a deterministic sequence of
// polynomial offsets so the factorization of a given q never varies.
u64 rho_split(u64 n) {
    if ((n & 1) == 0) return 2;
    for (u64 c = 1;; ++c) {
        u64 y = 2, d = 1;
        u64 power = 1, lam = 0, saved = 2;
        while (d == 1) {
            if (lam == power) {
                saved = y;
                power <<= 1;
                lam = 0;
            }
            y = (mul_mod_u(y, y, n) + c) % n;
            ++lam;
            u64 diff = y > saved ? y - saved : saved - y;
            if (diff == 0) break;
            d = std::gcd(diff, n);
        }
        if (d != 1 && d != n) return d;
    }
}

void factor_rec(u64 n, std::vector<std::int64_t>& primes) {
    if (n == 1) return;
    if (miller_rabin(n)) {
        primes.push_back(static_cast<std::int64_t>(n));
        return;
    }
    u64 d = rho_split(n);
    factor_rec(d, primes);
    factor_rec(n / d, primes);
}

// Tonelli-Shanks square root modulo an odd prime; a must be a nonzero
// quadratic residue mod p.
std::int64_t prime_sqrt(std::int64_t a, std::int64_t p) {
    if (p % 4 == 3) return pow_mod(a, (p + 1) / 4, p);
    std::int64_t s = 0, m = p - 1;
    while (m % 2 == 0) {
        m /= 2;
        ++s;
    }
    std::int64_t z = 2;
    while (jacobi_symbol(z, p) != -1) ++z;
    std::int64_t c = pow_mod(z, m, p);
    std::int64_t t = pow_mod(a, m, p);
    std::int64_t r = pow_mod(a, (m + 1) / 2, p);
    while (t != 1) {
        std::int64_t i = 0, t2 = t;
        while (t2 != 1) {
            t2 = mul_mod(t2, t2, p);
            ++i;
        }
        std::int64_t b = c;
        for (std::int64_t j = 0; j < s - i - 1; ++j) b = mul_mod(b, b, p);
        r = mul_mod(r, b, p);
        c = mul_mod(b, b, p);
        t = mul_mod(t, c, p);
        s = i;
    }
    return r;
}

MultiplicativeProfile profile_of(const std::vector<Factor>& factors) {
    MultiplicativeProfile out{1, 1, 1, 0};
    for (const Factor& f : factors) {
        std::int64_t pe1 = 1;
        for (int i = 1; i < f.exponent; ++i) pe1 *= f.prime;
        out.phi *= pe1 * (f.prime - 1);
        out.tau *= f.exponent + 1;
        out.mu = f.exponent > 1 ? 0 : -out.mu;
        ++out.omega;
    }
    return out;
}

} // namespace

std::int64_t mod_reduce(std::int64_t n, std::int64_t q) {
    std::int64_t r = n % q;
    return r < 0 ? r + q : r;
}

std::int64_t mul_mod(std::int64_t a, std::int64_t b, std::int64_t q) {
    return static_cast<std::int64_t>((__int128)a * b % q);
}

std::int64_t pow_mod(std::int64_t a, std::int64_t e, std::int64_t q) {
    return static_cast<std::int64_t>(pow_mod_u(static_cast<u64>(mod_reduce(a, q)),
                                               static_cast<u64>(e), static_cast<u64>(q)));
}

bool is_prime(std::int64_t n) {
    return n >= 2 && miller_rabin(static_cast<u64>(n));
}

Modulus factorize(std::int64_t q) {
    if (q < 1 || q > kMaxModulus)
        throw Error(errc::bad_argument, "factorize: modulus must be in [1, 2^50]");
    Modulus m;
    m.q_ = q;
    std::vector<std::int64_t> primes;
    std::int64_t rest = q;
    for (std::int64_t p = 2; p <= 1000000 && p * p <= rest; p = (p == 2 ? 3 : p + 2)) {
        while (rest % p == 0) {
            primes.push_back(p);
            rest /= p;
        }
    }
    if (rest > 1) factor_rec(static_cast<u64>(rest), primes);
    std::sort(primes.begin(), primes.end());
    for (std::size_t i = 0; i < primes.size();) {
        std::size_t j = i;
        while (j < primes.size() && primes[j] == primes[i]) ++j;
        Factor f{primes[i], static_cast<int>(j - i)};
        m.factors_.push_back(f);
        std::int64_t pe = 1;
        for (int k = 0; k < f.exponent; ++k) pe *= f.prime;
        (f.exponent == 1 ? m.q1_ : m.q2_) *= pe;
        i = j;
    }
    return m;
}

std::pair<std::int64_t, std::int64_t> squarefree_split(const Modulus& m) {
    return {m.squarefree_part(), m.squarefull_part()};
}

Residue mod_inverse(std::int64_t n, std::int64_t q) {
    if (q < 1) throw Error(errc::bad_argument, "mod_inverse: modulus must be positive");
    if (q == 1) return Residue{0, 1};
    std::int64_t a = mod_reduce(n, q);
    std::int64_t x = 0, y = 0;
    std::int64_t g = ext_gcd(a, q, x, y);
    if (g != 1)
        throw Error(errc::non_invertible, "mod_inverse: argument shares a factor with the modulus");
    return Residue{mod_reduce(x, q), q};
}

int jacobi_symbol(std::int64_t a, std::int64_t q) {
    if (q < 1 || q % 2 == 0)
        throw Error(errc::even_modulus, "jacobi_symbol: modulus must be odd and positive");
    std::int64_t x = mod_reduce(a, q);
    std::int64_t y = q;
    int sign = 1;
    while (x != 0) {
        while (x % 2 == 0) {
            x /= 2;
            std::int64_t r = y % 8;
            if (r == 3 || r == 5) sign = -sign;
        }
        std::swap(x, y);
        if (x % 4 == 3 && y % 4 == 3) sign = -sign;
        x %= y;
    }
    return y == 1 ? sign : 0;
}

std::vector<Residue> sqrt_mod(std::int64_t a, const Modulus& m) {
    std::int64_t q = m.value();
    if (q % 2 == 0 || m.squarefull_part() != 1)
        throw Error(errc::unsupported_modulus, "sqrt_mod: modulus must be odd and squarefree");
    std::int64_t ar = mod_reduce(a, q);
    if (q == 1) return {Residue{0, 1}};

    // Roots per prime, then every CRT combination.
    std::vector<std::int64_t> roots{0};
    std::int64_t built = 1;
    for (const Factor& f : m.factors()) {
        std::int64_t p = f.prime;
        std::int64_t ap = ar % p;
        std::vector<std::int64_t> local;
        if (ap == 0) {
            local.push_back(0);
        } else {
            int chi = jacobi_symbol(ap, p);
            if (chi != 1) return {};
            std::int64_t r = prime_sqrt(ap, p);
            local.push_back(r);
            local.push_back(p - r);
        }
        std::vector<std::int64_t> next;
        next.reserve(roots.size() * local.size());
        std::int64_t inv = mod_inverse(built % p, p).value;
        for (std::int64_t base : roots) {
            for (std::int64_t s : local) {
                std::int64_t lift = mod_reduce(s - base, p);
                next.push_back(base + built * mul_mod(lift, inv, p));
            }
        }
        roots = std::move(next);
        built *= p;
    }
    std::sort(roots.begin(), roots.end());
    std::vector<Residue> out;
    out.reserve(roots.size());
    for (std::int64_t r : roots) out.push_back(Residue{r, q});
    return out;
}

MultiplicativeProfile multiplicative_profile(const Modulus& m) {
    return profile_of(m.factors());
}

std::int64_t ramanujan_sum(std::int64_t n, std::int64_t q) {
    Modulus m = factorize(q);
    std::int64_t g = std::gcd(mod_reduce(n, q), q); // gcd(0, q) == q
    std::int64_t k = q / g;
    // Build the factor list of k from that of q.
    std::vector<Factor> kf;
    for (const Factor& f : m.factors()) {
        int e = 0;
        std::int64_t rest = k;
        while (rest % f.prime == 0) {
            rest /= f.prime;
            ++e;
        }
        if (e > 0) kf.push_back(Factor{f.prime, e});
    }
    MultiplicativeProfile pk = profile_of(kf);
    if (pk.mu == 0) return 0;
    MultiplicativeProfile pq = multiplicative_profile(m);
    return pk.mu * (pq.phi / pk.phi);
}

} // namespace flatsum
