#include "flatsum/expsums.hpp"

#include <cmath>
#include <numeric>
#include <vector>

#include "flatsum/arith.hpp"
#include "flatsum/error.hpp"

namespace flatsum {

namespace {

void require_modulus(const DirichletCharacter& chi, std::int64_t q, const char* what) {
    if (chi.modulus() != q)
        throw Error(errc::modulus_mismatch,
                    std::string(what) + ": character modulus differs from q");
}

SumParams make_params(std::string chi, std::int64_t m, std::int64_t n, std::int64_t d,
                      std::int64_t q) {
    SumParams p;
    p.m = m;
    p.n = n;
    p.d = d;
    p.q = q;
    p.chi = std::move(chi);
    return p;
}

} // namespace

SumResult kloosterman(const DirichletCharacter& chi, std::int64_t m, std::int64_t n,
                      std::int64_t q) {
    require_modulus(chi, q, "kloosterman");
    const CharacterGroup& g = chi.group();
    const auto& labels = chi.labels();
    const auto& eroots = g.exp_roots();
    const auto& vroots = g.value_roots();
    const std::int64_t mr = mod_reduce(m, q);
    const std::int64_t nr = mod_reduce(n, q);
    Cx acc{0.0, 0.0};
    for (std::int64_t a : g.units()) {
        const std::int64_t p = g.char_phase(labels, a);
        const std::int64_t k = (mr * a + nr * g.inverse_of(a)) % q;
        acc += vroots[static_cast<std::size_t>(p)] * eroots[static_cast<std::size_t>(k)];
    }
    SumResult r;
    r.value = acc;
    r.term_count = g.size();
    r.params = make_params(chi.label_string(), m, n, q, q);
    return r;
}

SumResult t_sum(const DirichletCharacter& chi, std::int64_t m, std::int64_t n,
                std::int64_t d, std::int64_t q) {
    require_modulus(chi, q, "t_sum");
    if (d < 1 || q % d != 0)
        throw Error(errc::bad_divisor, "t_sum: d must be a positive divisor of q");
    const CharacterGroup& g = chi.group();
    const auto& labels = chi.labels();
    const std::vector<Cx> droots = unit_roots(d);
    const auto& vroots = g.value_roots();
    const std::int64_t mr = mod_reduce(m, d);
    const std::int64_t nr = mod_reduce(n, d);
    Cx acc{0.0, 0.0};
    for (std::int64_t a : g.units()) {
        const std::int64_t p = g.char_phase(labels, a);
        const std::int64_t k = (mr * (a % d) + nr * (g.inverse_of(a) % d)) % d;
        acc += vroots[static_cast<std::size_t>(p)] * droots[static_cast<std::size_t>(k)];
    }
    SumResult r;
    r.value = acc;
    r.term_count = g.size();
    r.params = make_params(chi.label_string(), m, n, d, q);
    return r;
}

SumResult gauss_sum_shifted(std::int64_t s, const DirichletCharacter& chi) {
    const CharacterGroup& g = chi.group();
    const std::int64_t q = g.q();
    const auto& labels = chi.labels();
    const auto& eroots = g.exp_roots();
    const auto& vroots = g.value_roots();
    const std::int64_t sr = mod_reduce(s, q);
    Cx acc{0.0, 0.0};
    for (std::int64_t a : g.units()) {
        const std::int64_t p = g.char_phase(labels, a);
        acc += vroots[static_cast<std::size_t>(p)] *
               eroots[static_cast<std::size_t>((sr * a) % q)];
    }
    SumResult r;
    r.value = acc;
    r.term_count = g.size();
    r.params = make_params(chi.label_string(), s, 0, q, q);
    return r;
}

SumResult salie_rhs(std::int64_t m, std::int64_t n, std::int64_t q) {
    Modulus mod = factorize(q);
    if (q % 2 == 0 || mod.squarefull_part() != 1)
        throw Error(errc::unsupported_modulus, "salie_rhs: q must be odd and squarefree");
    const std::int64_t nr = mod_reduce(n, q);
    if (std::gcd(2 * nr, q) != 1)
        throw Error(errc::non_coprime, "salie_rhs: gcd(2n, q) must be 1");
    const std::int64_t mr = mod_reduce(m, q);

    Cx root_sum{0.0, 0.0};
    for (const Residue& y : sqrt_mod(mul_mod(mr, nr, q), mod))
        root_sum += unit_phase(mod_reduce(2 * y.value, q), q);

    const Cx eps = (q % 4 == 3) ? Cx{0.0, 1.0} : Cx{1.0, 0.0};
    const double scale = std::sqrt(static_cast<double>(q)) *
                         static_cast<double>(jacobi_symbol(nr, q));

    SumResult r;
    r.value = eps * scale * root_sum;
    r.term_count = multiplicative_profile(mod).phi;
    r.params = make_params(character_label_string(q, jacobi_labels(mod)), m, n, q, q);
    return r;
}

WeilRatio weil_ratio(const DirichletCharacter& chi, std::int64_t m, std::int64_t n,
                     std::int64_t q) {
    const SumResult s = kloosterman(chi, m, n, q);
    const std::int64_t gm = std::gcd(mod_reduce(m, q), q);
    const std::int64_t gn = std::gcd(mod_reduce(n, q), q);
    const std::int64_t gmnq = std::gcd(gm, gn);
    const auto profile = multiplicative_profile(factorize(q));

    WeilRatio w;
    w.value = std::abs(s.value);
    w.bound = std::sqrt(static_cast<double>(q)) *
              std::sqrt(static_cast<double>(gmnq)) * static_cast<double>(profile.tau);
    w.ratio = w.value / w.bound;
    return w;
}

} // namespace flatsum
