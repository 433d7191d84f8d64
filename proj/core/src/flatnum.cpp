#include "flatsum/flatnum.hpp"

#include <cmath>
#include <numeric>

#include "flatsum/arith.hpp"
#include "flatsum/error.hpp"
#include "flatsum/expsums.hpp"

namespace flatsum {

namespace {

void require_modulus(const DirichletCharacter& chi, std::int64_t q, const char* what) {
    if (chi.modulus() != q)
        throw Error(errc::modulus_mismatch,
                    std::string(what) + ": character modulus differs from q");
}

void require_star_threshold(std::int64_t h, std::int64_t q, const char* what) {
    if (h < 1 || h > q)
        throw Error(errc::bad_threshold,
                    std::string(what) + ": H must be an integer in [1, q]");
}

FlatSumValue tagged(Cx w, double h, std::int64_t q, std::string chi_label) {
    FlatSumValue v;
    v.w = w;
    v.h = h;
    v.q = q;
    v.chi_label = std::move(chi_label);
    return v;
}

} // namespace

FlatSet flat_set(std::int64_t q, double h) {
    if (q < 2)
        throw Error(errc::bad_argument, "flat_set: q must be at least 2");
    if (!(h >= 0.0 && h <= static_cast<double>(q)))
        throw Error(errc::bad_threshold, "flat_set: H must lie in [0, q]");
    FlatSet fs;
    fs.q = q;
    fs.h = h;
    for (std::int64_t n = 1; n < q; ++n) {
        if (std::gcd(n, q) != 1) continue;
        const std::int64_t inv = mod_inverse(n, q).value;
        const std::int64_t diff = n > inv ? n - inv : inv - n;
        if (static_cast<double>(diff) <= h) fs.members.push_back(n);
    }
    return fs;
}

FlatSumValue w_sum(const DirichletCharacter& chi, double h, std::int64_t q) {
    require_modulus(chi, q, "w_sum");
    const FlatSet fs = flat_set(q, h);
    const CharacterGroup& g = chi.group();
    const auto& labels = chi.labels();
    const auto& vroots = g.value_roots();
    Cx acc{0.0, 0.0};
    for (std::int64_t n : fs.members)
        acc += vroots[static_cast<std::size_t>(g.char_phase(labels, n))];
    return tagged(acc, h, q, chi.label_string());
}

FlatSumValue w_star_sum(const DirichletCharacter& chi, std::int64_t h, std::int64_t q) {
    require_modulus(chi, q, "w_star_sum");
    require_star_threshold(h, q, "w_star_sum");
    const CharacterGroup& g = chi.group();
    const auto& labels = chi.labels();
    const auto& vroots = g.value_roots();
    Cx acc{0.0, 0.0};
    for (std::int64_t a : g.units()) {
        std::int64_t t = a - g.inverse_of(a);
        if (t <= 0) t += q;  // difference representative in [1, q]
        if (t <= h) acc += vroots[static_cast<std::size_t>(g.char_phase(labels, a))];
    }
    return tagged(acc, static_cast<double>(h), q, chi.label_string());
}

FlatSumValue fourier_w_star(const DirichletCharacter& chi, std::int64_t h, std::int64_t q) {
    require_modulus(chi, q, "fourier_w_star");
    require_star_threshold(h, q, "fourier_w_star");
    const auto& eroots = chi.group().exp_roots();
    Cx acc{0.0, 0.0};
    for (std::int64_t m = 1; m <= q; ++m) {
        const Cx km = kloosterman(chi, m, -m, q).value;
        const std::int64_t step = q - m % q;  // e(-m/q) advances by this root index
        std::int64_t idx = 0;
        Cx dm{0.0, 0.0};
        for (std::int64_t t = 1; t <= h; ++t) {
            idx += step;
            if (idx >= q) idx -= q;
            dm += eroots[static_cast<std::size_t>(idx)];
        }
        acc += dm * km;
    }
    acc /= static_cast<double>(q);
    return tagged(acc, static_cast<double>(h), q, chi.label_string());
}

std::vector<FlatSumValue> fourier_w_star_grid(const DirichletCharacter& chi,
                                              const std::vector<std::int64_t>& h_grid,
                                              std::int64_t q) {
    require_modulus(chi, q, "fourier_w_star_grid");
    for (std::int64_t h : h_grid) require_star_threshold(h, q, "fourier_w_star_grid");
    const CharacterGroup& g = chi.group();
    const auto& labels = chi.labels();
    const auto& eroots = g.exp_roots();
    const auto& vroots = g.value_roots();

    // chi-weighted histogram of the difference a - abar (mod q); the
    // Kloosterman value S_chi(m,-m;q) is its m-th Fourier coefficient.
    std::vector<Cx> bucket(static_cast<std::size_t>(q), Cx{0.0, 0.0});
    for (std::int64_t a : g.units()) {
        std::int64_t d = a - g.inverse_of(a);
        if (d < 0) d += q;
        bucket[static_cast<std::size_t>(d)] +=
            vroots[static_cast<std::size_t>(g.char_phase(labels, a))];
    }

    std::vector<Cx> km(static_cast<std::size_t>(q) + 1, Cx{0.0, 0.0});
    for (std::int64_t d = 0; d < q; ++d) {
        const Cx b = bucket[static_cast<std::size_t>(d)];
        if (b.real() == 0.0 && b.imag() == 0.0) continue;
        std::int64_t idx = 0;
        for (std::int64_t m = 1; m <= q; ++m) {
            idx += d;
            if (idx >= q) idx -= q;
            km[static_cast<std::size_t>(m)] += b * eroots[static_cast<std::size_t>(idx)];
        }
    }

    std::vector<FlatSumValue> out;
    out.reserve(h_grid.size());
    for (std::int64_t h : h_grid) {
        Cx acc{0.0, 0.0};
        for (std::int64_t m = 1; m < q; ++m) {
            // Geometric sum D = sum_{t<=H} e(-mt/q), endpoints exact from the
            // root table: D = (r - r^{H+1}) / (1 - r) with r = e(-m/q).
            const Cx r = eroots[static_cast<std::size_t>(q - m)];
            const std::int64_t top =
                (q - m * ((h + 1) % q) % q) % q;  // index of e(-m(H+1)/q)
            const Cx rtop = eroots[static_cast<std::size_t>(top)];
            acc += (r - rtop) / (Cx{1.0, 0.0} - r) * km[static_cast<std::size_t>(m)];
        }
        acc += static_cast<double>(h) * km[static_cast<std::size_t>(q)];
        acc /= static_cast<double>(q);
        out.push_back(tagged(acc, static_cast<double>(h), q, chi.label_string()));
    }
    return out;
}

FlatSumValue salie_w_star(std::int64_t h, std::int64_t q) {
    Modulus mod = factorize(q);
    if (q % 2 == 0 || mod.squarefull_part() != 1)
        throw Error(errc::unsupported_modulus, "salie_w_star: q must be odd and squarefree");
    require_star_threshold(h, q, "salie_w_star");

    Cx tau{0.0, 0.0};
    for (std::int64_t n = 1; n < q; ++n) {
        const int j = jacobi_symbol(n, q);
        if (j != 0) tau += static_cast<double>(j) * unit_phase(n, q);
    }
    if (q == 1) tau = Cx{1.0, 0.0};

    std::int64_t inner = 0;
    for (const Residue& delta : sqrt_mod(mod_reduce(-1, q), mod))
        for (std::int64_t t = 1; t <= h; ++t)
            inner += jacobi_symbol(mod_reduce(2 * delta.value - t, q), q);

    const Cx eps = (q % 4 == 3) ? Cx{0.0, 1.0} : Cx{1.0, 0.0};
    Cx w{0.0, 0.0};
    if (inner != 0)
        w = eps * tau * (static_cast<double>(inner) / std::sqrt(static_cast<double>(q)));
    return tagged(w, static_cast<double>(h), q,
                  character_label_string(q, jacobi_labels(mod)));
}

ZhangCount zhang_count(std::int64_t q, double delta) {
    if (q < 2)
        throw Error(errc::bad_argument, "zhang_count: q must be at least 2");
    if (!(delta > 0.0 && delta <= 1.0))
        throw Error(errc::bad_delta, "zhang_count: delta must lie in (0, 1]");
    const double threshold = delta * static_cast<double>(q);
    std::int64_t count = 0;
    std::int64_t phi = 0;
    for (std::int64_t n = 1; n < q; ++n) {
        if (std::gcd(n, q) != 1) continue;
        ++phi;
        const std::int64_t inv = mod_inverse(n, q).value;
        const std::int64_t diff = n > inv ? n - inv : inv - n;
        if (static_cast<double>(diff) <= threshold) ++count;
    }
    ZhangCount z;
    z.count = count;
    z.main_term = delta * (2.0 - delta) * static_cast<double>(phi);
    z.error = static_cast<double>(count) - z.main_term;
    return z;
}

ZhangCount zhang_count(std::int64_t q, std::int64_t num, std::int64_t den) {
    if (q < 2)
        throw Error(errc::bad_argument, "zhang_count: q must be at least 2");
    if (num < 1 || den < 1 || num > den || den > 1000000000)
        throw Error(errc::bad_delta, "zhang_count: delta must be a ratio in (0, 1]");
    if (q > (std::int64_t{1} << 31))
        throw Error(errc::bad_argument, "zhang_count: q too large for exact counting");
    std::int64_t count = 0;
    std::int64_t phi = 0;
    const std::int64_t scaled = num * q;
    for (std::int64_t n = 1; n < q; ++n) {
        if (std::gcd(n, q) != 1) continue;
        ++phi;
        const std::int64_t inv = mod_inverse(n, q).value;
        const std::int64_t diff = n > inv ? n - inv : inv - n;
        if (diff * den <= scaled) ++count;
    }
    const double delta = static_cast<double>(num) / static_cast<double>(den);
    ZhangCount z;
    z.count = count;
    z.main_term = delta * (2.0 - delta) * static_cast<double>(phi);
    z.error = static_cast<double>(count) - z.main_term;
    return z;
}

} // namespace flatsum
