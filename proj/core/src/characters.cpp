#include "flatsum/characters.hpp"

#include <algorithm>
#include <numeric>

namespace flatsum {

namespace {

constexpr std::int64_t kMaxTableModulus = std::int64_t(1) << 31;

// Smallest primitive root of the odd prime power pe = p^e.
std::int64_t smallest_primitive_root(std::int64_t p, std::int64_t pe, std::int64_t phi) {
    std::vector<std::int64_t> prime_divisors;
    {
        Modulus f = factorize(phi);
        for (const Factor& pf : f.factors()) prime_divisors.push_back(pf.prime);
    }
    for (std::int64_t g = 2;; ++g) {
        if (g % p == 0) continue;
        bool ok = true;
        for (std::int64_t ell : prime_divisors) {
            if (pow_mod(g, phi / ell, pe) == 1) {
                ok = false;
                break;
            }
        }
        if (ok) return g;
    }
}

} // namespace

std::int64_t DirichletCharacter::modulus() const { return group_->q(); }

Cx DirichletCharacter::operator()(std::int64_t n) const {
    std::int64_t p = group_->char_phase(labels_, n);
    if (p < 0) return {0.0, 0.0};
    return group_->value_roots()[static_cast<std::size_t>(p)];
}

std::int64_t DirichletCharacter::phase(std::int64_t n) const {
    return group_->char_phase(labels_, n);
}

bool DirichletCharacter::is_principal() const {
    for (std::int64_t k : labels_)
        if (k != 0) return false;
    return true;
}

DirichletCharacter DirichletCharacter::conjugate() const {
    std::vector<std::int64_t> neg(labels_.size());
    const auto& axes = group_->axes();
    for (std::size_t i = 0; i < labels_.size(); ++i)
        neg[i] = labels_[i] == 0 ? 0 : axes[i].order - labels_[i];
    return group_->character(std::move(neg));
}

std::string DirichletCharacter::label_string() const {
    return character_label_string(group_->q(), labels_);
}

bool operator==(const DirichletCharacter& a, const DirichletCharacter& b) {
    return a.modulus() == b.modulus() && a.labels() == b.labels();
}

std::string character_label_string(std::int64_t q, const std::vector<std::int64_t>& labels) {
    std::string s = "q=" + std::to_string(q) + ";labels=";
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(labels[i]);
    }
    return s;
}

std::shared_ptr<const CharacterGroup> CharacterGroup::make(Modulus m) {
    std::int64_t q = m.value();
    if (q > kMaxTableModulus)
        throw Error(errc::bad_argument, "CharacterGroup: modulus too large for dense tables");
    auto g = std::shared_ptr<CharacterGroup>(new CharacterGroup());
    g->modulus_ = std::move(m);

    for (const Factor& f : g->modulus_.factors()) {
        std::int64_t pe = 1;
        for (int i = 0; i < f.exponent; ++i) pe *= f.prime;
        if (f.prime == 2) {
            if (f.exponent == 1) continue;
            if (f.exponent == 2) {
                Axis axis{2, 4, 2, 2, 3, std::vector<std::int32_t>(4, -1)};
                axis.dlog[1] = 0;
                axis.dlog[3] = 1;
                g->axes_.push_back(std::move(axis));
                continue;
            }
            Axis minus{2, pe, f.exponent, 2, pe - 1, std::vector<std::int32_t>(static_cast<std::size_t>(pe), -1)};
            Axis five{2, pe, f.exponent, pe / 4, 5, std::vector<std::int32_t>(static_cast<std::size_t>(pe), -1)};
            std::int64_t x = 1;
            for (std::int64_t j = 0; j < pe / 4; ++j) {
                minus.dlog[static_cast<std::size_t>(x)] = 0;
                five.dlog[static_cast<std::size_t>(x)] = static_cast<std::int32_t>(j);
                minus.dlog[static_cast<std::size_t>(pe - x)] = 1;
                five.dlog[static_cast<std::size_t>(pe - x)] = static_cast<std::int32_t>(j);
                x = x * 5 % pe;
            }
            g->axes_.push_back(std::move(minus));
            g->axes_.push_back(std::move(five));
            continue;
        }
        std::int64_t phi = pe / f.prime * (f.prime - 1);
        Axis axis{f.prime, pe, f.exponent, phi, 0, std::vector<std::int32_t>(static_cast<std::size_t>(pe), -1)};
        axis.generator = smallest_primitive_root(f.prime, pe, phi);
        std::int64_t x = 1;
        for (std::int64_t j = 0; j < phi; ++j) {
            axis.dlog[static_cast<std::size_t>(x)] = static_cast<std::int32_t>(j);
            x = mul_mod(x, axis.generator, pe);
        }
        g->axes_.push_back(std::move(axis));
    }

    for (const Axis& a : g->axes_) g->exponent_ = std::lcm(g->exponent_, a.order);
    g->size_ = multiplicative_profile(g->modulus_).phi;

    g->inverse_.assign(static_cast<std::size_t>(q), -1);
    g->units_.reserve(static_cast<std::size_t>(g->size_));
    if (q == 1) {
        g->inverse_[0] = 0;
        g->units_.push_back(0);
    } else {
        for (std::int64_t a = 1; a < q; ++a) {
            if (std::gcd(a, q) != 1) continue;
            g->inverse_[static_cast<std::size_t>(a)] = mod_inverse(a, q).value;
            g->units_.push_back(a);
        }
    }

    g->exp_roots_ = unit_roots(q);
    g->value_roots_ = unit_roots(g->exponent_);
    return g;
}

std::int64_t CharacterGroup::char_phase(const std::vector<std::int64_t>& labels, std::int64_t n) const {
    std::int64_t nr = mod_reduce(n, q());
    if (inverse_[static_cast<std::size_t>(nr)] < 0) return -1;
    std::int64_t num = 0;
    for (std::size_t i = 0; i < axes_.size(); ++i) {
        const Axis& a = axes_[i];
        std::int64_t k = labels[i];
        if (k == 0) continue;
        std::int64_t j = a.dlog[static_cast<std::size_t>(nr % a.prime_power)];
        if (j == 0) continue;
        num += (k * j % a.order) * (exponent_ / a.order);
        num %= exponent_;
    }
    return num;
}

DirichletCharacter CharacterGroup::character(std::vector<std::int64_t> labels) const {
    if (labels.size() != axes_.size())
        throw Error(errc::bad_argument, "character: wrong number of axis labels");
    for (std::size_t i = 0; i < labels.size(); ++i)
        labels[i] = mod_reduce(labels[i], axes_[i].order);
    return DirichletCharacter(shared_from_this(), std::move(labels));
}

DirichletCharacter CharacterGroup::principal() const {
    return DirichletCharacter(shared_from_this(), std::vector<std::int64_t>(axes_.size(), 0));
}

DirichletCharacter CharacterGroup::jacobi() const {
    return character(jacobi_labels(modulus_));
}

DirichletCharacter CharacterGroup::at(std::int64_t index) const {
    if (index < 0 || index >= size_)
        throw Error(errc::bad_argument, "character index out of range");
    std::vector<std::int64_t> labels(axes_.size(), 0);
    for (std::size_t i = axes_.size(); i-- > 0;) {
        labels[i] = index % axes_[i].order;
        index /= axes_[i].order;
    }
    return DirichletCharacter(shared_from_this(), std::move(labels));
}

std::vector<DirichletCharacter> enumerate_characters(const std::shared_ptr<const CharacterGroup>& g) {
    std::vector<DirichletCharacter> out;
    out.reserve(static_cast<std::size_t>(g->size()));
    for (std::int64_t i = 0; i < g->size(); ++i) out.push_back(g->at(i));
    return out;
}

std::vector<std::int64_t> jacobi_labels(const Modulus& m) {
    if (m.value() % 2 == 0)
        throw Error(errc::even_modulus, "jacobi character requires an odd modulus");
    std::vector<std::int64_t> labels;
    for (const Factor& f : m.factors()) {
        std::int64_t pe = 1;
        for (int i = 0; i < f.exponent; ++i) pe *= f.prime;
        std::int64_t phi = pe / f.prime * (f.prime - 1);
        labels.push_back(f.exponent % 2 == 1 ? phi / 2 : 0);
    }
    return labels;
}

DirichletCharacter jacobi_character(const std::shared_ptr<const CharacterGroup>& g) {
    return g->jacobi();
}

std::pair<DirichletCharacter, DirichletCharacter>
factor_character(const DirichletCharacter& chi, std::int64_t d, std::int64_t ell) {
    std::int64_t q = chi.modulus();
    if (d < 1 || ell < 1 || d * ell != q || std::gcd(d, ell) != 1)
        throw Error(errc::bad_factorization, "factor_character: moduli must be a coprime split of q");
    return factor_character(chi, CharacterGroup::make(factorize(d)), CharacterGroup::make(factorize(ell)));
}

std::pair<DirichletCharacter, DirichletCharacter>
factor_character(const DirichletCharacter& chi,
                 const std::shared_ptr<const CharacterGroup>& gd,
                 const std::shared_ptr<const CharacterGroup>& gl) {
    std::int64_t d = gd->q(), ell = gl->q();
    if (d * ell != chi.modulus() || std::gcd(d, ell) != 1)
        throw Error(errc::bad_factorization, "factor_character: moduli must be a coprime split of q");
    std::vector<std::int64_t> l1, l2;
    const auto& axes = chi.group().axes();
    for (std::size_t i = 0; i < axes.size(); ++i) {
        if (d % axes[i].prime == 0)
            l1.push_back(chi.labels()[i]);
        else
            l2.push_back(chi.labels()[i]);
    }
    return {gd->character(std::move(l1)), gl->character(std::move(l2))};
}

DirichletCharacter combine_characters(const std::shared_ptr<const CharacterGroup>& g,
                                      const DirichletCharacter& chi1,
                                      const DirichletCharacter& chi2) {
    std::int64_t q1 = chi1.modulus(), q2 = chi2.modulus();
    if (q1 * q2 != g->q() || std::gcd(q1, q2) != 1)
        throw Error(errc::bad_factorization, "combine_characters: component moduli must split q");
    std::vector<std::int64_t> labels;
    std::size_t i1 = 0, i2 = 0;
    for (const auto& axis : g->axes()) {
        if (q1 % axis.prime == 0)
            labels.push_back(chi1.labels()[i1++]);
        else
            labels.push_back(chi2.labels()[i2++]);
    }
    return g->character(std::move(labels));
}

CharacterInfo character_info(const DirichletCharacter& chi) {
    const CharacterGroup& g = chi.group();
    const auto& axes = g.axes();
    const auto& labels = chi.labels();

    CharacterInfo info{};
    info.is_principal = chi.is_principal();

    std::int64_t parity_phase = g.char_phase(labels, g.q() - 1); // q=1: n=0, phase 0
    info.parity = parity_phase == 0 ? 1 : -1;

    info.order = 1;
    for (std::size_t i = 0; i < axes.size(); ++i)
        info.order = std::lcm(info.order, axes[i].order / std::gcd(axes[i].order, labels[i]));

    info.conductor = 1;
    for (std::size_t i = 0; i < axes.size(); ++i) {
        const auto& a = axes[i];
        std::int64_t k = labels[i];
        if (a.prime == 2 && a.prime_exponent >= 3) {
            // Sign axis of the 2-part; axes[i+1] is its order-2^(e-2) partner.
            std::int64_t k5 = labels[i + 1];
            std::int64_t f = 1;
            if (k5 != 0) {
                std::int64_t v = 0;
                while (k5 % 2 == 0) {
                    k5 /= 2;
                    ++v;
                }
                f = a.prime_power >> v;
            } else if (k == 1) {
                f = 4;
            }
            info.conductor *= f;
            ++i;
        } else if (a.prime == 2) {
            // Single axis of modulus 4.
            if (k == 1) info.conductor *= 4;
        } else {
            if (k == 0) continue;
            std::int64_t ord = a.order / std::gcd(a.order, k);
            std::int64_t f = a.prime;
            while (ord % a.prime == 0) {
                ord /= a.prime;
                f *= a.prime;
            }
            info.conductor *= f;
        }
    }

    info.is_primitive = info.conductor == g.q();
    return info;
}

} // namespace flatsum
