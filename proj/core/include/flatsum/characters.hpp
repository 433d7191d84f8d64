#ifndef FLATSUM_CHARACTERS_HPP
#define FLATSUM_CHARACTERS_HPP

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "flatsum/arith.hpp"
#include "flatsum/complexval.hpp"

namespace flatsum {

class CharacterGroup;

// A Dirichlet character mod q, stored as one exponent label per cyclic axis
// of the unit group (see CharacterGroup).  Equality is label equality.
class DirichletCharacter {
public:
    DirichletCharacter() = default;

    std::int64_t modulus() const;
    const std::vector<std::int64_t>& labels() const { return labels_; }
    const CharacterGroup& group() const { return *group_; }
    const std::shared_ptr<const CharacterGroup>& group_ptr() const { return group_; }

    // chi(n); 0 when gcd(n, q) > 1.
    Cx operator()(std::int64_t n) const;

    // Exact phase numerator of chi(n) over group().exponent(), or -1 when
    // chi(n) = 0.  chi(n) == value_roots()[phase(n)].
    std::int64_t phase(std::int64_t n) const;

    bool is_principal() const;
    DirichletCharacter conjugate() const;

    // Canonical identity "q=<q>;labels=<comma-separated labels>".
    std::string label_string() const;

private:
    friend class CharacterGroup;
    DirichletCharacter(std::shared_ptr<const CharacterGroup> g, std::vector<std::int64_t> labels)
        : group_(std::move(g)), labels_(std::move(labels)) {}

    std::shared_ptr<const CharacterGroup> group_;
    std::vector<std::int64_t> labels_;
};

bool operator==(const DirichletCharacter& a, const DirichletCharacter& b);

struct CharacterInfo {
    int parity;       // chi(-1), exactly +1 or -1
    bool is_principal;
    bool is_primitive;
    std::int64_t conductor;
    std::int64_t order;
};

// The character group mod q, decomposed into cyclic axes:
//   - each odd p^e contributes one axis of order phi(p^e) on its smallest
//     primitive root,
//   - 4 contributes one axis of order 2 on -1,
//   - 2^e with e >= 3 contributes an order-2 axis on -1 and an axis of
//     order 2^(e-2) on 5,
//   - 2 contributes nothing.
// Discrete logarithms on every axis are tabulated once at construction and
// shared read-only, together with the unit list, inverse table, q-th roots
// of unity (for exponential sums) and exponent-th roots (character values).
class CharacterGroup : public std::enable_shared_from_this<CharacterGroup> {
public:
    struct Axis {
        std::int64_t prime;
        std::int64_t prime_power;
        int prime_exponent;
        std::int64_t order;
        std::int64_t generator;
        std::vector<std::int32_t> dlog; // by residue mod prime_power; -1 off units
    };

    static std::shared_ptr<const CharacterGroup> make(Modulus m);

    const Modulus& modulus() const { return modulus_; }
    std::int64_t q() const { return modulus_.value(); }
    std::int64_t size() const { return size_; }         // phi(q), number of characters
    std::int64_t exponent() const { return exponent_; } // lcm of axis orders
    const std::vector<Axis>& axes() const { return axes_; }

    DirichletCharacter character(std::vector<std::int64_t> labels) const;
    DirichletCharacter principal() const;
    DirichletCharacter jacobi() const; // odd q only
    DirichletCharacter at(std::int64_t index) const; // lexicographic by labels

    const std::vector<std::int64_t>& units() const { return units_; }
    std::int64_t inverse_of(std::int64_t a) const { return inverse_[static_cast<std::size_t>(a)]; }
    const std::vector<Cx>& exp_roots() const { return exp_roots_; }     // e(j/q)
    const std::vector<Cx>& value_roots() const { return value_roots_; } // e(j/exponent)

    std::int64_t char_phase(const std::vector<std::int64_t>& labels, std::int64_t n) const;

private:
    CharacterGroup() = default;

    Modulus modulus_;
    std::vector<Axis> axes_;
    std::int64_t size_ = 1;
    std::int64_t exponent_ = 1;
    std::vector<std::int64_t> units_;
    std::vector<std::int64_t> inverse_;
    std::vector<Cx> exp_roots_;
    std::vector<Cx> value_roots_;
};

// All phi(q) characters in lexicographic label order; index 0 is principal.
std::vector<DirichletCharacter> enumerate_characters(const std::shared_ptr<const CharacterGroup>& g);

inline Cx evaluate(const DirichletCharacter& chi, std::int64_t n) { return chi(n); }

// The real character n -> jacobi_symbol(n, q), for odd q.
DirichletCharacter jacobi_character(const std::shared_ptr<const CharacterGroup>& g);

// Axis labels of the Jacobi character of m (odd), without building tables.
std::vector<std::int64_t> jacobi_labels(const Modulus& m);

std::string character_label_string(std::int64_t q, const std::vector<std::int64_t>& labels);

// Split chi mod q = d * ell (coprime) into chi1 mod d and chi2 mod ell with
// chi = chi1 * chi2.  Throws errc::bad_factorization on a bad split.
std::pair<DirichletCharacter, DirichletCharacter>
factor_character(const DirichletCharacter& chi, std::int64_t d, std::int64_t ell);

// Same split against caller-provided groups for d and ell.
std::pair<DirichletCharacter, DirichletCharacter>
factor_character(const DirichletCharacter& chi,
                 const std::shared_ptr<const CharacterGroup>& gd,
                 const std::shared_ptr<const CharacterGroup>& gl);

// Inverse of factor_character: the character mod g->q() whose restriction to
// the chi1 and chi2 components matches the given pair.
DirichletCharacter combine_characters(const std::shared_ptr<const CharacterGroup>& g,
                                      const DirichletCharacter& chi1,
                                      const DirichletCharacter& chi2);

CharacterInfo character_info(const DirichletCharacter& chi);

} // namespace flatsum

#endif
