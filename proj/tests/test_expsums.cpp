#include <cmath>
#include <complex>
#include <cstdint>
#include <numeric>

#include "doctest.h"
#include "flatsum/characters.hpp"
#include "flatsum/expsums.hpp"

using flatsum::Cx;
using flatsum::Error;

namespace {

std::shared_ptr<const flatsum::CharacterGroup> group_of(std::int64_t q) {
    return flatsum::CharacterGroup::make(flatsum::factorize(q));
}

} // namespace

TEST_CASE("classical Kloosterman values at small moduli") {
    auto g5 = group_of(5);

    // S(1,1;5) = 2 + 2 cos(4 pi / 5)
    auto s = flatsum::kloosterman(g5->principal(), 1, 1, 5);
    CHECK(s.value.real() == doctest::Approx(0.3819660112501051).epsilon(1e-12));
    CHECK(std::abs(s.value.imag()) < 1e-12);
    CHECK(s.term_count == 4);
    CHECK(s.params.q == 5);
    CHECK(s.params.d == 5);
    CHECK(s.params.chi == "q=5;labels=0");

    // Twist by the Legendre character: 2 cos(4 pi / 5) - 2.
    auto leg = flatsum::jacobi_character(g5);
    auto t = flatsum::kloosterman(leg, 1, 1, 5);
    CHECK(t.value.real() == doctest::Approx(-3.618033988749895).epsilon(1e-12));
    CHECK(std::abs(t.value.imag()) < 1e-12);

    // Trivial modulus: a single unit, value 1.
    auto one = flatsum::kloosterman(group_of(1)->principal(), 1, 1, 1);
    CHECK(one.value == Cx{1.0, 0.0});
    CHECK(one.term_count == 1);
}

TEST_CASE("complete sums at s=0 collapse by orthogonality") {
    for (std::int64_t q : {5, 12, 21}) {
        auto g = group_of(q);
        for (const auto& chi : flatsum::enumerate_characters(g)) {
            auto r = flatsum::kloosterman(chi, 0, 0, q);
            if (chi.is_principal())
                CHECK(r.value.real() == doctest::Approx(g->size()).epsilon(1e-12));
            else
                CHECK(std::abs(r.value) < 1e-9);
            auto gz = flatsum::gauss_sum_shifted(0, chi);
            if (chi.is_principal())
                CHECK(gz.value.real() == doctest::Approx(g->size()).epsilon(1e-12));
            else
                CHECK(std::abs(gz.value) < 1e-9);
        }
    }
}

TEST_CASE("kloosterman rejects a mismatched modulus") {
    auto g5 = group_of(5);
    CHECK_THROWS_AS(flatsum::kloosterman(g5->principal(), 1, 1, 7), Error);
    try {
        flatsum::kloosterman(g5->principal(), 1, 1, 7);
    } catch (const Error& e) {
        CHECK(e.code() == flatsum::errc::modulus_mismatch);
    }
}

TEST_CASE("t_sum at d=q is bitwise the Kloosterman sum") {
    for (std::int64_t q : {5, 12, 15}) {
        auto g = group_of(q);
        for (const auto& chi : flatsum::enumerate_characters(g)) {
            auto a = flatsum::t_sum(chi, 3, 7, q, q);
            auto b = flatsum::kloosterman(chi, 3, 7, q);
            CHECK(a.value.real() == b.value.real());
            CHECK(a.value.imag() == b.value.imag());
        }
    }
}

TEST_CASE("t_sum factorization endpoints at q = 15, d = 3") {
    auto g15 = group_of(15);

    // chi = Jacobi mod 15 restricts to a nontrivial character mod 5, so the
    // partial sum collapses to zero.
    auto vanish = flatsum::t_sum(flatsum::jacobi_character(g15), 1, 1, 3, 15);
    CHECK(std::abs(vanish.value) < 1e-9);

    // chi = (Legendre mod 3) lifted: labels (1, 0) on the (3-axis, 5-axis).
    // T = phi(5) * S_leg3(1,1;3) = 4 * (-i sqrt 3).
    auto lifted = g15->character({1, 0});
    auto r = flatsum::t_sum(lifted, 1, 1, 3, 15);
    CHECK(std::abs(r.value.real()) < 1e-9);
    CHECK(r.value.imag() == doctest::Approx(-4.0 * std::sqrt(3.0)).epsilon(1e-12));

    CHECK_THROWS_AS(flatsum::t_sum(lifted, 1, 1, 4, 15), Error);
    CHECK_THROWS_AS(flatsum::t_sum(lifted, 1, 1, 0, 15), Error);
}

TEST_CASE("shifted Gauss sums against closed values") {
    auto g5 = group_of(5);
    auto leg5 = flatsum::jacobi_character(g5);
    auto tau = flatsum::gauss_sum_shifted(1, leg5);
    CHECK(tau.value.real() == doctest::Approx(std::sqrt(5.0)).epsilon(1e-12));
    CHECK(std::abs(tau.value.imag()) < 1e-12);

    // G(s, chi) = conj(chi)(s) * tau(chi) for primitive chi and any unit s.
    for (std::int64_t s = 1; s < 5; ++s) {
        auto shifted = flatsum::gauss_sum_shifted(s, leg5);
        Cx expected = std::conj(leg5(s)) * tau.value;
        CHECK(std::abs(shifted.value - expected) < 1e-9);
    }

    auto g4 = group_of(4);
    auto even = flatsum::gauss_sum_shifted(2, g4->principal());
    CHECK(even.value.real() == doctest::Approx(-2.0).epsilon(1e-12));
    CHECK(even.value.imag() == 0.0);

    // Principal character: G(s, chi0) is the Ramanujan sum c_q(s).
    for (std::int64_t q : {6, 8, 12}) {
        auto g = group_of(q);
        for (std::int64_t s = 0; s < q; ++s) {
            auto r = flatsum::gauss_sum_shifted(s, g->principal());
            CHECK(r.value.real() ==
                  doctest::Approx(flatsum::ramanujan_sum(s, q)).epsilon(1e-9));
            CHECK(std::abs(r.value.imag()) < 1e-9);
        }
    }
}

TEST_CASE("salie_rhs equals the Jacobi-twisted Kloosterman sum") {
    struct Args {
        std::int64_t m, n, q;
    };
    for (Args a : {Args{1, 1, 5}, Args{2, 3, 7}, Args{1, 1, 15}, Args{4, 2, 21},
                   Args{0, 1, 13}, Args{1, 1, 1}}) {
        auto direct = flatsum::kloosterman(flatsum::jacobi_character(group_of(a.q)),
                                           a.m, a.n, a.q);
        auto closed = flatsum::salie_rhs(a.m, a.n, a.q);
        CHECK(std::abs(direct.value - closed.value) < 1e-9);
        CHECK(closed.term_count == direct.term_count);
    }

    // Pinned: eps_3 = i and the root sum at q=3 give exactly -i sqrt(3).
    auto r3 = flatsum::salie_rhs(1, 1, 3);
    CHECK(std::abs(r3.value.real()) < 1e-12);
    CHECK(r3.value.imag() == doctest::Approx(-std::sqrt(3.0)).epsilon(1e-12));

    auto r5 = flatsum::salie_rhs(1, 1, 5);
    CHECK(r5.value.real() == doctest::Approx(-3.618033988749895).epsilon(1e-12));

    // No square roots of m*n: the sum is empty and exactly zero.
    auto empty = flatsum::salie_rhs(1, 2, 3); // m*n = 2, a non-residue mod 3
    CHECK(empty.value == Cx{0.0, 0.0});

    CHECK_THROWS_AS(flatsum::salie_rhs(1, 1, 4), Error);  // even
    CHECK_THROWS_AS(flatsum::salie_rhs(1, 1, 9), Error);  // not squarefree
    CHECK_THROWS_AS(flatsum::salie_rhs(1, 3, 15), Error); // gcd(n, q) > 1
}

TEST_CASE("conjugating the character mirrors the sum") {
    for (std::int64_t q : {7, 12}) {
        auto g = group_of(q);
        for (const auto& chi : flatsum::enumerate_characters(g)) {
            auto fwd = flatsum::kloosterman(chi, 2, 5, q);
            auto bwd = flatsum::kloosterman(chi.conjugate(), -2, -5, q);
            CHECK(std::abs(bwd.value - std::conj(fwd.value)) < 1e-9);
        }
    }
}

TEST_CASE("triangle inequality: |value| never exceeds term_count") {
    for (std::int64_t q : {5, 12, 16, 21}) {
        auto g = group_of(q);
        for (const auto& chi : flatsum::enumerate_characters(g))
            for (std::int64_t m = 0; m < 3; ++m)
                for (std::int64_t n = 0; n < 3; ++n) {
                    auto r = flatsum::kloosterman(chi, m, n, q);
                    CHECK(std::abs(r.value) <=
                          static_cast<double>(r.term_count) + 1e-9);
                }
    }
}

TEST_CASE("weil_ratio pins value, bound, and ratio") {
    auto g5 = group_of(5);
    auto w = flatsum::weil_ratio(g5->principal(), 1, 1, 5);
    CHECK(w.value == doctest::Approx(0.3819660112501051).epsilon(1e-12));
    CHECK(w.bound == doctest::Approx(2.0 * std::sqrt(5.0)).epsilon(1e-12));
    CHECK(w.ratio == doctest::Approx(0.3819660112501051 / (2.0 * std::sqrt(5.0)))
                         .epsilon(1e-12));

    // Degenerate arguments: S(0,0;q) = phi(q) against bound q * tau(q).
    auto z = flatsum::weil_ratio(group_of(12)->principal(), 0, 0, 12);
    CHECK(z.value == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(z.bound == doctest::Approx(12.0 * 6.0).epsilon(1e-12));
    CHECK(z.ratio < 1.0);
}
