#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numeric>
#include <vector>

#include "doctest.h"
#include "flatsum/characters.hpp"
#include "flatsum/flatnum.hpp"

using flatsum::Cx;
using flatsum::Error;

namespace {

std::shared_ptr<const flatsum::CharacterGroup> group_of(std::int64_t q) {
    return flatsum::CharacterGroup::make(flatsum::factorize(q));
}

bool is_member(const flatsum::FlatSet& fs, std::int64_t n) {
    return std::binary_search(fs.members.begin(), fs.members.end(), n);
}

} // namespace

TEST_CASE("flat_set pins small member lists") {
    CHECK(flatsum::flat_set(7, 1).members == std::vector<std::int64_t>{1, 6});
    CHECK(flatsum::flat_set(5, 2).members == std::vector<std::int64_t>{1, 2, 3, 4});
    CHECK(flatsum::flat_set(17, 4).members ==
          std::vector<std::int64_t>{1, 3, 5, 6, 7, 10, 11, 12, 14, 16});
    CHECK(flatsum::flat_set(17, 0).members == std::vector<std::int64_t>{1, 16});
    CHECK(flatsum::flat_set(2, 0).members == std::vector<std::int64_t>{1});

    CHECK_THROWS_AS(flatsum::flat_set(1, 0), Error);
    CHECK_THROWS_AS(flatsum::flat_set(7, -1.0), Error);
    CHECK_THROWS_AS(flatsum::flat_set(7, 8.0), Error);
    CHECK_THROWS_AS(flatsum::flat_set(7, std::nan("")), Error);
}

TEST_CASE("flat sets are closed under inversion and negation, monotone in H") {
    for (std::int64_t q : {10, 35, 97, 360}) {
        auto full = flatsum::flat_set(q, static_cast<double>(q));
        std::int64_t phi = 0;
        for (std::int64_t n = 1; n < q; ++n)
            if (std::gcd(n, q) == 1) ++phi;
        CHECK(static_cast<std::int64_t>(full.members.size()) == phi);

        auto half = flatsum::flat_set(q, static_cast<double>(q) / 3.0);
        for (std::int64_t n : half.members) {
            CHECK(is_member(half, flatsum::mod_inverse(n, q).value));
            CHECK(is_member(half, q - n));
            CHECK(is_member(full, n));
        }

        auto small = flatsum::flat_set(q, static_cast<double>(q) / 6.0);
        for (std::int64_t n : small.members) CHECK(is_member(half, n));
    }
}

TEST_CASE("W over F(4) mod 17 for the Legendre character") {
    auto g = group_of(17);
    auto leg = flatsum::jacobi_character(g);
    auto w = flatsum::w_sum(leg, 4.0, 17);
    CHECK(w.w.real() == doctest::Approx(-6.0).epsilon(1e-12));
    CHECK(w.w.imag() == 0.0);
    CHECK(w.q == 17);
    CHECK(w.h == 4.0);
    CHECK(w.chi_label == "q=17;labels=8");
}

TEST_CASE("W vanishes identically for odd characters") {
    for (std::int64_t q : {5, 13, 16, 21}) {
        auto g = group_of(q);
        for (const auto& chi : flatsum::enumerate_characters(g)) {
            if (flatsum::character_info(chi).parity != -1) continue;
            for (double h : {0.0, q / 3.0, static_cast<double>(q)}) {
                auto w = flatsum::w_sum(chi, h, q);
                CHECK(std::abs(w.w) < 1e-9);
            }
        }
    }
}

TEST_CASE("W* counts mod-q differences, not absolute ones") {
    auto g = group_of(17);
    auto leg = flatsum::jacobi_character(g);
    auto ws = flatsum::w_star_sum(leg, 4, 17);
    CHECK(ws.w.real() == doctest::Approx(-4.0).epsilon(1e-12));
    CHECK(ws.w.imag() == 0.0);

    // At H = q every unit contributes, so W* collapses by orthogonality.
    auto full = flatsum::w_star_sum(leg, 17, 17);
    CHECK(std::abs(full.w) < 1e-9);
    auto princ = flatsum::w_star_sum(g->principal(), 17, 17);
    CHECK(princ.w.real() == doctest::Approx(16.0).epsilon(1e-12));

    CHECK_THROWS_AS(flatsum::w_star_sum(leg, 0, 17), Error);
    CHECK_THROWS_AS(flatsum::w_star_sum(leg, 18, 17), Error);
}

TEST_CASE("the Fourier expansion reproduces W* term for term") {
    for (std::int64_t q : {5, 12, 13, 21, 30}) {
        auto g = group_of(q);
        std::vector<std::int64_t> grid = {1, q / 2 > 0 ? q / 2 : 1, q};
        for (const auto& chi : flatsum::enumerate_characters(g)) {
            for (std::int64_t h : grid) {
                auto direct = flatsum::w_star_sum(chi, h, q);
                auto expanded = flatsum::fourier_w_star(chi, h, q);
                CHECK(std::abs(direct.w - expanded.w) < 1e-8);
            }
            auto batch = flatsum::fourier_w_star_grid(chi, grid, q);
            REQUIRE(batch.size() == grid.size());
            for (std::size_t i = 0; i < grid.size(); ++i) {
                auto single = flatsum::fourier_w_star(chi, grid[i], q);
                CHECK(batch[i].h == static_cast<double>(grid[i]));
                CHECK(std::abs(batch[i].w - single.w) < 1e-9);
            }
        }
    }
}

TEST_CASE("salie_w_star matches the direct Jacobi W* and pins q=17, H=4") {
    auto s = flatsum::salie_w_star(4, 17);
    CHECK(s.w.real() == doctest::Approx(-4.0).epsilon(1e-9));
    CHECK(std::abs(s.w.imag()) < 1e-9);
    CHECK(s.chi_label == "q=17;labels=8");

    for (std::int64_t q : {3, 5, 13, 15, 17, 33, 35}) {
        auto chi = flatsum::jacobi_character(group_of(q));
        for (std::int64_t h = 1; h <= q; h += std::max<std::int64_t>(1, q / 5)) {
            auto direct = flatsum::w_star_sum(chi, h, q);
            auto closed = flatsum::salie_w_star(h, q);
            CHECK(std::abs(direct.w - closed.w) < 1e-9);
        }
    }

    // -1 has no square root mod 21, so both sides are exactly zero.
    for (std::int64_t h : {1, 5, 10, 21}) {
        auto closed = flatsum::salie_w_star(h, 21);
        CHECK(closed.w == Cx{0.0, 0.0});
        auto direct = flatsum::w_star_sum(flatsum::jacobi_character(group_of(21)), h, 21);
        CHECK(direct.w == Cx{0.0, 0.0}); // sums of exact +1/-1 values
    }

    CHECK_THROWS_AS(flatsum::salie_w_star(1, 4), Error);
    CHECK_THROWS_AS(flatsum::salie_w_star(1, 9), Error);
    CHECK_THROWS_AS(flatsum::salie_w_star(0, 17), Error);
}

TEST_CASE("zhang_count pins counts and vanishes exactly at delta = 1") {
    auto z17 = flatsum::zhang_count(17, 0.25);
    CHECK(z17.count == 10);
    CHECK(z17.main_term == doctest::Approx(7.0).epsilon(1e-12));
    CHECK(z17.error == doctest::Approx(3.0).epsilon(1e-12));

    auto z7 = flatsum::zhang_count(7, 0.2);
    CHECK(z7.count == 2);
    CHECK(z7.main_term == doctest::Approx(2.16).epsilon(1e-12));
    CHECK(z7.error == doctest::Approx(-0.16).epsilon(1e-9));

    for (std::int64_t q = 2; q <= 100; ++q) {
        CHECK(flatsum::zhang_count(q, 1.0).error == 0.0);
        CHECK(flatsum::zhang_count(q, 1, 1).error == 0.0);
    }

    CHECK_THROWS_AS(flatsum::zhang_count(1, 0.5), Error);
    CHECK_THROWS_AS(flatsum::zhang_count(10, 0.0), Error);
    CHECK_THROWS_AS(flatsum::zhang_count(10, 1.5), Error);
    CHECK_THROWS_AS(flatsum::zhang_count(10, std::nan("")), Error);
    CHECK_THROWS_AS(flatsum::zhang_count(10, 0, 1), Error);
    CHECK_THROWS_AS(flatsum::zhang_count(10, 3, 2), Error);
    CHECK_THROWS_AS(flatsum::zhang_count(10, 1, 2000000000), Error);
}

TEST_CASE("rational and floating thresholds agree on one-decimal deltas") {
    for (std::int64_t q = 2; q <= 60; ++q)
        for (std::int64_t k = 1; k <= 10; ++k) {
            auto exact = flatsum::zhang_count(q, k, 10);
            auto approx = flatsum::zhang_count(q, static_cast<double>(k) / 10.0);
            CHECK(exact.count == approx.count);
        }
}
