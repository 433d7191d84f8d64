#include "flatsum/complexval.hpp"

#include <cmath>
#include <numbers>

#include "flatsum/arith.hpp"

namespace flatsum {

namespace {

Cx raw_phase(std::int64_t num, std::int64_t den) {
    // num in [0, den); pin the axis-aligned values.
    std::int64_t four = 4 * num;
    if (four % den == 0) {
        switch (four / den) {
            case 0: return {1.0, 0.0};
            case 1: return {0.0, 1.0};
            case 2: return {-1.0, 0.0};
            default: return {0.0, -1.0};
        }
    }
    double t = 2.0 * std::numbers::pi * static_cast<double>(num) / static_cast<double>(den);
    return {std::cos(t), std::sin(t)};
}

} // namespace

Cx unit_phase(std::int64_t num, std::int64_t den) {
    std::int64_t r = mod_reduce(num, den);
    if (2 * r > den) return std::conj(raw_phase(den - r, den));
    return raw_phase(r, den);
}

std::vector<Cx> unit_roots(std::int64_t order) {
    std::vector<Cx> w(static_cast<std::size_t>(order));
    for (std::int64_t j = 0; 2 * j <= order; ++j) {
        w[static_cast<std::size_t>(j)] = raw_phase(j, order);
        if (j != 0) w[static_cast<std::size_t>(order - j)] = std::conj(w[static_cast<std::size_t>(j)]);
    }
    return w;
}

} // namespace flatsum
