#pragma once

#include <cmath>
#include <numbers>
#include <random>

#include "hyperheat/grid.hpp"

namespace testing_support {

using hyperheat::Complex;
using hyperheat::GridFunction;
using hyperheat::GridParams;
using hyperheat::Index;

inline GridFunction random_function(const GridParams& p, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    return GridFunction::from_index(p, [&](Index) { return Complex(d(rng), d(rng)); });
}

inline GridFunction random_real_function(const GridParams& p, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    return GridFunction::from_index(p, [&](Index) { return Complex(d(rng), 0.0); });
}

/// Textbook double loop in long double, independent of the library's phase tables and FFT.
inline GridFunction naive_transform(const GridFunction& f, int sign) {
    const auto& p = f.params();
    const long double n2 = static_cast<long double>(p.n_squared());
    const long double pi = std::numbers::pi_v<long double>;
    return GridFunction::from_index(p, [&](Index k) {
        long double re = 0, im = 0;
        for (Index j = p.first_index(); j <= p.last_index(); ++j) {
            const long double a = sign * pi * static_cast<long double>(j) * static_cast<long double>(k) / n2;
            const long double c = std::cos(a), s = std::sin(a);
            const Complex v = f[j];
            re += v.real() * c - v.imag() * s;
            im += v.real() * s + v.imag() * c;
        }
        return Complex(static_cast<double>(re / p.n()), static_cast<double>(im / p.n()));
    });
}

}  // namespace testing_support
