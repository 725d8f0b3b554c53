#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "ffcurve/ffcurve.hpp"

namespace gen {

using Rng = std::mt19937_64;

inline std::int64_t uniform(Rng& rng, std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

/// d/h with |d| <= max_abs and 1 <= h <= max_h.
inline ffcurve::Slope slope(Rng& rng, std::int64_t max_abs = 12, std::int64_t max_h = 12) {
    return ffcurve::Slope::reduce(uniform(rng, -max_abs, max_abs), uniform(rng, 1, max_h));
}

inline ffcurve::Slope slope_with_sign(Rng& rng, int sign, std::int64_t max_abs = 12, std::int64_t max_h = 12) {
    std::int64_t h = uniform(rng, 1, max_h);
    std::int64_t d = sign < 0 ? -uniform(rng, 1, max_abs) : sign == 0 ? 0 : uniform(rng, 1, max_abs);
    return ffcurve::Slope::reduce(d, h);
}

inline std::vector<std::int64_t> torsion_factors(Rng& rng, std::int64_t max_len = 8) {
    std::vector<std::int64_t> f(static_cast<std::size_t>(uniform(rng, 1, 3)));
    for (auto& k : f)
        k = uniform(rng, 1, max_len);
    return f;
}

/// Random sheaf: up to 3 bundle summands, optional torsion at one or two points.
inline ffcurve::CoherentSheaf sheaf(Rng& rng, bool allow_zero = false) {
    ffcurve::CoherentSheaf f;
    do {
        f = {};
        auto n = uniform(rng, 0, 3);
        for (std::int64_t i = 0; i < n; ++i)
            f.add_stable(slope(rng), uniform(rng, 1, 3));
        if (uniform(rng, 0, 2) == 0)
            f.add_torsion("inf", torsion_factors(rng));
        if (uniform(rng, 0, 5) == 0)
            f.add_torsion("x1", torsion_factors(rng));
    } while (!allow_zero && f.is_zero());
    return f;
}

/// Random object of the tilted heart with both parts populated most of the time.
inline ffcurve::TiltedObject tilted(Rng& rng, std::int64_t max_abs = 12, std::int64_t max_h = 12) {
    ffcurve::CoherentSheaf neg, pos;
    do {
        neg = {};
        pos = {};
        for (auto i = uniform(rng, 0, 2); i > 0; --i)
            neg.add_stable(slope_with_sign(rng, -1, max_abs, max_h), uniform(rng, 1, 2));
        for (auto i = uniform(rng, 0, 2); i > 0; --i)
            pos.add_stable(slope_with_sign(rng, static_cast<int>(uniform(rng, 0, 1)), max_abs, max_h), uniform(rng, 1, 2));
        if (uniform(rng, 0, 2) == 0)
            pos.add_torsion("inf", torsion_factors(rng, 4));
    } while (neg.is_zero() && pos.is_zero());
    return {neg, pos};
}

/// Random polynomial of degree <= max_deg with small integer coefficients, non-zero.
inline ffcurve::algebra::Poly poly(Rng& rng, int max_deg = 2) {
    std::vector<ffcurve::algebra::Rational> c(static_cast<std::size_t>(uniform(rng, 0, max_deg)) + 1);
    for (auto& x : c)
        x = uniform(rng, -3, 3);
    if (c.back() == 0)
        c.back() = 1;
    return ffcurve::algebra::Poly(std::move(c));
}

}  // namespace gen
